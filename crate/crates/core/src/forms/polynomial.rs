use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{Measure, Surd, SymTensor};
use crate::lattice::{Element, RadicalElement, Space};
use crate::ordercont::{Functional, ProductFunctionalPolynomial};
use crate::scalar::Rational;

/// An `m`-homogeneous polynomial in one of three representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polynomial {
    /// `P(x) = A(x, …, x)` on a finite space.
    Tensor(SymTensor),
    /// `P(x) = ∫ x^m dμ`, orthogonally additive, on either backend.
    Measure { degree: usize, measure: Measure },
    /// `P(x) = φ(x)^(m−1) ψ(x)` on ω+1.
    Product(ProductFunctionalPolynomial),
}

/// Argument of [`eval_poly`].
#[derive(Clone, Copy, Debug)]
pub enum PolyArg<'a> {
    Element(&'a Element),
    Radical(&'a RadicalElement),
}

impl<'a> From<&'a Element> for PolyArg<'a> {
    fn from(x: &'a Element) -> Self {
        PolyArg::Element(x)
    }
}

impl<'a> From<&'a RadicalElement> for PolyArg<'a> {
    fn from(r: &'a RadicalElement) -> Self {
        PolyArg::Radical(r)
    }
}

impl Polynomial {
    pub fn measure(degree: usize, measure: Measure) -> Result<Polynomial> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Polynomial::Measure { degree, measure })
    }

    pub fn degree(&self) -> usize {
        match self {
            Polynomial::Tensor(t) => t.degree(),
            Polynomial::Measure { degree, .. } => *degree,
            Polynomial::Product(p) => p.degree(),
        }
    }

    pub fn space(&self) -> Space {
        match self {
            Polynomial::Tensor(t) => t.space(),
            Polynomial::Measure { measure, .. } => measure.space(),
            Polynomial::Product(p) => p.space(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Polynomial::Tensor(_) => "tensor",
            Polynomial::Measure { .. } => "measure",
            Polynomial::Product(_) => "product",
        }
    }

    pub fn as_measure(&self) -> Option<&Measure> {
        match self {
            Polynomial::Measure { measure, .. } => Some(measure),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Element) -> Result<Rational> {
        match self {
            Polynomial::Tensor(t) => t.eval_diag(x),
            Polynomial::Measure { degree, measure } => measure.integrate_power(x, *degree),
            Polynomial::Product(p) => p.eval(x),
        }
    }

    fn check_radical(&self, r: &RadicalElement) -> Result<()> {
        if r.degree() != self.degree() {
            return Err(Error::RadicalDegreeMismatch {
                radical: r.degree(),
                polynomial: self.degree(),
            });
        }
        Ok(())
    }

    /// `P(v^(1/m)) = ∫ v dμ`; only measure-represented polynomials.
    pub fn eval_radical(&self, r: &RadicalElement) -> Result<Rational> {
        self.check_radical(r)?;
        match self {
            Polynomial::Measure { measure, .. } => measure.integrate(r.base()),
            _ => Err(Error::RadicalOnTensor),
        }
    }

    /// `P(v^(1/m))` for every representation, as an exact surd. Tensor and
    /// product polynomials need the pointwise roots themselves.
    pub fn eval_radical_exact(&self, r: &RadicalElement) -> Result<Surd> {
        self.check_radical(r)?;
        let m = self.degree() as u32;
        match self {
            Polynomial::Measure { .. } => Ok(Surd::rational(m, self.eval_radical(r)?)),
            Polynomial::Tensor(t) => {
                if r.base().space() != t.space() {
                    return Err(Error::SpaceMismatch {
                        left: t.space(),
                        right: r.base().space(),
                    });
                }
                let roots = r
                    .base()
                    .values()
                    .iter()
                    .map(|v| Surd::root(m, v))
                    .collect::<Result<Vec<_>>>()?;
                t.eval_diag_surd(&roots)
            }
            Polynomial::Product(p) => p.eval_root(r.base()),
        }
    }

    /// Homogeneous polynomials vanish at zero; [`Polynomial::is_zero`] asks
    /// whether the whole polynomial does.
    pub fn is_zero(&self) -> bool {
        match self {
            Polynomial::Tensor(t) => t.is_zero(),
            Polynomial::Measure { measure, .. } => measure.is_zero(),
            Polynomial::Product(p) => match (p.phi(), p.psi()) {
                (Functional::Measure(a), _) if a.is_zero() => true,
                (_, Functional::Measure(b)) => b.is_zero(),
                _ => false,
            },
        }
    }
}

/// `evalPoly`.
pub fn eval_poly<'a>(p: &Polynomial, x: impl Into<PolyArg<'a>>) -> Result<Rational> {
    match x.into() {
        PolyArg::Element(e) => p.eval(e),
        PolyArg::Radical(r) => p.eval_radical(r),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum PolyRepr {
    Measure {
        m: usize,
        measure: Measure,
    },
    Tensor {
        tensor: SymTensor,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orthogonally_additive: Option<bool>,
    },
    Product {
        m: usize,
        phi: Functional,
        psi: Functional,
    },
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Polynomial::Tensor(t) => PolyRepr::Tensor {
                tensor: t.clone(),
                orthogonally_additive: None,
            },
            Polynomial::Measure { degree, measure } => PolyRepr::Measure {
                m: *degree,
                measure: measure.clone(),
            },
            Polynomial::Product(p) => PolyRepr::Product {
                m: p.degree(),
                phi: p.phi().clone(),
                psi: p.psi().clone(),
            },
        }
        .serialize(s)
    }
}

impl TryFrom<PolyRepr> for Polynomial {
    type Error = Error;

    fn try_from(r: PolyRepr) -> Result<Polynomial> {
        match r {
            PolyRepr::Measure { m, measure } => Polynomial::measure(m, measure),
            PolyRepr::Tensor {
                tensor,
                orthogonally_additive,
            } => {
                if orthogonally_additive == Some(true) {
                    if let Some((key, _)) = tensor.first_off_diagonal() {
                        return Err(Error::NotOrthogonallyAdditive(key.iter().map(|i| i + 1).collect()));
                    }
                }
                Ok(Polynomial::Tensor(tensor))
            }
            PolyRepr::Product { m, phi, psi } => Ok(Polynomial::Product(ProductFunctionalPolynomial::new(m, phi, psi)?)),
        }
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Polynomial::try_from(PolyRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
