use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{Measure, Surd};
use crate::lattice::{Element, Space};
use crate::scalar::Rational;

/// A positive or signed linear functional on `C(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    /// Evaluation at the isolated point with 0-based index `k`.
    Coordinate(usize),
    /// Evaluation at the limit point of ω+1.
    Limit,
    Measure(Measure),
}

impl Functional {
    pub fn eval(&self, x: &Element) -> Result<Rational> {
        match self {
            Functional::Coordinate(k) => {
                if let Some(n) = x.space().size() {
                    if *k >= n {
                        return Err(Error::PointOutOfRange {
                            point: k + 1,
                            space: x.space(),
                        });
                    }
                }
                Ok(x.at(*k).clone())
            }
            Functional::Limit => {
                if x.space() != Space::OmegaPlusOne {
                    return Err(Error::SpaceMismatch {
                        left: Space::OmegaPlusOne,
                        right: x.space(),
                    });
                }
                Ok(x.tail().clone())
            }
            Functional::Measure(mu) => mu.integrate(x),
        }
    }

    /// The functional applied to the pointwise root `base^(1/degree)`.
    pub fn eval_root(&self, degree: u32, base: &Element) -> Result<Surd> {
        match self {
            Functional::Coordinate(_) | Functional::Limit => {
                Surd::root(degree, &self.eval(base)?)
            }
            Functional::Measure(mu) => {
                if base.space() != mu.space() {
                    return Err(Error::SpaceMismatch {
                        left: mu.space(),
                        right: base.space(),
                    });
                }
                let mut acc = Surd::zero(degree);
                for (t, w) in mu.atoms() {
                    acc = acc.add(&Surd::root(degree, base.at(*t))?.scale(w))?;
                }
                acc.add(&Surd::root(degree, base.tail())?.scale(mu.limit_atom()))
            }
        }
    }

    /// Evaluations at isolated points are order continuous; the limit
    /// functional is not, and a measure is iff it has no limit atom.
    pub fn is_order_continuous(&self) -> bool {
        match self {
            Functional::Coordinate(_) => true,
            Functional::Limit => false,
            Functional::Measure(mu) => mu.limit_atom().is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Functional::Coordinate(_) | Functional::Limit => true,
            Functional::Measure(mu) => mu.is_nonnegative(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
enum FunctionalRepr {
    /// 1-based isolated point.
    Coordinate { k: usize },
    Limit,
    Measure { measure: Measure },
}

impl Serialize for Functional {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Functional::Coordinate(k) => FunctionalRepr::Coordinate { k: k + 1 },
            Functional::Limit => FunctionalRepr::Limit,
            Functional::Measure(mu) => FunctionalRepr::Measure { measure: mu.clone() },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Functional {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match FunctionalRepr::deserialize(d)? {
            FunctionalRepr::Coordinate { k: 0 } => {
                return Err(serde::de::Error::custom("coordinate index is 1-based"))
            }
            FunctionalRepr::Coordinate { k } => Functional::Coordinate(k - 1),
            FunctionalRepr::Limit => Functional::Limit,
            FunctionalRepr::Measure { measure } => Functional::Measure(measure),
        })
    }
}

/// `P(x) = φ(x)^(m−1) ψ(x)` on `C(ω+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductFunctionalPolynomial {
    #[serde(rename = "m")]
    degree: usize,
    phi: Functional,
    psi: Functional,
}

impl ProductFunctionalPolynomial {
    pub fn new(degree: usize, phi: Functional, psi: Functional) -> Result<ProductFunctionalPolynomial> {
        if degree < 2 {
            return Err(Error::DegreeTooSmall { min: 2, got: degree });
        }
        for f in [&phi, &psi] {
            if let Functional::Measure(mu) = f {
                if mu.space() != Space::OmegaPlusOne {
                    return Err(Error::SpaceMismatch {
                        left: Space::OmegaPlusOne,
                        right: mu.space(),
                    });
                }
            }
        }
        Ok(ProductFunctionalPolynomial { degree, phi, psi })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi(&self) -> &Functional {
        &self.phi
    }

    pub fn psi(&self) -> &Functional {
        &self.psi
    }

    pub fn space(&self) -> Space {
        Space::OmegaPlusOne
    }

    pub fn eval(&self, x: &Element) -> Result<Rational> {
        if x.space() != Space::OmegaPlusOne {
            return Err(Error::SpaceMismatch {
                left: Space::OmegaPlusOne,
                right: x.space(),
            });
        }
        let p = self.phi.eval(x)?.pow(self.degree as u32 - 1);
        Ok(&p * &self.psi.eval(x)?)
    }

    /// `P(v^(1/m))` as an exact surd.
    pub fn eval_root(&self, base: &Element) -> Result<Surd> {
        let m = self.degree as u32;
        let phi = self.phi.eval_root(m, base)?;
        let mut acc = self.psi.eval_root(m, base)?;
        for _ in 1..m {
            acc = acc.mul(&phi)?;
        }
        Ok(acc)
    }
}

impl<'de> Deserialize<'de> for ProductFunctionalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            m: usize,
            phi: Functional,
            psi: Functional,
        }
        let r = Repr::deserialize(d)?;
        ProductFunctionalPolynomial::new(r.m, r.phi, r.psi).map_err(serde::de::Error::custom)
    }
}

/// `productPolyEval`.
pub fn product_poly_eval(p: &ProductFunctionalPolynomial, x: &Element) -> Result<Rational> {
    p.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_evaluation() {
        let p = ProductFunctionalPolynomial::new(2, Functional::Coordinate(0), Functional::Limit).unwrap();
        assert_eq!(p.eval(&Element::omega_from_ints(&[3], 5)).unwrap(), Rational::from_int(15));
        assert_eq!(p.eval(&Element::omega_from_ints(&[3, 1], 0)).unwrap(), Rational::zero());
    }

    #[test]
    fn degree_at_least_two() {
        assert_eq!(
            ProductFunctionalPolynomial::new(1, Functional::Coordinate(0), Functional::Limit),
            Err(Error::DegreeTooSmall { min: 2, got: 1 })
        );
    }

    #[test]
    fn root_evaluation_matches_rational_case() {
        let p = ProductFunctionalPolynomial::new(3, Functional::Coordinate(1), Functional::Limit).unwrap();
        let x = Element::omega_from_ints(&[1, 2], 3);
        let r = p.eval_root(&x.pow(3)).unwrap();
        assert_eq!(r.as_rational(), Some(p.eval(&x).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"m":3,"phi":{"kind":"coordinate","k":1},"psi":{"kind":"limit"}}"#;
        let p: ProductFunctionalPolynomial = serde_json::from_str(text).unwrap();
        assert_eq!(p.phi(), &Functional::Coordinate(0));
        assert_eq!(serde_json::to_string(&p).unwrap(), text);
    }

    #[test]
    fn order_continuity_of_functionals() {
        assert!(Functional::Coordinate(4).is_order_continuous());
        assert!(!Functional::Limit.is_order_continuous());
        let mu = Measure::new(Space::OmegaPlusOne, vec![], Rational::one()).unwrap();
        assert!(!Functional::Measure(mu).is_order_continuous());
    }
}
