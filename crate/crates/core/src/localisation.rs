//! Restriction of forms, polynomials and measures to principal ideals.
//!
//! On a finite space `E_a` is the coordinate subspace over `supp a`, so the
//! restriction of a form is its sub-tensor over `supp a`. The restricted
//! object is kept twice: masked in the parent's coordinates (comparable
//! with the parent) and induced on `finite(|supp a|)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Measure, Polynomial, SymTensor};
use crate::lattice::{Element, PrincipalIdeal, Space};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalObject {
    Polynomial(Polynomial),
    Tensor(SymTensor),
    Measure(Measure),
}

impl LocalObject {
    pub fn space(&self) -> Space {
        match self {
            LocalObject::Tensor(t) => t.space(),
            LocalObject::Polynomial(p) => p.space(),
            LocalObject::Measure(mu) => mu.space(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            LocalObject::Tensor(_) => "tensor",
            LocalObject::Polynomial(_) => "polynomial",
            LocalObject::Measure(_) => "measure",
        }
    }

    fn unsupported(&self, what: &str) -> Error {
        Error::ModeNotApplicable {
            mode: what.into(),
            reason: format!("not defined for this {} representation", self.kind()),
        }
    }

    /// Zeroes every coefficient or atom outside the points of `keep`
    /// (and outside the limit point unless `keep_limit`).
    fn mask(&self, keep: &BTreeSet<usize>, keep_limit: bool) -> Result<LocalObject> {
        Ok(match self {
            LocalObject::Tensor(t) => LocalObject::Tensor(t.mask(keep)),
            LocalObject::Measure(mu) => LocalObject::Measure(mu.mask(keep, keep_limit)),
            LocalObject::Polynomial(Polynomial::Tensor(t)) => LocalObject::Polynomial(Polynomial::Tensor(t.mask(keep))),
            LocalObject::Polynomial(Polynomial::Measure { degree, measure }) => {
                LocalObject::Polynomial(Polynomial::measure(*degree, measure.mask(keep, keep_limit))?)
            }
            LocalObject::Polynomial(Polynomial::Product(_)) => return Err(self.unsupported("restrict")),
        })
    }

    fn induced(&self, keep: &BTreeSet<usize>) -> Result<LocalObject> {
        Ok(match self {
            LocalObject::Tensor(t) => LocalObject::Tensor(t.induced(keep)?),
            LocalObject::Measure(mu) => LocalObject::Measure(mu.induced(keep)?),
            LocalObject::Polynomial(Polynomial::Tensor(t)) => LocalObject::Polynomial(Polynomial::Tensor(t.induced(keep)?)),
            LocalObject::Polynomial(Polynomial::Measure { degree, measure }) => {
                LocalObject::Polynomial(Polynomial::measure(*degree, measure.induced(keep)?)?)
            }
            LocalObject::Polynomial(Polynomial::Product(_)) => return Err(self.unsupported("restrict")),
        })
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Result<LocalObject> {
        Ok(match self {
            LocalObject::Tensor(t) => LocalObject::Tensor(t.map(f)),
            LocalObject::Measure(mu) => LocalObject::Measure(mu.map(f)),
            LocalObject::Polynomial(Polynomial::Tensor(t)) => LocalObject::Polynomial(Polynomial::Tensor(t.map(f))),
            LocalObject::Polynomial(Polynomial::Measure { degree, measure }) => {
                LocalObject::Polynomial(Polynomial::measure(*degree, measure.map(f))?)
            }
            LocalObject::Polynomial(Polynomial::Product(_)) => return Err(self.unsupported("lattice operation")),
        })
    }

    fn zip(&self, other: &LocalObject, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<LocalObject> {
        use LocalObject as L;
        use Polynomial as P;
        Ok(match (self, other) {
            (L::Tensor(a), L::Tensor(b)) => L::Tensor(a.zip_with(b, f)?),
            (L::Measure(a), L::Measure(b)) => L::Measure(a.zip_with(b, f)?),
            (L::Polynomial(P::Tensor(a)), L::Polynomial(P::Tensor(b))) => L::Polynomial(P::Tensor(a.zip_with(b, f)?)),
            (
                L::Polynomial(P::Measure { degree: m, measure: a }),
                L::Polynomial(P::Measure { degree: k, measure: b }),
            ) => {
                if m != k {
                    return Err(Error::DegreeMismatch(*m, *k));
                }
                L::Polynomial(P::measure(*m, a.zip_with(b, f)?)?)
            }
            _ => {
                return Err(Error::ModeNotApplicable {
                    mode: "lattice operation".into(),
                    reason: format!("incompatible representations {} and {}", self.kind(), other.kind()),
                })
            }
        })
    }

    pub fn abs(&self) -> Result<LocalObject> {
        self.map(Rational::abs)
    }

    pub fn join(&self, other: &LocalObject) -> Result<LocalObject> {
        self.zip(other, Rational::max_of)
    }

    pub fn meet(&self, other: &LocalObject) -> Result<LocalObject> {
        self.zip(other, Rational::min_of)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LocalObject::Tensor(t) => t.is_zero(),
            LocalObject::Measure(mu) => mu.is_zero(),
            LocalObject::Polynomial(p) => p.is_zero(),
        }
    }

    /// Positivity of the coefficients, which for regular forms on a finite
    /// space is positivity of the form.
    pub fn is_nonnegative(&self) -> Result<bool> {
        match self {
            LocalObject::Tensor(t) | LocalObject::Polynomial(Polynomial::Tensor(t)) => Ok(t.is_nonnegative()),
            LocalObject::Measure(mu) | LocalObject::Polynomial(Polynomial::Measure { measure: mu, .. }) => {
                Ok(mu.is_nonnegative())
            }
            LocalObject::Polynomial(Polynomial::Product(_)) => Err(self.unsupported("positivity")),
        }
    }

    pub fn is_disjoint(&self, other: &LocalObject) -> Result<bool> {
        Ok(self.abs()?.meet(&other.abs()?)?.is_zero())
    }
}

/// Points of `E_a`'s carrier that matter for `obj`, and whether the limit
/// point belongs to it.
fn ideal_support(obj: &LocalObject, a: &PrincipalIdeal) -> (BTreeSet<usize>, bool) {
    let g = a.generator();
    match obj.space() {
        Space::Finite { .. } => (a.support(), false),
        Space::OmegaPlusOne => {
            let points: BTreeSet<usize> = match obj {
                LocalObject::Measure(mu) | LocalObject::Polynomial(Polynomial::Measure { measure: mu, .. }) => {
                    mu.support()
                }
                _ => BTreeSet::new(),
            };
            let keep = points.into_iter().filter(|&t| g.at(t).is_positive()).collect();
            (keep, g.tail().is_positive())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedObject {
    pub parent: LocalObject,
    pub generator: Element,
    /// The restriction in the parent's coordinates.
    pub masked: LocalObject,
    /// The restriction on `finite(|supp a|)`; absent on ω+1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced: Option<LocalObject>,
}

impl RestrictedObject {
    pub fn ideal(&self) -> PrincipalIdeal {
        PrincipalIdeal::new(self.generator.clone()).expect("validated on construction")
    }

    /// Evaluates the restricted polynomial at `x ∈ E_a`.
    pub fn eval(&self, x: &Element) -> Result<Rational> {
        if !self.ideal().contains(x)? {
            return Err(Error::NotInIdeal);
        }
        match &self.masked {
            LocalObject::Polynomial(p) => p.eval(x),
            LocalObject::Measure(mu) => mu.integrate(x),
            LocalObject::Tensor(t) => t.eval_diag(x),
        }
    }
}

/// `restrict`: the object seen on `E_a`.
pub fn restrict(obj: &LocalObject, a: &PrincipalIdeal) -> Result<RestrictedObject> {
    if obj.space() != a.space() {
        return Err(Error::SpaceMismatch {
            left: obj.space(),
            right: a.space(),
        });
    }
    let (keep, keep_limit) = ideal_support(obj, a);
    let masked = obj.mask(&keep, keep_limit)?;
    let induced = if obj.space().is_finite() {
        Some(obj.induced(&keep)?)
    } else {
        None
    };
    Ok(RestrictedObject {
        parent: obj.clone(),
        generator: a.generator().clone(),
        masked,
        induced,
    })
}

/// The restriction used for comparisons: induced on finite spaces, masked
/// on ω+1.
fn localise(obj: &LocalObject, a: &PrincipalIdeal) -> Result<LocalObject> {
    let r = restrict(obj, a)?;
    Ok(r.induced.unwrap_or(r.masked))
}

/// `{e_t} ∪ {1}`; on ω+1 the basis runs over the first `horizon` points.
pub fn default_generators(space: Space, horizon: usize) -> Vec<PrincipalIdeal> {
    let count = space.size().unwrap_or(horizon);
    (0..count)
        .filter_map(|t| Element::basis(space, t).ok())
        .chain(std::iter::once(Element::one(space)))
        .map(|g| PrincipalIdeal::new(g).expect("basis vectors and the unit are positive"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LocalIdentity {
    Modulus,
    Join,
    Meet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalVerdict {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing: Option<LocalIdentity>,
}

/// `|A|_a = |A_a|`, `(A ∨ B)_a = A_a ∨ B_a`, `(A ∧ B)_a = A_a ∧ B_a`.
pub fn local_lattice_consistency(a_obj: &LocalObject, b_obj: &LocalObject, a: &PrincipalIdeal) -> Result<LocalVerdict> {
    let la = localise(a_obj, a)?;
    let lb = localise(b_obj, a)?;
    let checks = [
        (LocalIdentity::Modulus, localise(&a_obj.abs()?, a)?, la.abs()?),
        (LocalIdentity::Join, localise(&a_obj.join(b_obj)?, a)?, la.join(&lb)?),
        (LocalIdentity::Meet, localise(&a_obj.meet(b_obj)?, a)?, la.meet(&lb)?),
    ];
    for (id, left, right) in checks {
        if left != right {
            return Ok(LocalVerdict {
                passed: false,
                failing: Some(id),
            });
        }
    }
    Ok(LocalVerdict {
        passed: true,
        failing: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessReport {
    pub global: bool,
    /// `P_a ⊥ Q_a` for each supplied generator, in order.
    pub local: Vec<bool>,
    /// Disjointness on the ideal of the unit, which is the whole space.
    pub at_unit: bool,
    /// `P ⊥ Q` iff every listed restriction is disjoint.
    pub agrees: bool,
}

/// `localDisjointness`.
pub fn local_disjointness(p: &LocalObject, q: &LocalObject, generators: &[PrincipalIdeal]) -> Result<DisjointnessReport> {
    let global = p.is_disjoint(q)?;
    let local = generators
        .iter()
        .map(|a| localise(p, a)?.is_disjoint(&localise(q, a)?))
        .collect::<Result<Vec<_>>>()?;
    let unit = PrincipalIdeal::new(Element::one(p.space()))?;
    let at_unit = localise(p, &unit)?.is_disjoint(&localise(q, &unit)?)?;
    let agrees = global == local.iter().all(|&d| d) && global == at_unit;
    Ok(DisjointnessReport {
        global,
        local,
        at_unit,
        agrees,
    })
}
