use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Element;

/// `base^(1/degree)` for a nonnegative `base`, kept symbolic.
///
/// Roots of rationals are generally irrational, so the root is never taken.
/// A polynomial of the same degree evaluates it by integrating `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalElement {
    degree: usize,
    base: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RadicalKind {
    /// `(x_1^m + … + x_k^m)^(1/m)`
    PowerSum,
    /// `(x_1 ⋯ x_m)^(1/m)`
    Product,
}

impl RadicalElement {
    pub fn new(degree: usize, base: Element) -> Result<RadicalElement> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if !base.is_nonnegative() {
            return Err(Error::NegativeRadicand);
        }
        Ok(RadicalElement { degree, base })
    }

    /// A nonnegative element seen as a radical of degree `m`: `x = (x^m)^(1/m)`.
    pub fn of_element(degree: usize, x: &Element) -> Result<RadicalElement> {
        if !x.is_nonnegative() {
            return Err(Error::NegativeRadicand);
        }
        RadicalElement::new(degree, x.pow(degree as u32))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &Element {
        &self.base
    }

    /// Degree-one radicals are plain elements.
    pub fn as_element(&self) -> Option<&Element> {
        (self.degree == 1).then_some(&self.base)
    }

    fn same_degree(&self, other: &RadicalElement) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::MixedRadicalDegree(self.degree, other.degree));
        }
        Ok(())
    }

    /// `t ↦ t^(1/m)` is increasing, so joins commute with the root.
    pub fn join(&self, other: &RadicalElement) -> Result<RadicalElement> {
        self.same_degree(other)?;
        RadicalElement::new(self.degree, self.base.join(&other.base)?)
    }

    pub fn meet(&self, other: &RadicalElement) -> Result<RadicalElement> {
        self.same_degree(other)?;
        RadicalElement::new(self.degree, self.base.meet(&other.base)?)
    }
}

/// Krivine functional-calculus radicals with an exactly computed base.
pub fn krivine_radical(kind: RadicalKind, degree: usize, args: &[Element]) -> Result<RadicalElement> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let first = args.first().ok_or(Error::EmptyArguments)?;
    if args.iter().any(|x| !x.is_nonnegative()) {
        return Err(Error::NegativeRadicand);
    }
    let base = match kind {
        RadicalKind::PowerSum => {
            let mut acc = first.pow(degree as u32);
            for x in &args[1..] {
                acc = acc.add(&x.pow(degree as u32))?;
            }
            acc
        }
        RadicalKind::Product => {
            if args.len() != degree {
                return Err(Error::ProductArity {
                    degree,
                    got: args.len(),
                });
            }
            let mut acc = first.clone();
            for x in &args[1..] {
                acc = acc.mul(x)?;
            }
            acc
        }
    };
    RadicalElement::new(degree, base)
}
