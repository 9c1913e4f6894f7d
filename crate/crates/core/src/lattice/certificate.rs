//! Order-convergence certificates for sequences.
//!
//! A certificate pairs a sequence `x_n → limit` with a dominating family
//! `y_n ≥ |x_n − limit|` that decreases to zero in the lattice. Domination and
//! monotonicity are checked index by index up to a probe depth; the infimum
//! of the dominator is certified from its closed form. On `C(ω+1)` a
//! decreasing family has infimum zero iff its values at every isolated point
//! tend to zero: the value at the limit point does not matter, since a
//! continuous lower bound vanishing on all isolated points also vanishes at
//! their accumulation point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Element, Space};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// A sequence `n ↦ x_n` (`n ≥ 1`) given in closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Family {
    /// Finite list, continued by repeating its last member.
    Explicit { members: Vec<Element> },
    /// `scale · 1_{{limit} ∪ {isolated points ≥ n}}` on ω+1.
    TailIndicator { scale: Rational },
    /// `base / n`.
    Decay { base: Element },
    /// `base ± scale · 1_{{limit} ∪ {isolated points ≥ n}}` on ω+1.
    Affine {
        base: Element,
        sign: Sign,
        scale: Rational,
    },
    Scaled { factor: Rational, inner: Box<Family> },
    /// Pointwise power `x_n^degree`.
    Power { inner: Box<Family>, degree: u32 },
}

/// Pointwise limit of a family: values at isolated (or finite) points, plus
/// the limit-point value on ω+1, which need not be the continuous extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseLimit {
    pub isolated: Element,
    pub at_limit: Rational,
}

impl Family {
    pub fn tail_indicator(scale: Rational) -> Family {
        Family::TailIndicator { scale }
    }

    pub fn explicit(members: Vec<Element>) -> Result<Family> {
        let first = members.first().ok_or(Error::EmptyArguments)?;
        for m in &members[1..] {
            first.ensure_same_space(m)?;
        }
        Ok(Family::Explicit { members })
    }

    pub fn scaled(self, factor: Rational) -> Family {
        Family::Scaled {
            factor,
            inner: Box::new(self),
        }
    }

    pub fn power(self, degree: u32) -> Family {
        Family::Power {
            inner: Box::new(self),
            degree,
        }
    }

    pub fn kind_name(&self) -> String {
        match self {
            Family::Explicit { .. } => "explicit".into(),
            Family::TailIndicator { .. } => "tailIndicator".into(),
            Family::Decay { .. } => "decay".into(),
            Family::Affine { .. } => "affine".into(),
            Family::Scaled { inner, .. } => format!("scaled({})", inner.kind_name()),
            Family::Power { inner, .. } => format!("power({})", inner.kind_name()),
        }
    }

    pub fn space(&self) -> Result<Space> {
        match self {
            Family::Explicit { members } => members
                .first()
                .map(Element::space)
                .ok_or(Error::EmptyArguments),
            Family::TailIndicator { .. } => Ok(Space::OmegaPlusOne),
            Family::Decay { base } => Ok(base.space()),
            Family::Affine { base, .. } => {
                if base.space() != Space::OmegaPlusOne {
                    return Err(Error::SpaceMismatch {
                        left: base.space(),
                        right: Space::OmegaPlusOne,
                    });
                }
                Ok(Space::OmegaPlusOne)
            }
            Family::Scaled { inner, .. } | Family::Power { inner, .. } => inner.space(),
        }
    }

    /// Member `x_n` for `n ≥ 1`.
    pub fn member(&self, n: usize) -> Result<Element> {
        let n = n.max(1);
        Ok(match self {
            Family::Explicit { members } => {
                let last = members.len().checked_sub(1).ok_or(Error::EmptyArguments)?;
                members[(n - 1).min(last)].clone()
            }
            Family::TailIndicator { scale } => Element::tail_indicator(n, scale.clone()),
            Family::Decay { base } => base.scale(&Rational::new(1, n as i64)),
            Family::Affine { base, sign, scale } => {
                let t = Element::tail_indicator(n, scale.clone());
                match sign {
                    Sign::Plus => base.add(&t)?,
                    Sign::Minus => base.sub(&t)?,
                }
            }
            Family::Scaled { factor, inner } => inner.member(n)?.scale(factor),
            Family::Power { inner, degree } => inner.member(n)?.pow(*degree),
        })
    }

    /// Exact pointwise limit as `n → ∞`.
    pub fn pointwise_limit(&self) -> Result<PointwiseLimit> {
        Ok(match self {
            Family::Explicit { members } => {
                let last = members.last().ok_or(Error::EmptyArguments)?;
                PointwiseLimit {
                    isolated: last.clone(),
                    at_limit: last.tail().clone(),
                }
            }
            Family::TailIndicator { scale } => PointwiseLimit {
                isolated: Element::zero(Space::OmegaPlusOne),
                at_limit: scale.clone(),
            },
            Family::Decay { base } => PointwiseLimit {
                isolated: Element::zero(base.space()),
                at_limit: Rational::zero(),
            },
            Family::Affine { base, sign, scale } => PointwiseLimit {
                isolated: base.clone(),
                at_limit: match sign {
                    Sign::Plus => base.tail() + scale,
                    Sign::Minus => base.tail() - scale,
                },
            },
            Family::Scaled { factor, inner } => {
                let l = inner.pointwise_limit()?;
                PointwiseLimit {
                    isolated: l.isolated.scale(factor),
                    at_limit: &l.at_limit * factor,
                }
            }
            Family::Power { inner, degree } => {
                let l = inner.pointwise_limit()?;
                PointwiseLimit {
                    isolated: l.isolated.pow(*degree),
                    at_limit: l.at_limit.pow(*degree),
                }
            }
        })
    }

    /// Whether the family is nonincreasing and nonnegative by construction,
    /// which is what a dominator needs for its infimum to be read off the
    /// pointwise limit. Errors name the kinds that cannot be certified.
    fn certify_decreasing(&self) -> Result<()> {
        let unsupported = || Error::UnsupportedFamily {
            role: "dominator",
            kind: self.kind_name(),
        };
        match self {
            // finite list: monotonicity is checked member by member
            Family::Explicit { .. } => Ok(()),
            Family::TailIndicator { scale } if !scale.is_negative() => Ok(()),
            Family::Decay { base } if base.is_nonnegative() => Ok(()),
            Family::Scaled { factor, inner } if !factor.is_negative() => inner.certify_decreasing(),
            Family::Power { inner, degree } if *degree >= 1 => inner.certify_decreasing(),
            _ => Err(unsupported()),
        }
    }

    /// Number of indices after which the family is known to be constant, if any.
    fn explicit_len(&self) -> usize {
        match self {
            Family::Explicit { members } => members.len(),
            Family::Scaled { inner, .. } | Family::Power { inner, .. } => inner.explicit_len(),
            _ => 0,
        }
    }
}

/// Order convergence `x_n → limit`, witnessed by `dominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceCertificate {
    pub sequence: Family,
    pub limit: Element,
    pub dominator: Family,
    /// Domination is required for `n ≥ from_index`.
    #[serde(default = "one")]
    pub from_index: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CertificateFailure {
    /// `|x_n − limit| ≤ y_n` fails.
    Domination,
    /// `y_n ≤ y_{n−1}` fails.
    Monotonicity,
    /// The dominator does not decrease to zero.
    InfNotZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateVerdict {
    pub passed: bool,
    /// First violated index and what failed there.
    pub failure: Option<(usize, CertificateFailure)>,
    pub checked_up_to: usize,
}

impl ConvergenceCertificate {
    pub fn new(sequence: Family, limit: Element, dominator: Family) -> ConvergenceCertificate {
        ConvergenceCertificate {
            sequence,
            limit,
            dominator,
            from_index: 1,
        }
    }

    pub fn space(&self) -> Result<Space> {
        let s = self.sequence.space()?;
        let d = self.dominator.space()?;
        for other in [d, self.limit.space()] {
            if other != s {
                return Err(Error::SpaceMismatch { left: s, right: other });
            }
        }
        Ok(s)
    }
}

/// Checks domination and monotonicity for `n ≤ probe_depth` (and across the
/// whole of any explicit list), then certifies that the dominator's infimum is 0.
pub fn verify_certificate(c: &ConvergenceCertificate, probe_depth: usize) -> Result<CertificateVerdict> {
    c.space()?;
    c.dominator.certify_decreasing()?;
    let start = c.from_index.max(1);
    let depth = probe_depth
        .max(c.dominator.explicit_len())
        .max(c.sequence.explicit_len())
        .max(start);
    let fail = |index, kind| CertificateVerdict {
        passed: false,
        failure: Some((index, kind)),
        checked_up_to: depth,
    };
    let mut prev: Option<Element> = None;
    for n in start..=depth {
        let y = c.dominator.member(n)?;
        let gap = c.sequence.member(n)?.sub(&c.limit)?.abs();
        if !gap.le(&y)? {
            return Ok(fail(n, CertificateFailure::Domination));
        }
        if let Some(p) = &prev {
            if !y.le(p)? {
                return Ok(fail(n, CertificateFailure::Monotonicity));
            }
        }
        prev = Some(y);
    }
    if !c.dominator.pointwise_limit()?.isolated.is_zero() {
        return Ok(fail(depth, CertificateFailure::InfNotZero));
    }
    Ok(CertificateVerdict {
        passed: true,
        failure: None,
        checked_up_to: depth,
    })
}
