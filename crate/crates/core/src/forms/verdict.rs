use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::forms::Surd;
use crate::lattice::Element;
use crate::scalar::Rational;

/// An exact value on one side of a checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Rational(Rational),
    Surd(Surd),
}

impl Value {
    pub fn from_surd(s: Surd) -> Value {
        match s.as_rational() {
            Some(r) => Value::Rational(r),
            None => Value::Surd(s),
        }
    }

    fn to_surd(&self, degree: u32) -> Surd {
        match self {
            Value::Rational(r) => Surd::rational(degree, r.clone()),
            Value::Surd(s) => s.clone(),
        }
    }

    /// Exact equality across representations.
    pub fn equals(&self, other: &Value) -> Result<bool> {
        Ok(match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => a == b,
            (Value::Surd(s), v) | (v, Value::Surd(s)) => s.sub(&v.to_surd(s.degree()))?.is_zero(),
        })
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rational(r)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{r}"),
            Value::Surd(s) => write!(f, "{s}"),
        }
    }
}

/// Arguments at which the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub args: Vec<Element>,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of a decision procedure or a sampled check. Sampled passes are
/// one-sided: `decisive` is false and `samples` records how many instances
/// were tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub decisive: bool,
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub(crate) fn decided(passed: bool, counterexample: Option<Counterexample>) -> Verdict {
        Verdict {
            passed,
            decisive: true,
            samples: 0,
            counterexample,
        }
    }
}

/// Runs `evaluate` on up to `samples` generated argument tuples and stops
/// at the first one where the sides differ.
pub(crate) fn sample_until_failure<G, E>(samples: usize, mut generate: G, evaluate: E) -> Result<Verdict>
where
    G: FnMut() -> Vec<Element>,
    E: Fn(&[Element]) -> Result<Option<(Value, Value)>>,
{
    let mut tested = 0;
    for _ in 0..samples {
        let args = generate();
        let Some((lhs, rhs)) = evaluate(&args)? else {
            continue;
        };
        tested += 1;
        if !lhs.equals(&rhs)? {
            return Ok(Verdict {
                passed: false,
                decisive: true,
                samples: tested,
                counterexample: Some(Counterexample { args, lhs, rhs }),
            });
        }
    }
    Ok(Verdict {
        passed: true,
        decisive: false,
        samples: tested,
        counterexample: None,
    })
}

/// Recomputes both sides at the stored arguments and confirms the stored
/// values and the violation.
pub(crate) fn reverify_with<E>(cex: &Counterexample, evaluate: E) -> Result<bool>
where
    E: Fn(&[Element]) -> Result<Option<(Value, Value)>>,
{
    let Some((lhs, rhs)) = evaluate(&cex.args)? else {
        return Ok(false);
    };
    Ok(lhs.equals(&cex.lhs)? && rhs.equals(&cex.rhs)? && !lhs.equals(&rhs)?)
}
