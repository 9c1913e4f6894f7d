use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::verdict::{reverify_with, sample_until_failure};
use crate::forms::{polar_value, polarize, Counterexample, Polynomial, SymTensor, Value, Verdict};
use crate::lattice::{is_disjoint, krivine_radical, rearrange_all, Element, RadicalKind, Space};
use crate::random::Gen;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AdditivityMode {
    /// `P(x + y) = P(x) + P(y)` for disjoint `x, y`.
    DisjointAdditivity,
    /// `P(x) = P(x⁺) + (−1)^m P(x⁻)`.
    PosNegSplit,
    /// `P(x ∨ y) + P(x ∧ y) = P(x) + P(y)` for `x, y ≥ 0`.
    Valuation,
    /// `Σ_i P(J_i x) = Σ_i P(x_i)` for `k ∈ {2, 3, 4}` positive elements.
    KValuation,
    /// `P((x^m + y^m)^(1/m)) = P(x) + P(y)` for `x, y ≥ 0`.
    KrivinePowerSum,
    /// `P((x_1 ⋯ x_m)^(1/m)) = A(x_1, …, x_m)` for `x_i ≥ 0`.
    KrivineProduct,
    /// Disjoint additivity restricted to the positive cone.
    PositiveConeOnly,
}

impl AdditivityMode {
    pub const ALL: [AdditivityMode; 7] = [
        AdditivityMode::DisjointAdditivity,
        AdditivityMode::PosNegSplit,
        AdditivityMode::Valuation,
        AdditivityMode::KValuation,
        AdditivityMode::KrivinePowerSum,
        AdditivityMode::KrivineProduct,
        AdditivityMode::PositiveConeOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AdditivityMode::DisjointAdditivity => "disjointAdditivity",
            AdditivityMode::PosNegSplit => "posNegSplit",
            AdditivityMode::Valuation => "valuation",
            AdditivityMode::KValuation => "kValuation",
            AdditivityMode::KrivinePowerSum => "krivinePowerSum",
            AdditivityMode::KrivineProduct => "krivineProduct",
            AdditivityMode::PositiveConeOnly => "positiveConeOnly",
        }
    }
}

/// `A(x_1, …, x_m)` for `P`: through the polarised tensor on finite
/// spaces, by the sign sum on ω+1.
struct Generator<'a> {
    poly: &'a Polynomial,
    tensor: Option<SymTensor>,
}

impl<'a> Generator<'a> {
    fn new(poly: &'a Polynomial) -> Result<Generator<'a>> {
        let tensor = match poly.space() {
            Space::Finite { .. } => Some(polarize(poly)?),
            Space::OmegaPlusOne => None,
        };
        Ok(Generator { poly, tensor })
    }

    fn eval(&self, args: &[Element]) -> Result<Rational> {
        match &self.tensor {
            Some(t) => t.eval(args),
            None => polar_value(self.poly, args),
        }
    }
}

fn sum_of(p: &Polynomial, xs: &[Element]) -> Result<Rational> {
    xs.iter().map(|x| p.eval(x)).sum()
}

fn sides(p: &Polynomial, gen: Option<&Generator>, mode: AdditivityMode, args: &[Element]) -> Result<Option<(Value, Value)>> {
    let m = p.degree();
    let pair = || -> Result<(&Element, &Element)> {
        match args {
            [x, y] => Ok((x, y)),
            _ => Err(Error::Arity {
                expected: 2,
                got: args.len(),
            }),
        }
    };
    let positive = args.iter().all(Element::is_nonnegative);
    Ok(Some(match mode {
        AdditivityMode::DisjointAdditivity | AdditivityMode::PositiveConeOnly => {
            let (x, y) = pair()?;
            if !is_disjoint(x, y)? || (mode == AdditivityMode::PositiveConeOnly && !positive) {
                return Ok(None);
            }
            (p.eval(&x.add(y)?)?.into(), sum_of(p, args)?.into())
        }
        AdditivityMode::PosNegSplit => {
            let [x] = args else {
                return Err(Error::Arity {
                    expected: 1,
                    got: args.len(),
                });
            };
            let neg = p.eval(&x.neg_part())?;
            let neg = if m % 2 == 0 { neg } else { -neg };
            (p.eval(x)?.into(), (&p.eval(&x.pos_part())? + &neg).into())
        }
        AdditivityMode::Valuation => {
            let (x, y) = pair()?;
            if !positive {
                return Ok(None);
            }
            let lhs = &p.eval(&x.join(y)?)? + &p.eval(&x.meet(y)?)?;
            (lhs.into(), sum_of(p, args)?.into())
        }
        AdditivityMode::KValuation => {
            if !positive || !(2..=4).contains(&args.len()) {
                return Ok(None);
            }
            (sum_of(p, &rearrange_all(args)?)?.into(), sum_of(p, args)?.into())
        }
        AdditivityMode::KrivinePowerSum => {
            if !positive {
                return Ok(None);
            }
            let r = krivine_radical(RadicalKind::PowerSum, m, args)?;
            (Value::from_surd(p.eval_radical_exact(&r)?), sum_of(p, args)?.into())
        }
        AdditivityMode::KrivineProduct => {
            if !positive {
                return Ok(None);
            }
            let r = krivine_radical(RadicalKind::Product, m, args)?;
            let rhs = match gen {
                Some(g) => g.eval(args)?,
                None => Generator::new(p)?.eval(args)?,
            };
            (Value::from_surd(p.eval_radical_exact(&r)?), rhs.into())
        }
    }))
}

/// `orthogonalAdditivityCheck`. Every mode samples; none is decisive on
/// its own.
pub fn orthogonal_additivity_check(p: &Polynomial, mode: AdditivityMode, samples: usize, seed: u64) -> Result<Verdict> {
    let m = p.degree();
    let space = p.space();
    let gen = if mode == AdditivityMode::KrivineProduct {
        Some(Generator::new(p)?)
    } else {
        None
    };
    let mut g = Gen::new(seed);
    let generate = || -> Vec<Element> {
        match mode {
            AdditivityMode::DisjointAdditivity => {
                let (x, y) = g.dense_disjoint_pair(space, false);
                vec![x, y]
            }
            AdditivityMode::PositiveConeOnly => {
                let (x, y) = g.dense_disjoint_pair(space, true);
                vec![x, y]
            }
            AdditivityMode::PosNegSplit => vec![g.dense_element(space, false)],
            AdditivityMode::Valuation | AdditivityMode::KrivinePowerSum => g.dense_elements(space, 2, true),
            AdditivityMode::KValuation => {
                let k = 2 + g.below(3);
                g.dense_elements(space, k, true)
            }
            AdditivityMode::KrivineProduct => g.dense_elements(space, m, true),
        }
    };
    sample_until_failure(samples, generate, |a| sides(p, gen.as_ref(), mode, a))
}

/// Re-evaluates a stored counterexample against the polynomial.
pub fn reverify_additivity(p: &Polynomial, mode: AdditivityMode, cex: &Counterexample) -> Result<bool> {
    reverify_with(cex, |a| sides(p, None, mode, a))
}
