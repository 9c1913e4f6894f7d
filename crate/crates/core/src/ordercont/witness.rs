use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{verify_certificate, ConvergenceCertificate, Element, Family, Sign, Space};
use crate::ordercont::{Functional, ProductFunctionalPolynomial};
use crate::scalar::Rational;

/// `x_n → x₀` in order with `|P(x_n) − P(x₀)| ≥ gap` for every probed
/// `n ≥ gap_from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscontinuityWitness {
    pub base_point: Element,
    pub net: ConvergenceCertificate,
    pub gap: Rational,
    pub gap_from: usize,
    pub base_value: Rational,
    /// `(n, P(x_n))` for `n = 1, …, depth`.
    pub values: Vec<(usize, Rational)>,
}

impl DiscontinuityWitness {
    /// Checks the certificate and the gap again from scratch.
    pub fn reverify(&self, p: &ProductFunctionalPolynomial) -> Result<bool> {
        if !self.gap.is_positive() {
            return Ok(false);
        }
        if self.net.limit != self.base_point {
            return Ok(false);
        }
        let depth = self.values.len().max(self.gap_from);
        if !verify_certificate(&self.net, depth)?.passed {
            return Ok(false);
        }
        let base = p.eval(&self.base_point)?;
        if base != self.base_value {
            return Ok(false);
        }
        for (n, v) in &self.values {
            let actual = p.eval(&self.net.sequence.member(*n)?)?;
            if &actual != v {
                return Ok(false);
            }
            if *n >= self.gap_from && (&actual - &base).abs() < self.gap {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Isolated points a functional reads.
fn points(f: &Functional) -> BTreeSet<usize> {
    match f {
        Functional::Coordinate(k) => [*k].into_iter().collect(),
        Functional::Limit => BTreeSet::new(),
        Functional::Measure(mu) => mu.support(),
    }
}

fn limit_weight(f: &Functional) -> Rational {
    match f {
        Functional::Coordinate(_) => Rational::zero(),
        Functional::Limit => Rational::one(),
        Functional::Measure(mu) => mu.limit_atom().clone(),
    }
}

/// `discontinuityWitness`: `x₀ = 1` and `x_n = 1 − 1_{{limit} ∪ {isolated ≥ n}}`.
///
/// Once `n` passes every point `φ` and `ψ` read, `φ(x_n) = φ(1)` and
/// `ψ(x_n) = ψ(1) − ψ({limit})`, so the gap is `|φ(1)|^(m−1) |ψ({limit})|`.
pub fn discontinuity_witness(p: &ProductFunctionalPolynomial, depth: usize) -> Result<DiscontinuityWitness> {
    if !p.phi().is_order_continuous() {
        return Err(Error::NoWitness(
            "construction needs an order continuous first factor".into(),
        ));
    }
    if p.psi().is_order_continuous() {
        return Err(Error::NoWitness(
            "no witness: with an order continuous second factor the construction does not apply, and for \
             orthogonally additive polynomials order continuity at 0 already gives it at every point"
                .into(),
        ));
    }
    let one = Element::one(Space::OmegaPlusOne);
    let phi_one = p.phi().eval(&one)?;
    if phi_one.is_zero() {
        return Err(Error::NoWitness("first factor vanishes at the unit".into()));
    }
    let m = p.degree() as u32;
    let gap = &phi_one.abs().pow(m - 1) * &limit_weight(p.psi()).abs();
    let last = points(p.phi()).union(&points(p.psi())).copied().max();
    // 1-based: point t + 1 lies before the tail once n ≥ t + 2
    let gap_from = last.map_or(1, |t| t + 2);
    let net = ConvergenceCertificate::new(
        Family::Affine {
            base: one.clone(),
            sign: Sign::Minus,
            scale: Rational::one(),
        },
        one.clone(),
        Family::tail_indicator(Rational::one()),
    );
    let depth = depth.max(gap_from);
    let values = (1..=depth)
        .map(|n| Ok((n, p.eval(&net.sequence.member(n)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscontinuityWitness {
        base_value: p.eval(&one)?,
        base_point: one,
        net,
        gap,
        gap_from,
        values,
    })
}
