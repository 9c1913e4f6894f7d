//! Order continuity of polynomials on `C(ω+1)`.
//!
//! An orthogonally additive polynomial is order continuous exactly when its
//! measure has no atom at the limit point, and then at every point. The
//! product polynomial `φ^(m−1) ψ` with `φ` a point evaluation and `ψ` the
//! limit functional is order continuous at 0 but not at the unit.

mod functional;
mod witness;

pub use functional::{product_poly_eval, Functional, ProductFunctionalPolynomial};
pub use witness::{discontinuity_witness, DiscontinuityWitness};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Measure, Polynomial};
use crate::lattice::{verify_certificate, ConvergenceCertificate, Element, Family, PointwiseLimit, Space};
use crate::scalar::Rational;

pub const DEFAULT_PROBE_DEPTH: usize = 50;

/// A measure on ω+1 is normal iff it has no limit atom: `{limit}` is the
/// only nonempty closed nowhere dense set.
pub fn is_normal_measure(mu: &Measure) -> bool {
    mu.space().is_finite() || mu.limit_atom().is_zero()
}

/// Decides order continuity of an orthogonally additive polynomial.
pub fn oa_order_continuity(p: &Polynomial) -> Result<bool> {
    let mu = p.as_measure().ok_or(Error::NotMeasure)?;
    Ok(is_normal_measure(&mu.abs()))
}

/// `x_n = c · 1_{{limit} ∪ {isolated ≥ n}}`, decreasing to 0.
pub fn urysohn_witness_net(scale: Rational) -> Result<ConvergenceCertificate> {
    if !scale.is_positive() {
        return Err(Error::NonPositiveScale(scale.to_string()));
    }
    Ok(ConvergenceCertificate::new(
        Family::tail_indicator(scale.clone()),
        Element::zero(Space::OmegaPlusOne),
        Family::tail_indicator(scale),
    ))
}

/// Lifts `x_n → x` to `x_n^m → x^m`, with dominator `m B^(m−1) y_n`, or
/// `B^(m−1) y_n` when `x = 0`.
pub fn power_net_dominator(c: &ConvergenceCertificate, m: usize, bound: &Rational) -> Result<ConvergenceCertificate> {
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if m == 1 {
        return Ok(c.clone());
    }
    let violated = |index: usize, norm: Rational| Error::BoundViolated {
        index,
        bound: bound.to_string(),
        norm: norm.to_string(),
    };
    if c.limit.sup_norm() > *bound {
        return Err(violated(0, c.limit.sup_norm()));
    }
    let start = c.from_index.max(1);
    for n in start..=DEFAULT_PROBE_DEPTH.max(start) {
        let norm = c.sequence.member(n)?.sup_norm();
        if norm > *bound {
            return Err(violated(n, norm));
        }
    }
    let power = bound.pow(m as u32 - 1);
    let factor = if c.limit.is_zero() {
        power
    } else {
        &Rational::from_int(m as i64) * &power
    };
    Ok(ConvergenceCertificate {
        sequence: c.sequence.clone().power(m as u32),
        limit: c.limit.pow(m as u32),
        dominator: c.dominator.clone().scaled(factor),
        from_index: c.from_index,
    })
}

fn functional_limit(f: &Functional, lim: &PointwiseLimit) -> Rational {
    match f {
        Functional::Coordinate(k) => lim.isolated.at(*k).clone(),
        Functional::Limit => lim.at_limit.clone(),
        Functional::Measure(mu) => {
            let s: Rational = mu.atoms().iter().map(|(t, w)| w * lim.isolated.at(*t)).sum();
            &s + &(mu.limit_atom() * &lim.at_limit)
        }
    }
}

/// `lim_n P(x_n)`, computed from the pointwise limit of the sequence. Every
/// representation depends on finitely many point values, each of which
/// converges.
pub fn limit_value(p: &Polynomial, lim: &PointwiseLimit) -> Result<Rational> {
    match p {
        Polynomial::Tensor(_) => p.eval(&lim.isolated),
        Polynomial::Measure { degree, measure } => {
            let m = *degree as u32;
            let s: Rational = measure.atoms().iter().map(|(t, w)| w * &lim.isolated.at(*t).pow(m)).sum();
            Ok(&s + &(measure.limit_atom() * &lim.at_limit.pow(m)))
        }
        Polynomial::Product(q) => {
            let phi = functional_limit(q.phi(), lim).pow(q.degree() as u32 - 1);
            Ok(&phi * &functional_limit(q.psi(), lim))
        }
    }
}

/// Limit of the certified upper bound on `|P(x_n)|`, where one is available:
/// `∫ |x_n|^m d|μ|` for measures, `|φ(x_n)|^(m−1) ‖ψ‖ sup‖x_n‖` for products
/// with order continuous `φ`.
fn bound_limit(p: &Polynomial, c: &ConvergenceCertificate, depth: usize) -> Result<Option<Rational>> {
    let lim = c.sequence.pointwise_limit()?;
    match p {
        Polynomial::Measure { degree, measure } => {
            let abs = PointwiseLimit {
                isolated: lim.isolated.abs(),
                at_limit: lim.at_limit.abs(),
            };
            Ok(Some(limit_value(&Polynomial::measure(*degree, measure.abs())?, &abs)?))
        }
        Polynomial::Product(q) if q.phi().is_order_continuous() => {
            let psi_norm = match q.psi() {
                Functional::Measure(mu) => mu.variation_norm(),
                _ => Rational::one(),
            };
            let mut sup = Rational::zero();
            for n in 1..=depth {
                sup = Rational::max_of(&sup, &c.sequence.member(n)?.sup_norm());
            }
            let phi = functional_limit(q.phi(), &lim).abs().pow(q.degree() as u32 - 1);
            Ok(Some(&phi * &(&psi_norm * &sup)))
        }
        _ => Ok(None),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetProbe {
    /// `P(x_n)` for `n = 1, …, depth`.
    pub values: Vec<Rational>,
    pub limit_value: Rational,
    pub target: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_limit: Option<Rational>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeVerdict {
    pub passed: bool,
    pub nets: Vec<NetProbe>,
}

/// Probes `P(x_n) → P(x)` along one verified certificate `x_n → x`.
pub fn order_continuity_probe_at(p: &Polynomial, c: &ConvergenceCertificate, depth: usize) -> Result<NetProbe> {
    let v = verify_certificate(c, depth)?;
    if !v.passed {
        return Err(Error::Unverifiable(format!("{:?}", v.failure)));
    }
    let values = (1..=depth)
        .map(|n| p.eval(&c.sequence.member(n)?))
        .collect::<Result<Vec<_>>>()?;
    let limit_value = limit_value(p, &c.sequence.pointwise_limit()?)?;
    let target = p.eval(&c.limit)?;
    let bound_limit = if c.limit.is_zero() {
        bound_limit(p, c, depth)?
    } else {
        None
    };
    let passed = limit_value == target && bound_limit.as_ref().map_or(true, Rational::is_zero);
    Ok(NetProbe {
        values,
        limit_value,
        target,
        bound_limit,
        passed,
    })
}

/// `zeroOrderContinuityProbe`: every net must converge to 0.
pub fn zero_order_continuity_probe(p: &Polynomial, nets: &[ConvergenceCertificate], depth: usize) -> Result<ProbeVerdict> {
    let mut probes = Vec::with_capacity(nets.len());
    for c in nets {
        if !c.limit.is_zero() {
            return Err(Error::NonZeroLimit);
        }
        probes.push(order_continuity_probe_at(p, c, depth)?);
    }
    Ok(ProbeVerdict {
        passed: probes.iter().all(|n| n.passed),
        nets: probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Sign;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn omega_measure(atoms: Vec<(usize, Rational)>, limit: Rational) -> Measure {
        Measure::new(Space::OmegaPlusOne, atoms, limit).unwrap()
    }

    #[test]
    fn normality() {
        assert!(is_normal_measure(&omega_measure(vec![(0, q(1))], q(0))));
        assert!(!is_normal_measure(&omega_measure(vec![], q(1))));
        assert!(is_normal_measure(&Measure::from_ints(&[1, -1])));
        let p = Polynomial::measure(2, omega_measure(vec![], q(1))).unwrap();
        assert!(!oa_order_continuity(&p).unwrap());
        let p = Polynomial::measure(2, omega_measure(vec![(0, q(1)), (1, q(1))], q(0)).scale(&q(-3))).unwrap();
        assert!(oa_order_continuity(&p).unwrap());
    }

    #[test]
    fn urysohn_net_shape() {
        let c = urysohn_witness_net(q(1)).unwrap();
        assert_eq!(c.sequence.member(1).unwrap(), Element::omega_from_ints(&[], 1));
        assert_eq!(c.sequence.member(3).unwrap(), Element::omega_from_ints(&[0, 0], 1));
        assert!(verify_certificate(&c, 50).unwrap().passed);
        assert!(urysohn_witness_net(q(0)).is_err());
    }

    #[test]
    fn dichotomy_examples() {
        let net = urysohn_witness_net(q(1)).unwrap();
        let normal = Polynomial::measure(3, omega_measure(vec![(0, q(1)), (2, q(-5))], q(0))).unwrap();
        let v = zero_order_continuity_probe(&normal, &[net.clone()], 50).unwrap();
        assert!(v.passed);
        assert!(v.nets[0].values[10..].iter().all(Rational::is_zero));

        let singular = Polynomial::measure(2, omega_measure(vec![], q(1))).unwrap();
        let v = zero_order_continuity_probe(&singular, &[net.clone()], 50).unwrap();
        assert!(!v.passed);
        assert!(v.nets[0].values.iter().all(|x| *x >= q(1)));

        let zero = Polynomial::measure(2, omega_measure(vec![], q(0))).unwrap();
        assert!(zero_order_continuity_probe(&zero, &[net], 50).unwrap().passed);
    }

    #[test]
    fn power_dominators() {
        let net = urysohn_witness_net(q(1)).unwrap();
        let p = power_net_dominator(&net, 3, &q(1)).unwrap();
        assert!(verify_certificate(&p, 50).unwrap().passed);
        assert_eq!(p.sequence.member(4).unwrap(), net.sequence.member(4).unwrap());

        let one = Element::one(Space::OmegaPlusOne);
        let affine = ConvergenceCertificate::new(
            Family::Affine {
                base: one.clone(),
                sign: Sign::Minus,
                scale: q(1),
            },
            one,
            Family::tail_indicator(q(1)),
        );
        let p = power_net_dominator(&affine, 2, &q(1)).unwrap();
        assert!(verify_certificate(&p, 50).unwrap().passed);
        assert_eq!(p.dominator.member(1).unwrap(), Element::omega_from_ints(&[], 2));

        assert_eq!(power_net_dominator(&net, 1, &q(1)).unwrap(), net);
        assert!(matches!(
            power_net_dominator(&net, 2, &Rational::new(1, 2)),
            Err(Error::BoundViolated { .. })
        ));
    }

    #[test]
    fn failure_inequality_along_the_net() {
        let mu = omega_measure(vec![(1, q(2))], Rational::new(3, 2));
        let c = Rational::new(1, 3);
        let net = urysohn_witness_net(c.clone()).unwrap();
        for n in 1..=20 {
            let x = net.sequence.member(n).unwrap();
            assert!(mu.integrate_power(&x, 3).unwrap() >= mu.limit_atom() * &c.pow(3));
        }
    }
}
