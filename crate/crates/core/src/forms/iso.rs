use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Measure, Polynomial};
use crate::lattice::Element;
use crate::scalar::Rational;

/// `I_m μ`, the polynomial `x ↦ ∫ x^m dμ`.
pub fn to_poly(mu: &Measure, m: usize) -> Result<Polynomial> {
    Polynomial::measure(m, mu.clone())
}

/// Inverse of [`to_poly`]. A diagonal tensor polynomial on a finite space
/// is read off as `μ_t = P(e_t)`.
pub fn to_measure(p: &Polynomial) -> Result<Measure> {
    match p {
        Polynomial::Measure { measure, .. } => Ok(measure.clone()),
        Polynomial::Tensor(t) => {
            if let Some((key, _)) = t.first_off_diagonal() {
                return Err(Error::NotOrthogonallyAdditive(key.iter().map(|i| i + 1).collect()));
            }
            let space = t.space();
            let weights = (0..t.n())
                .map(|i| p.eval(&Element::basis(space, i)?))
                .collect::<Result<Vec<_>>>()?;
            Measure::from_weights(&weights)
        }
        Polynomial::Product(_) => Err(Error::NotMeasure),
    }
}

fn measure_of(p: &Polynomial) -> Result<(usize, &Measure)> {
    match p {
        Polynomial::Measure { degree, measure } => Ok((*degree, measure)),
        _ => Err(Error::NotMeasure),
    }
}

/// `(‖P‖_r, ‖μ‖)`: the regular norm is `|P|(1)`, since a positive
/// orthogonally additive polynomial attains its norm at the unit.
pub fn norm_check(p: &Polynomial) -> Result<(Rational, Rational)> {
    let (m, mu) = measure_of(p)?;
    let modulus = mu.abs();
    let regular = modulus.integrate_power(&Element::one(mu.space()), m)?;
    Ok((regular, mu.variation_norm()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PolyLatticeOp {
    Modulus,
    Join,
    Meet,
}

/// Lattice operations on orthogonally additive polynomials, atomwise on
/// the representing measures.
pub fn poly_lattice_ops(op: PolyLatticeOp, p: &Polynomial, q: Option<&Polynomial>) -> Result<Polynomial> {
    let (m, mu) = measure_of(p)?;
    let result = match op {
        PolyLatticeOp::Modulus => mu.abs(),
        PolyLatticeOp::Join | PolyLatticeOp::Meet => {
            let (k, nu) = measure_of(q.ok_or(Error::EmptyArguments)?)?;
            if k != m {
                return Err(Error::DegreeMismatch(m, k));
            }
            if op == PolyLatticeOp::Join {
                mu.join(nu)?
            } else {
                mu.meet(nu)?
            }
        }
    };
    Polynomial::measure(m, result)
}
