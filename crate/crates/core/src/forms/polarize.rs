use itertools::Itertools;

use crate::error::{Error, Result};
use crate::forms::{Polynomial, SymTensor};
use crate::lattice::{Element, Space};
use crate::scalar::{factorial, Rational};

/// The symmetric `m`-linear form generating `P`, evaluated at `args`:
/// `A(x_1, …, x_m) = 1/(2^m m!) Σ_{ε ∈ {±1}^m} ε_1⋯ε_m P(ε_1 x_1 + ⋯ + ε_m x_m)`.
pub fn polar_value(p: &Polynomial, args: &[Element]) -> Result<Rational> {
    let m = p.degree();
    if args.len() != m {
        return Err(Error::Arity {
            expected: m,
            got: args.len(),
        });
    }
    let mut total = Rational::zero();
    for mask in 0u32..(1 << m) {
        let mut sum = Element::zero(args[0].space());
        let mut sign = 1i64;
        for (k, x) in args.iter().enumerate() {
            if mask & (1 << k) != 0 {
                sum = sum.sub(x)?;
                sign = -sign;
            } else {
                sum = sum.add(x)?;
            }
        }
        let v = p.eval(&sum)?;
        total = if sign > 0 { &total + &v } else { &total - &v };
    }
    let denom = &Rational::from_int(1 << m) * &factorial(m as u32);
    Ok(&total / &denom)
}

/// Recovers the unique symmetric generator of a finite-space polynomial
/// from its values alone, one basis tuple at a time.
pub fn polarize(p: &Polynomial) -> Result<SymTensor> {
    let n = match p.space() {
        Space::Finite { n } => n,
        other => return Err(Error::NotFinite(other)),
    };
    let m = p.degree();
    let space = p.space();
    let basis = (0..n).map(|i| Element::basis(space, i)).collect::<Result<Vec<_>>>()?;
    let mut out = SymTensor::zero(n, m)?;
    for key in (0..n).combinations_with_replacement(m) {
        let args: Vec<Element> = key.iter().map(|&i| basis[i].clone()).collect();
        out.set(key, polar_value(p, &args)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Measure;

    #[test]
    fn square_of_first_coordinate() {
        let p = Polynomial::measure(2, Measure::from_ints(&[1, 0])).unwrap();
        let a = polarize(&p).unwrap();
        assert_eq!(a.entries().len(), 1);
        assert_eq!(a.get(&[0, 0]).unwrap(), Rational::one());
        assert_eq!(
            a.eval(&[Element::from_ints(&[1, 0]), Element::from_ints(&[0, 1])]).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn scalar_prefactor() {
        // Σ ε1 ε2 (ε1 s + ε2 t)^2 = 8 s t for s = 3, t = 5
        let (s, t) = (Rational::from_int(3), Rational::from_int(5));
        let mut sum = Rational::zero();
        for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let v = &(&s * &Rational::from_int(e1)) + &(&t * &Rational::from_int(e2));
            sum = &sum + &(&Rational::from_int(e1 * e2) * &v.pow(2));
        }
        assert_eq!(sum, &Rational::from_int(8) * &(&s * &t));
    }

    #[test]
    fn inverts_diagonal_restriction() {
        let q = Rational::from_int;
        let a = SymTensor::from_entries(
            3,
            3,
            vec![(vec![0, 0, 1], q(2)), (vec![0, 1, 2], Rational::new(-1, 3)), (vec![2, 2, 2], q(5))],
        )
        .unwrap();
        assert_eq!(polarize(&Polynomial::Tensor(a.clone())).unwrap(), a);
    }

    #[test]
    fn measure_gives_diagonal_tensor() {
        let mu = Measure::from_ints(&[3, 0, -2]);
        let a = polarize(&Polynomial::measure(3, mu).unwrap()).unwrap();
        assert_eq!(a, SymTensor::diagonal(3, &[3, 0, -2].map(Rational::from_int)).unwrap());
    }

    #[test]
    fn omega_is_rejected() {
        let mu = Measure::new(Space::OmegaPlusOne, vec![], Rational::one()).unwrap();
        assert_eq!(
            polarize(&Polynomial::measure(2, mu).unwrap()),
            Err(Error::NotFinite(Space::OmegaPlusOne))
        );
    }
}
