use itertools::Itertools;

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::forms::SymTensor;
use crate::lattice::Element;
use crate::scalar::Rational;

/// `|A|` on a finite space: the coefficientwise absolute value.
pub fn tensor_modulus(a: &Form) -> Form {
    match a {
        Form::Sym(t) => Form::Sym(t.abs()),
        Form::Matrix(g) => Form::Matrix(g.abs()),
    }
}

/// `x = Σ_t x(t) e_t`, dropping zero pieces.
pub fn atomic_partition(x: &Element) -> Result<Vec<Element>> {
    let space = x.space();
    let n = space.size().ok_or(Error::NotFinite(space))?;
    (0..n)
        .filter(|&t| !x.at(t).is_zero())
        .map(|t| Ok(Element::basis(space, t)?.scale(x.at(t))))
        .collect()
}

/// `Σ |A(u¹_{i_1}, …, u^m_{i_m})|` over every choice of one piece per
/// argument, where `partitions[k]` is a positive decomposition of `args[k]`.
pub fn modulus_partition_oracle(a: &SymTensor, args: &[Element], partitions: &[Vec<Element>]) -> Result<Rational> {
    if args.len() != a.degree() || partitions.len() != a.degree() {
        return Err(Error::Arity {
            expected: a.degree(),
            got: args.len().min(partitions.len()),
        });
    }
    for (k, (x, parts)) in args.iter().zip(partitions).enumerate() {
        if !x.is_nonnegative() {
            return Err(Error::BadPartition {
                arg: k + 1,
                reason: "argument is not nonnegative".into(),
            });
        }
        let mut sum = Element::zero(x.space());
        for u in parts {
            if !u.is_nonnegative() {
                return Err(Error::BadPartition {
                    arg: k + 1,
                    reason: "piece is not nonnegative".into(),
                });
            }
            sum = sum.add(u)?;
        }
        if &sum != x {
            return Err(Error::BadPartition {
                arg: k + 1,
                reason: "pieces do not sum to the argument".into(),
            });
        }
    }
    let mut total = Rational::zero();
    for choice in partitions.iter().map(|p| p.iter()).multi_cartesian_product() {
        let picked: Vec<Element> = choice.into_iter().cloned().collect();
        total = &total + &a.eval(&picked)?.abs();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::GeneralMatrixForm;

    #[test]
    fn coefficientwise_on_matrices() {
        let a = Form::Matrix(GeneralMatrixForm::from_ints(&[&[1, -2], &[-2, 3]]).unwrap());
        let expect = Form::Matrix(GeneralMatrixForm::from_ints(&[&[1, 2], &[2, 3]]).unwrap());
        assert_eq!(tensor_modulus(&a), expect);
    }

    #[test]
    fn atomic_partition_attains_modulus() {
        let a = GeneralMatrixForm::from_ints(&[&[1, -1], &[-1, 1]]).unwrap().to_sym().unwrap();
        let x = Element::from_ints(&[1, 1]);
        let atoms = atomic_partition(&x).unwrap();
        let v = modulus_partition_oracle(&a, &[x.clone(), x.clone()], &[atoms.clone(), atoms]).unwrap();
        assert_eq!(v, Rational::from_int(4));
        assert_eq!(a.abs().eval(&[x.clone(), x.clone()]).unwrap(), Rational::from_int(4));
        let trivial = modulus_partition_oracle(&a, &[x.clone(), x.clone()], &[vec![x.clone()], vec![x.clone()]]).unwrap();
        assert_eq!(trivial, a.eval(&[x.clone(), x]).unwrap().abs());
    }

    #[test]
    fn rejects_bad_decomposition() {
        let a = SymTensor::diagonal(2, &[Rational::one(), Rational::one()]).unwrap();
        let x = Element::from_ints(&[1, 1]);
        let err = modulus_partition_oracle(&a, &[x.clone(), x.clone()], &[vec![Element::from_ints(&[1, 0])], vec![x]]);
        assert!(matches!(err, Err(Error::BadPartition { arg: 1, .. })));
    }
}
