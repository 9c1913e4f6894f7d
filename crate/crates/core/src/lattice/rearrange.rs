use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::ops::{join_all, meet_all};
use crate::lattice::Element;

/// `J_k^m(x)`: the join over all `k`-subsets of `x` of the meet of the subset.
///
/// For real numbers this is the `k`-th largest entry, so pointwise on `C(K)`
/// the sequence `J_1, …, J_m` is the decreasing rearrangement of the inputs.
pub fn decreasing_rearrangement(xs: &[Element], k: usize) -> Result<Element> {
    let m = xs.len();
    if k == 0 || k > m {
        return Err(Error::RearrangementIndex { k, m });
    }
    for x in &xs[1..] {
        xs[0].ensure_same_space(x)?;
    }
    let mut acc: Option<Element> = None;
    for subset in xs.iter().combinations(k) {
        let meet = meet_all(subset)?.expect("k >= 1");
        acc = Some(match acc {
            None => meet,
            Some(a) => a.join(&meet)?,
        });
    }
    Ok(acc.expect("at least one subset"))
}

/// `(J_1^m(x), …, J_m^m(x))`.
pub fn rearrange_all(xs: &[Element]) -> Result<Vec<Element>> {
    if xs.is_empty() {
        return Err(Error::EmptyArguments);
    }
    (1..=xs.len())
        .map(|k| decreasing_rearrangement(xs, k))
        .collect()
}

/// Top of the rearrangement, `J_1 = ⋁ x_i`.
pub fn top(xs: &[Element]) -> Result<Element> {
    join_all(xs)?.ok_or(Error::EmptyArguments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    /// Per-point sort, independent of the lattice formula.
    fn sort_oracle(xs: &[Element], k: usize) -> Vec<Rational> {
        let n = xs[0].values().len();
        (0..n)
            .map(|t| {
                let mut col: Vec<Rational> = xs.iter().map(|x| x.at(t).clone()).collect();
                col.sort_by(|a, b| b.cmp(a));
                col[k - 1].clone()
            })
            .collect()
    }

    #[test]
    fn scalar_triple() {
        let xs = [Element::from_ints(&[5]), Element::from_ints(&[2]), Element::from_ints(&[7])];
        let js: Vec<_> = rearrange_all(&xs).unwrap();
        assert_eq!(js, vec![Element::from_ints(&[7]), Element::from_ints(&[5]), Element::from_ints(&[2])]);
    }

    #[test]
    fn vector_example() {
        let xs = [Element::from_ints(&[1, 0]), Element::from_ints(&[0, 1]), Element::from_ints(&[1, 1])];
        for k in 1..=3 {
            assert_eq!(decreasing_rearrangement(&xs, k).unwrap().values(), sort_oracle(&xs, k).as_slice());
        }
        assert_eq!(decreasing_rearrangement(&xs, 1).unwrap(), Element::from_ints(&[1, 1]));
        assert_eq!(decreasing_rearrangement(&xs, 2).unwrap(), Element::from_ints(&[1, 1]));
        assert_eq!(decreasing_rearrangement(&xs, 3).unwrap(), Element::from_ints(&[0, 0]));
    }

    #[test]
    fn index_out_of_range() {
        let xs = [Element::from_ints(&[1])];
        assert!(matches!(decreasing_rearrangement(&xs, 0), Err(Error::RearrangementIndex { .. })));
        assert!(matches!(decreasing_rearrangement(&xs, 2), Err(Error::RearrangementIndex { .. })));
    }

    #[test]
    fn omega_rearrangement_uses_tails() {
        let xs = [
            Element::omega_from_ints(&[3], 1),
            Element::omega_from_ints(&[1], 2),
        ];
        assert_eq!(decreasing_rearrangement(&xs, 1).unwrap(), Element::omega_from_ints(&[3], 2));
        assert_eq!(decreasing_rearrangement(&xs, 2).unwrap(), Element::omega_from_ints(&[1], 1));
    }
}
