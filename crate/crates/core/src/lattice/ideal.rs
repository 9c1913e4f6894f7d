use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{Element, Space};
use crate::scalar::Rational;

/// The principal ideal `E_a = {x : |x| ≤ λa for some λ ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalIdeal {
    generator: Element,
}

impl PrincipalIdeal {
    pub fn new(generator: Element) -> Result<PrincipalIdeal> {
        if !generator.is_nonnegative() || generator.is_zero() {
            return Err(Error::BadGenerator);
        }
        Ok(PrincipalIdeal { generator })
    }

    pub fn generator(&self) -> &Element {
        &self.generator
    }

    pub fn space(&self) -> Space {
        self.generator.space()
    }

    /// On ω+1 a generator with positive tail dominates every eventually
    /// constant element.
    pub fn is_whole_space(&self) -> bool {
        match self.space() {
            Space::Finite { n } => self.support().len() == n,
            Space::OmegaPlusOne => !self.generator.tail_is_zero(),
        }
    }

    /// Positions where the generator is positive. For ω+1 with positive tail
    /// this lists only the prefix positions; see [`Self::is_whole_space`].
    pub fn support(&self) -> BTreeSet<usize> {
        self.generator.support_positions()
    }

    /// Smallest `λ` with `|x| ≤ λa`, if any.
    pub fn membership(&self, x: &Element) -> Result<Option<Rational>> {
        self.generator.ensure_same_space(x)?;
        let a = &self.generator;
        let mut lambda = Rational::zero();
        let len = a.horizon().max(x.horizon());
        let mut check = |xv: &Rational, av: &Rational| -> bool {
            if av.is_zero() {
                return xv.is_zero();
            }
            let ratio = &xv.abs() / av;
            if ratio > lambda {
                lambda = ratio;
            }
            true
        };
        for i in 0..len {
            if !check(x.at(i), a.at(i)) {
                return Ok(None);
            }
        }
        if !x.space().is_finite() && !check(x.tail(), a.tail()) {
            return Ok(None);
        }
        Ok(Some(lambda))
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        Ok(self.membership(x)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let ideal = PrincipalIdeal::new(Element::from_ints(&[1, 2])).unwrap();
        assert_eq!(ideal.membership(&Element::from_ints(&[2, 2])).unwrap(), Some(Rational::from_int(2)));

        let ideal = PrincipalIdeal::new(Element::from_ints(&[1, 0])).unwrap();
        assert_eq!(ideal.membership(&Element::from_ints(&[0, 1])).unwrap(), None);

        let ideal = PrincipalIdeal::new(Element::from_ints(&[1, 1])).unwrap();
        assert_eq!(ideal.membership(&Element::from_ints(&[0, 0])).unwrap(), Some(Rational::zero()));
    }

    #[test]
    fn omega_generators() {
        let whole = PrincipalIdeal::new(Element::omega_from_ints(&[0, 3], 1)).unwrap();
        assert!(whole.is_whole_space());
        // position 0 has a = 0, so x must vanish there
        assert_eq!(whole.membership(&Element::omega_from_ints(&[1], 5)).unwrap(), None);
        assert_eq!(
            whole.membership(&Element::omega_from_ints(&[0, 6], 5)).unwrap(),
            Some(Rational::from_int(5))
        );
        let head = PrincipalIdeal::new(Element::omega_from_ints(&[1, 1], 0)).unwrap();
        assert!(!head.is_whole_space());
        assert_eq!(head.membership(&Element::tail_indicator(2, Rational::one())).unwrap(), None);
        assert_eq!(
            head.membership(&Element::omega_from_ints(&[3, -4], 0)).unwrap(),
            Some(Rational::from_int(4))
        );
    }

    #[test]
    fn rejects_degenerate_generators() {
        assert_eq!(PrincipalIdeal::new(Element::from_ints(&[0, 0])), Err(Error::BadGenerator));
        assert_eq!(PrincipalIdeal::new(Element::from_ints(&[1, -1])), Err(Error::BadGenerator));
    }
}
