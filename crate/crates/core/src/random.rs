//! Seeded instance generators.
//!
//! Rationals have numerators in `[−9, 9]` and denominators in `{1, 2, 3, 4}`.
//! ω+1 elements get a prefix of at most [`OMEGA_HORIZON`] entries.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forms::{GeneralMatrixForm, Measure, SymTensor};
use crate::lattice::{Element, Space};
use crate::scalar::Rational;

pub const OMEGA_HORIZON: usize = 6;

#[derive(Clone, Debug)]
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for one trial of a seeded run.
    pub fn for_trial(seed: u64, trial: u64) -> Gen {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Gen { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-9..=9);
        let den = self.rng.gen_range(1..=4);
        Rational::new(num, den)
    }

    pub fn nonneg_rational(&mut self) -> Rational {
        self.rational().abs()
    }

    pub fn positive_rational(&mut self) -> Rational {
        let num = self.rng.gen_range(1..=9);
        let den = self.rng.gen_range(1..=4);
        Rational::new(num, den)
    }

    /// Roughly one value in five is zero, so supports vary.
    fn value(&mut self, nonneg: bool) -> Rational {
        if self.rng.gen_ratio(1, 5) {
            return Rational::zero();
        }
        if nonneg {
            self.nonneg_rational()
        } else {
            self.rational()
        }
    }

    fn element_with(&mut self, space: Space, nonneg: bool) -> Element {
        match space {
            Space::Finite { n } => Element::finite((0..n).map(|_| self.value(nonneg)).collect()).expect("n ≥ 1"),
            Space::OmegaPlusOne => {
                let len = self.below(OMEGA_HORIZON + 1);
                let prefix = (0..len).map(|_| self.value(nonneg)).collect();
                let tail = self.value(nonneg);
                Element::omega(prefix, tail)
            }
        }
    }

    pub fn element(&mut self, space: Space) -> Element {
        self.element_with(space, false)
    }

    pub fn nonneg_element(&mut self, space: Space) -> Element {
        self.element_with(space, true)
    }

    /// No zero values at all, so every coordinate takes part.
    pub fn dense_element(&mut self, space: Space, nonneg: bool) -> Element {
        let draw = |g: &mut Gen| {
            let v = g.positive_rational();
            if nonneg || g.coin() {
                v
            } else {
                -v
            }
        };
        match space {
            Space::Finite { n } => Element::finite((0..n).map(|_| draw(self)).collect()).expect("n ≥ 1"),
            Space::OmegaPlusOne => {
                let len = self.below(OMEGA_HORIZON + 1);
                let prefix = (0..len).map(|_| draw(self)).collect();
                let tail = draw(self);
                Element::omega(prefix, tail)
            }
        }
    }

    pub fn dense_elements(&mut self, space: Space, k: usize, nonneg: bool) -> Vec<Element> {
        (0..k).map(|_| self.dense_element(space, nonneg)).collect()
    }

    /// Disjoint pair whose values are nonzero on their masks.
    pub fn dense_disjoint_pair(&mut self, space: Space, nonneg: bool) -> (Element, Element) {
        let ((l, lt), (r, rt)) = self.complementary_masks(space);
        let h = space.size().unwrap_or(OMEGA_HORIZON);
        let x = self.dense_element(space, nonneg).mask_within(&l, h, lt);
        let y = self.dense_element(space, nonneg).mask_within(&r, h, rt);
        (x, y)
    }

    pub fn elements(&mut self, space: Space, k: usize) -> Vec<Element> {
        (0..k).map(|_| self.element(space)).collect()
    }

    pub fn nonneg_elements(&mut self, space: Space, k: usize) -> Vec<Element> {
        (0..k).map(|_| self.nonneg_element(space)).collect()
    }

    /// A nonnegative nonzero element, usable as an ideal generator.
    pub fn generator(&mut self, space: Space) -> Element {
        loop {
            let a = self.nonneg_element(space);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// Random split of the positions (and, on ω+1, the tail) into two
    /// complementary masks.
    pub fn complementary_masks(&mut self, space: Space) -> ((BTreeSet<usize>, bool), (BTreeSet<usize>, bool)) {
        let len = space.size().unwrap_or(OMEGA_HORIZON);
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for i in 0..len {
            if self.coin() {
                left.insert(i);
            } else {
                right.insert(i);
            }
        }
        let tail_left = !space.is_finite() && self.coin();
        let tail_right = !space.is_finite() && !tail_left;
        ((left, tail_left), (right, tail_right))
    }

    /// Two disjoint elements carried by complementary supports.
    pub fn disjoint_pair(&mut self, space: Space, nonneg: bool) -> (Element, Element) {
        let ((l, lt), (r, rt)) = self.complementary_masks(space);
        let h = space.size().unwrap_or(OMEGA_HORIZON);
        let x = self.element_with(space, nonneg).mask_within(&l, h, lt);
        let y = self.element_with(space, nonneg).mask_within(&r, h, rt);
        (x, y)
    }

    pub fn measure(&mut self, space: Space) -> Measure {
        let points = space.size().unwrap_or(OMEGA_HORIZON);
        let atoms: Vec<(usize, Rational)> = (0..points).map(|t| (t, self.value(false))).collect();
        let limit = if space.is_finite() || self.coin() {
            Rational::zero()
        } else {
            self.rational()
        };
        Measure::new(space, atoms, limit).expect("points in range")
    }

    /// A measure on ω+1 without a limit atom.
    pub fn normal_measure(&mut self, space: Space) -> Measure {
        let mu = self.measure(space);
        mu.mask(&mu.support(), false)
    }

    pub fn diagonal_tensor(&mut self, n: usize, m: usize) -> SymTensor {
        let w: Vec<Rational> = (0..n).map(|_| self.value(false)).collect();
        SymTensor::diagonal(m, &w).expect("n, m ≥ 1")
    }

    /// A tensor with at least one nonzero off-diagonal coefficient
    /// (requires `n ≥ 2` and `m ≥ 2`).
    pub fn off_diagonal_tensor(&mut self, n: usize, m: usize) -> SymTensor {
        assert!(n >= 2 && m >= 2, "off-diagonal tensors need n, m ≥ 2");
        let mut t = self.dense_tensor(n, m);
        if t.is_diagonal() {
            let mut key: Vec<usize> = (0..m).map(|_| self.below(n)).collect();
            key[0] = 0;
            key[m - 1] = 1 + self.below(n - 1);
            t.set(key, self.positive_rational()).expect("key in range");
        }
        t
    }

    fn dense_tensor(&mut self, n: usize, m: usize) -> SymTensor {
        use itertools::Itertools;
        let entries: Vec<(Vec<usize>, Rational)> = (0..n)
            .combinations_with_replacement(m)
            .map(|k| (k, self.value(false)))
            .collect();
        SymTensor::from_entries(n, m, entries).expect("canonical keys")
    }

    /// Half diagonal, half with off-diagonal mass.
    pub fn sym_tensor(&mut self, n: usize, m: usize) -> SymTensor {
        if n < 2 || m < 2 || self.coin() {
            self.diagonal_tensor(n, m)
        } else {
            self.off_diagonal_tensor(n, m)
        }
    }

    pub fn matrix(&mut self, n: usize) -> GeneralMatrixForm {
        let diagonal = self.coin();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if diagonal && i != j {
                            Rational::zero()
                        } else {
                            self.value(false)
                        }
                    })
                    .collect()
            })
            .collect();
        GeneralMatrixForm::new(rows).expect("square")
    }
}
