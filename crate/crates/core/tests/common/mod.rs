#![allow(dead_code)]

use proptest::prelude::*;
use riesz_lab::forms::{Measure, SymTensor};
use riesz_lab::lattice::{Element, Space};
use riesz_lab::Rational;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

pub fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

pub fn space() -> impl Strategy<Value = Space> {
    prop_oneof![(1usize..=5).prop_map(Space::finite), Just(Space::OmegaPlusOne)]
}

pub fn element_in(space: Space) -> BoxedStrategy<Element> {
    match space {
        Space::Finite { n } => prop::collection::vec(rational(), n)
            .prop_map(|v| Element::finite(v).unwrap())
            .boxed(),
        Space::OmegaPlusOne => (prop::collection::vec(rational(), 0..6), rational())
            .prop_map(|(p, t)| Element::omega(p, t))
            .boxed(),
    }
}

pub fn elements_in(space: Space, k: usize) -> BoxedStrategy<Vec<Element>> {
    prop::collection::vec(element_in(space), k).boxed()
}

/// A space together with `k` elements of it.
pub fn tuple(k: usize) -> impl Strategy<Value = Vec<Element>> {
    space().prop_flat_map(move |s| elements_in(s, k))
}

pub fn measure_in(space: Space) -> BoxedStrategy<Measure> {
    let horizon = space.size().unwrap_or(6);
    let limit = if space.is_finite() { Just(Rational::zero()).boxed() } else { rational().boxed() };
    (prop::collection::btree_map(0..horizon, rational(), 0..=horizon), limit)
        .prop_map(move |(atoms, lim)| Measure::new(space, atoms, lim).unwrap())
        .boxed()
}

pub fn measure() -> impl Strategy<Value = Measure> {
    space().prop_flat_map(measure_in)
}

pub fn tensor(n: usize, m: usize) -> BoxedStrategy<SymTensor> {
    use itertools::Itertools;
    let keys: Vec<Vec<usize>> = (0..n).combinations_with_replacement(m).collect();
    let len = keys.len();
    prop::collection::vec(prop_oneof![Just(Rational::zero()), rational()], len)
        .prop_map(move |vals| SymTensor::from_entries(n, m, keys.clone().into_iter().zip(vals)).unwrap())
        .boxed()
}

pub fn diagonal_tensor(n: usize, m: usize) -> BoxedStrategy<SymTensor> {
    prop::collection::vec(rational(), n)
        .prop_map(move |w| SymTensor::diagonal(m, &w).unwrap())
        .boxed()
}
