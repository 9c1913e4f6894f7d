mod common;

use common::*;
use proptest::prelude::*;
use riesz_lab::lattice::{
    is_disjoint, rearrange_all, verify_certificate, ConvergenceCertificate, Element, Family, RadicalElement, Space,
};
use riesz_lab::ordercont::urysohn_witness_net;
use riesz_lab::Rational;

proptest! {
    #[test]
    fn distributive_lattice(xs in tuple(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(x.meet(&y.join(z)?)?, x.meet(y)?.join(&x.meet(z)?)?);
        prop_assert_eq!(x.join(&y.meet(z)?)?, x.join(y)?.meet(&x.join(z)?)?);
        prop_assert_eq!(x.join(y)?.add(&x.meet(y)?)?, x.add(y)?);
    }

    #[test]
    fn riesz_decomposition(xs in tuple(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let (p, n) = (x.pos_part(), x.neg_part());
        prop_assert_eq!(&p.sub(&n)?, x);
        prop_assert_eq!(x.abs(), p.add(&n)?);
        prop_assert!(is_disjoint(&p, &n)?);
        prop_assert!(x.add(y)?.abs().le(&x.abs().add(&y.abs())?)?);
    }

    #[test]
    fn disjointness_is_meet_of_moduli(xs in tuple(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let oracle = x.abs().meet(&y.abs())?.is_zero();
        prop_assert_eq!(is_disjoint(x, y)?, oracle);
    }

    #[test]
    fn rearrangement_is_pointwise_sort(xs in space().prop_flat_map(|s| (1usize..=4).prop_flat_map(move |k| elements_in(s, k)))) {
        let j = rearrange_all(&xs)?;
        let horizon = xs.iter().map(Element::horizon).max().unwrap_or(0) + 1;
        let points = xs[0].space().size().unwrap_or(horizon);
        for i in 0..points {
            let mut column: Vec<Rational> = xs.iter().map(|x| x.at(i).clone()).collect();
            column.sort_by(|a, b| b.cmp(a));
            let got: Vec<Rational> = j.iter().map(|x| x.at(i).clone()).collect();
            prop_assert_eq!(got, column);
        }
        let mut product = xs[0].clone();
        let mut sorted_product = j[0].clone();
        let mut sum = xs[0].clone();
        let mut sorted_sum = j[0].clone();
        for k in 1..xs.len() {
            product = product.mul(&xs[k])?;
            sorted_product = sorted_product.mul(&j[k])?;
            sum = sum.add(&xs[k])?;
            sorted_sum = sorted_sum.add(&j[k])?;
        }
        prop_assert_eq!(product, sorted_product);
        prop_assert_eq!(sum, sorted_sum);
    }

    #[test]
    fn radical_elements_commute_with_lattice_operations(m in 2usize..=4, xs in tuple(2)) {
        let (x, y) = (xs[0].abs(), xs[1].abs());
        let (rx, ry) = (RadicalElement::of_element(m, &x)?, RadicalElement::of_element(m, &y)?);
        prop_assert_eq!(rx.join(&ry)?, RadicalElement::of_element(m, &x.join(&y)?)?);
        prop_assert_eq!(rx.meet(&ry)?, RadicalElement::of_element(m, &x.meet(&y)?)?);
    }

    #[test]
    fn urysohn_nets_verify(scale in (1i64..=20, 1i64..=5).prop_map(|(p, q)| Rational::new(p, q))) {
        let net = urysohn_witness_net(scale)?;
        prop_assert!(verify_certificate(&net, 30)?.passed);
    }

    /// An explicit certificate verifies iff every member lies within its
    /// dominator of the limit and the dominators decrease to zero.
    #[test]
    fn explicit_certificates_are_checked_pointwise(
        limit in element_in(Space::finite(3)),
        ys in prop::collection::vec(prop::collection::vec(nonneg_rational(), 3), 1..5),
        zs in prop::collection::vec(element_in(Space::finite(3)), 5),
        last_zero in any::<bool>(),
    ) {
        let mut ys: Vec<Element> = ys.into_iter().map(|v| Element::finite(v).unwrap()).collect();
        if last_zero {
            ys.push(Element::zero(Space::finite(3)));
        }
        let xs: Vec<Element> = ys.iter().zip(&zs).map(|(y, z)| limit.add(z).unwrap().meet(&limit.add(y).unwrap()).unwrap()).collect();
        let scan = xs.iter().zip(&ys).all(|(x, y)| x.sub(&limit).unwrap().abs().le(y).unwrap())
            && ys.windows(2).all(|w| w[1].le(&w[0]).unwrap())
            && ys.last().unwrap().is_zero();
        let cert = ConvergenceCertificate::new(Family::explicit(xs)?, limit.clone(), Family::explicit(ys)?);
        prop_assert_eq!(verify_certificate(&cert, 10)?.passed, scan);
    }

    #[test]
    fn json_round_trip(x in space().prop_flat_map(element_in)) {
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Element>(&text).unwrap(), x);
    }
}
