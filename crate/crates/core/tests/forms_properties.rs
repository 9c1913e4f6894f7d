mod common;

use common::*;
use proptest::prelude::*;
use riesz_lab::forms::{
    norm_check, orthogonal_additivity_check, orthosymmetry_check, poly_lattice_ops, polarize, to_measure, to_poly,
    AdditivityMode, Form, Measure, OrthosymmetryMode, PolyLatticeOp, Polynomial, SymTensor,
};
use riesz_lab::lattice::Space;
use riesz_lab::Rational;

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4, 2usize..=3)
}

fn is_diagonal_by_scan(t: &SymTensor) -> bool {
    t.entries().iter().all(|(k, v)| v.is_zero() || k.iter().all(|&i| i == k[0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagonal_tensors_are_orthosymmetric(t in shape().prop_flat_map(|(n, m)| diagonal_tensor(n, m)), seed in any::<u64>()) {
        let form = Form::Sym(t);
        for mode in [OrthosymmetryMode::Diagonal, OrthosymmetryMode::JIdentity, OrthosymmetryMode::DisjointPairs] {
            prop_assert!(orthosymmetry_check(&form, mode, 32, seed)?.passed, "{:?}", mode);
        }
    }

    #[test]
    fn sampled_orthosymmetry_agrees_with_coefficients(t in shape().prop_flat_map(|(n, m)| tensor(n, m)), seed in any::<u64>()) {
        let oracle = is_diagonal_by_scan(&t);
        let form = Form::Sym(t);
        prop_assert_eq!(orthosymmetry_check(&form, OrthosymmetryMode::Diagonal, 0, 0)?.passed, oracle);
        prop_assert_eq!(orthosymmetry_check(&form, OrthosymmetryMode::JIdentity, 64, seed)?.passed, oracle);
        prop_assert_eq!(orthosymmetry_check(&form, OrthosymmetryMode::DisjointPairs, 64, seed)?.passed, oracle);
    }

    #[test]
    fn additivity_modes_agree(t in shape().prop_flat_map(|(n, m)| tensor(n, m)), seed in any::<u64>()) {
        let oracle = is_diagonal_by_scan(&t);
        let p = Polynomial::Tensor(t);
        for mode in AdditivityMode::ALL {
            prop_assert_eq!(orthogonal_additivity_check(&p, mode, 48, seed)?.passed, oracle, "{}", mode.name());
        }
    }

    #[test]
    fn measure_polynomials_are_additive(mu in measure(), m in 2usize..=3, seed in any::<u64>()) {
        let p = Polynomial::measure(m, mu)?;
        for mode in AdditivityMode::ALL {
            prop_assert!(orthogonal_additivity_check(&p, mode, 24, seed)?.passed, "{}", mode.name());
        }
    }

    #[test]
    fn polarisation_inverts_the_diagonal(t in shape().prop_flat_map(|(n, m)| tensor(n, m))) {
        let p = Polynomial::Tensor(t.clone());
        prop_assert_eq!(polarize(&p)?, t);
    }

    #[test]
    fn homogeneity(
        (t, x) in shape().prop_flat_map(|(n, m)| (tensor(n, m), element_in(Space::finite(n)))),
        (mu, y) in space().prop_flat_map(|s| (measure_in(s), element_in(s))),
        m in 2usize..=4,
        l in rational(),
    ) {
        let p = Polynomial::Tensor(t);
        let deg = p.degree() as u32;
        prop_assert_eq!(p.eval(&x.scale(&l))?, &l.pow(deg) * &p.eval(&x)?);
        let q = Polynomial::measure(m, mu)?;
        prop_assert_eq!(q.eval(&y.scale(&l))?, &l.pow(m as u32) * &q.eval(&y)?);
    }

    #[test]
    fn isometry_and_lattice_operations((mu, nu) in space().prop_flat_map(|s| (measure_in(s), measure_in(s))), m in 2usize..=4) {
        let (p, q) = (to_poly(&mu, m)?, to_poly(&nu, m)?);
        let (regular, variation) = norm_check(&p)?;
        prop_assert_eq!(&regular, &variation);
        prop_assert_eq!(to_measure(&p)?, mu.clone());
        let join = poly_lattice_ops(PolyLatticeOp::Join, &p, Some(&q))?;
        prop_assert_eq!(join, to_poly(&mu.join(&nu)?, m)?);
        let meet = poly_lattice_ops(PolyLatticeOp::Meet, &p, Some(&q))?;
        prop_assert_eq!(meet, to_poly(&mu.meet(&nu)?, m)?);
    }

    #[test]
    fn isometry_on_generated_measures(mu in measure(), m in 2usize..=4) {
        let p = to_poly(&mu, m)?;
        let (regular, variation) = norm_check(&p)?;
        let oracle = mu.atoms().values().fold(mu.limit_atom().abs(), |acc, w| &acc + &w.abs());
        prop_assert_eq!(&regular, &oracle);
        prop_assert_eq!(&variation, &oracle);
    }

    #[test]
    fn diagonal_tensor_reads_back_as_measure(w in prop::collection::vec(rational(), 1..=5), m in 2usize..=3) {
        let p = Polynomial::Tensor(SymTensor::diagonal(m, &w)?);
        prop_assert_eq!(to_measure(&p)?, Measure::from_weights(&w)?);
    }

    #[test]
    fn json_round_trip(mu in measure(), t in shape().prop_flat_map(|(n, m)| tensor(n, m)), m in 2usize..=3) {
        let text = serde_json::to_string(&mu).unwrap();
        prop_assert_eq!(serde_json::from_str::<Measure>(&text).unwrap(), mu.clone());
        let text = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<SymTensor>(&text).unwrap(), t.clone());
        for p in [Polynomial::measure(m, mu)?, Polynomial::Tensor(t)] {
            let text = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<Polynomial>(&text).unwrap(), p);
        }
    }
}

#[test]
fn prefactor_is_eight() {
    let (s, t) = (Rational::new(3, 7), Rational::new(-5, 2));
    let mut sum = Rational::zero();
    for e1 in [-1i64, 1] {
        for e2 in [-1i64, 1] {
            let x = &(&Rational::from_int(e1) * &s) + &(&Rational::from_int(e2) * &t);
            sum = &sum + &(&Rational::from_int(e1 * e2) * &x.pow(2));
        }
    }
    assert_eq!(sum, &Rational::from_int(8) * &(&s * &t));
}
