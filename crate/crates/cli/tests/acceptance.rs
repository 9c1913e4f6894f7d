//! Acceptance criteria 1–9. Runs without the libtest harness so that every
//! criterion prints its PASS/FAIL line; exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use riesz_lab::carriers::{local_carrier_check, nakano_verify};
use riesz_lab::forms::{
    atomic_partition, modulus_partition_oracle, norm_check, orthogonal_additivity_check, orthosymmetry_check,
    poly_lattice_ops, polarize, reverify_additivity, reverify_orthosymmetry, to_poly, AdditivityMode, Form,
    Measure, OrthosymmetryMode, PolyLatticeOp, Polynomial, SymTensor,
};
use riesz_lab::lattice::{Element, PrincipalIdeal, Space};
use riesz_lab::localisation::{
    default_generators, local_disjointness, local_lattice_consistency, restrict, LocalObject,
};
use riesz_lab::ordercont::{
    discontinuity_witness, urysohn_witness_net, zero_order_continuity_probe, Functional,
    ProductFunctionalPolynomial,
};
use riesz_lab::random::Gen;
use riesz_lab::{Error, Rational};
use riesz_lab_cli::report::load_reports;
use riesz_lab_cli::{command_suite, emit, reverify_report, Format, SuiteConfig, SuiteName, Trials};

type Verdict = Result<String, String>;

const OMEGA: Space = Space::OmegaPlusOne;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cell_seed(tag: u64, m: usize, n: usize) -> u64 {
    tag * 1_000_003 + (m as u64) * 101 + n as u64
}

/// Oracle: a tensor is diagonal iff every stored key repeats one index.
fn diagonal_by_scan(t: &SymTensor) -> bool {
    t.entries().iter().all(|(k, v)| v.is_zero() || k.iter().all(|&i| i == k[0]))
}

fn c1_orthosymmetry() -> Verdict {
    const TENSORS: u64 = 1000;
    const TUPLES: usize = 500;
    let start = Instant::now();
    let (mut diag, mut off) = (0, 0);
    for m in 2..=4 {
        for n in 2..=5 {
            let seed = cell_seed(1, m, n);
            for i in 0..TENSORS {
                let t = Gen::for_trial(seed, i).sym_tensor(n, m);
                let oracle = diagonal_by_scan(&t);
                let form = Form::Sym(t);
                let decisive = core(orthosymmetry_check(&form, OrthosymmetryMode::Diagonal, 0, 0))?;
                let sampled = core(orthosymmetry_check(&form, OrthosymmetryMode::JIdentity, TUPLES, seed ^ i))?;
                ensure(decisive.passed == oracle && sampled.passed == oracle, || {
                    format!("m={m} n={n} tensor {i}: oracle {oracle}, diagonal {}, J {}", decisive.passed, sampled.passed)
                })?;
                if let Some(cex) = &sampled.counterexample {
                    ensure(core(reverify_orthosymmetry(&form, OrthosymmetryMode::JIdentity, cex))?, || {
                        format!("m={m} n={n} tensor {i}: J counterexample does not re-verify")
                    })?;
                }
                if oracle {
                    diag += 1;
                } else {
                    off += 1;
                }
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || format!("took {took:.1?}"))?;
    Ok(format!("12 cells x {TENSORS} tensors ({diag} diagonal, {off} not), {TUPLES} tuples, {took:.1?}"))
}

fn c2_additivity() -> Verdict {
    const PER_KIND: u64 = 500;
    const SAMPLES: usize = 64;
    let mut checks = 0usize;
    for m in 2..=4 {
        for n in 2..=5 {
            let space = Space::finite(n);
            let seed = cell_seed(2, m, n);
            for i in 0..2 * PER_KIND {
                let mut g = Gen::for_trial(seed, i);
                let (p, oracle) = if i < PER_KIND {
                    (core(Polynomial::measure(m, g.measure(space)))?, true)
                } else {
                    let t = g.sym_tensor(n, m);
                    let d = diagonal_by_scan(&t);
                    (Polynomial::Tensor(t), d)
                };
                for mode in AdditivityMode::ALL {
                    let v = core(orthogonal_additivity_check(&p, mode, SAMPLES, seed ^ i))?;
                    ensure(v.passed == oracle, || {
                        format!("m={m} n={n} poly {i} mode {}: expected {oracle}, got {}", mode.name(), v.passed)
                    })?;
                    if let Some(cex) = &v.counterexample {
                        ensure(core(reverify_additivity(&p, mode, cex))?, || {
                            format!("m={m} n={n} poly {i} mode {}: counterexample does not re-verify", mode.name())
                        })?;
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} mode verdicts over 12 cells"))
}

/// `Σ_{ε1,ε2=±1} ε1 ε2 (ε1 s + ε2 t)²` as coefficients of `s^i t^j`.
fn prefactor_coefficients() -> BTreeMap<(u32, u32), i64> {
    let mut out = BTreeMap::new();
    for e1 in [-1i64, 1] {
        for e2 in [-1i64, 1] {
            // (e1 s + e2 t)² = s² + 2 e1 e2 st + t²
            for ((i, j), c) in [((2, 0), e1 * e1), ((1, 1), 2 * e1 * e2), ((0, 2), e2 * e2)] {
                *out.entry((i, j)).or_insert(0) += e1 * e2 * c;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn c3_polarisation() -> Verdict {
    const TENSORS: u64 = 200;
    for m in 2..=3 {
        for n in 1..=5 {
            let space = Space::finite(n);
            let seed = cell_seed(3, m, n);
            for i in 0..TENSORS {
                let mut g = Gen::for_trial(seed, i);
                let t = g.sym_tensor(n, m);
                let p = Polynomial::Tensor(t.clone());
                let a = core(polarize(&p))?;
                ensure(a == t, || format!("m={m} n={n} tensor {i}: polarize does not return the generator"))?;
                for _ in 0..5 {
                    let x = g.element(space);
                    ensure(core(a.eval_diag(&x))? == core(p.eval(&x))?, || {
                        format!("m={m} n={n} tensor {i}: diagonal restriction differs at {x:?}")
                    })?;
                }
            }
        }
    }
    let symbolic = prefactor_coefficients();
    ensure(symbolic == BTreeMap::from([((1, 1), 8)]), || format!("expanded sum is {symbolic:?}"))?;
    let mut g = Gen::new(3);
    for k in 0..100 {
        let (s, t) = (g.rational(), g.rational());
        let mut sum = Rational::zero();
        for e1 in [-1i64, 1] {
            for e2 in [-1i64, 1] {
                let inner = &(&Rational::from_int(e1) * &s) + &(&Rational::from_int(e2) * &t);
                sum = &sum + &(&Rational::from_int(e1 * e2) * &inner.pow(2));
            }
        }
        ensure(sum == &Rational::from_int(8) * &(&s * &t), || format!("pair {k}: ({s}, {t}) gives {sum}"))?;
    }
    Ok("10 cells x 200 tensors; prefactor 8st symbolically and at 100 pairs".into())
}

fn variation_oracle(mu: &Measure) -> Rational {
    mu.atoms().values().fold(mu.limit_atom().abs(), |acc, w| &acc + &w.abs())
}

fn c4_isometry() -> Verdict {
    const MEASURES: u64 = 1000;
    for space in [Space::finite(4), OMEGA] {
        for i in 0..MEASURES {
            let mut g = Gen::for_trial(4, i);
            let m = 2 + g.below(3);
            let (mu, nu) = (g.measure(space), g.measure(space));
            let (p, q) = (core(to_poly(&mu, m))?, core(to_poly(&nu, m))?);
            let (regular, variation) = core(norm_check(&p))?;
            let oracle = variation_oracle(&mu);
            ensure(regular == oracle && variation == oracle, || {
                format!("{space} measure {i}: regular {regular}, variation {variation}, oracle {oracle}")
            })?;
            for (op, pick) in [
                (PolyLatticeOp::Join, Rational::max_of as fn(&Rational, &Rational) -> Rational),
                (PolyLatticeOp::Meet, Rational::min_of),
            ] {
                let got = core(poly_lattice_ops(op, &p, Some(&q)))?;
                let got = got.as_measure().ok_or("lattice op left the measure kind")?;
                let points: BTreeSet<usize> = mu.support().union(&nu.support()).copied().collect();
                let atomwise = points.iter().all(|&t| got.weight(t) == pick(&mu.weight(t), &nu.weight(t)))
                    && got.support().is_subset(&points)
                    && *got.limit_atom() == pick(mu.limit_atom(), nu.limit_atom());
                ensure(atomwise, || format!("{space} pair {i}: {op:?} is not atomwise"))?;
            }
            let modulus = core(poly_lattice_ops(PolyLatticeOp::Modulus, &p, None))?;
            ensure(modulus == core(to_poly(&mu.abs(), m))?, || format!("{space} measure {i}: modulus"))?;
        }
    }
    Ok(format!("{MEASURES} measures on finite(4) and on omega+1"))
}

/// `Σ over all index tuples of |A[i_1..i_m]| x_1(i_1) ⋯ x_m(i_m)`.
fn modulus_brute_force(t: &SymTensor, args: &[Element]) -> Result<Rational, String> {
    let (n, m) = (t.n(), t.degree());
    let mut total = Rational::zero();
    for flat in 0..n.pow(m as u32) {
        let idx: Vec<usize> = (0..m).map(|k| flat / n.pow(k as u32) % n).collect();
        let mut term = core(t.get(&idx))?.abs();
        for (x, &i) in args.iter().zip(&idx) {
            term = &term * x.at(i);
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Merges consecutive atoms of `x` in random runs.
fn coarsen(x: &Element, g: &mut Gen) -> Result<Vec<Element>, String> {
    let atoms = core(atomic_partition(x))?;
    let mut out: Vec<Element> = Vec::new();
    for a in atoms {
        match out.last_mut() {
            Some(last) if g.coin() => *last = core(last.add(&a))?,
            _ => out.push(a),
        }
    }
    Ok(out)
}

fn c5_modulus() -> Verdict {
    const CASES: u64 = 100;
    for m in 2..=3 {
        for n in 1..=4 {
            let space = Space::finite(n);
            let seed = cell_seed(5, m, n);
            for i in 0..CASES {
                let mut g = Gen::for_trial(seed, i);
                let t = g.sym_tensor(n, m);
                let args = g.nonneg_elements(space, m);
                let oracle = modulus_brute_force(&t, &args)?;
                let atomic = args.iter().map(atomic_partition).collect::<Result<Vec<_>, _>>();
                let atomic = core(atomic)?;
                let coarse = args.iter().map(|x| coarsen(x, &mut g)).collect::<Result<Vec<_>, _>>()?;
                let at_atoms = core(modulus_partition_oracle(&t, &args, &atomic))?;
                let at_coarse = core(modulus_partition_oracle(&t, &args, &coarse))?;
                ensure(at_atoms == oracle, || format!("m={m} n={n} case {i}: atomic {at_atoms}, oracle {oracle}"))?;
                ensure(at_coarse <= at_atoms, || format!("m={m} n={n} case {i}: coarse {at_coarse} > {at_atoms}"))?;
            }
        }
    }
    Ok("8 cells x 100 cases".into())
}

fn random_object(g: &mut Gen, kind: usize, n: usize, m: usize) -> Result<LocalObject, String> {
    let space = Space::finite(n);
    Ok(match kind {
        0 => LocalObject::Polynomial(core(Polynomial::measure(m, g.measure(space)))?),
        1 => LocalObject::Polynomial(Polynomial::Tensor(g.sym_tensor(n, m))),
        2 => LocalObject::Tensor(g.sym_tensor(n, m)),
        _ => LocalObject::Measure(g.measure(space)),
    })
}

fn eval_object(obj: &LocalObject, x: &Element) -> Result<Rational, String> {
    core(match obj {
        LocalObject::Polynomial(p) => p.eval(x),
        LocalObject::Tensor(t) => t.eval_diag(x),
        LocalObject::Measure(mu) => mu.integrate(x),
    })
}

fn compress(x: &Element, keep: &BTreeSet<usize>) -> Result<Element, String> {
    core(Element::finite(keep.iter().map(|&t| x.at(t).clone()).collect()))
}

fn c6_localisation() -> Verdict {
    const PAIRS: u64 = 500;
    for i in 0..PAIRS {
        let mut g = Gen::for_trial(6, i);
        let n = 1 + (i as usize % 5);
        let m = 2 + g.below(2);
        let space = Space::finite(n);
        let kind = g.below(4);
        let obj = random_object(&mut g, kind, n, m)?;
        let other = random_object(&mut g, kind, n, m)?;
        let a = g.generator(space);
        let supp = a.support_positions();
        let ideal = core(PrincipalIdeal::new(a))?;
        let r = core(restrict(&obj, &ideal))?;
        let induced = r.induced.as_ref().ok_or("finite restriction without induced object")?;
        for _ in 0..5 {
            let x = g.element(space);
            let xa = x.mask(&supp, false);
            let parent = eval_object(&obj, &xa)?;
            ensure(core(r.eval(&xa))? == parent, || format!("pair {i}: restricted value differs"))?;
            ensure(eval_object(&r.masked, &x)? == parent, || format!("pair {i}: masked value differs"))?;
            ensure(eval_object(induced, &compress(&x, &supp)?)? == parent, || {
                format!("pair {i}: induced value differs")
            })?;
            if xa != x {
                ensure(matches!(r.eval(&x), Err(Error::NotInIdeal)), || {
                    format!("pair {i}: evaluated outside the ideal")
                })?;
            }
        }
        ensure(core(local_lattice_consistency(&obj, &other, &ideal))?.passed, || {
            format!("pair {i}: lattice operations do not localise")
        })?;
        let gens = default_generators(space, n);
        let positive = core(obj.is_nonnegative())?;
        let mut local_positive = true;
        for b in &gens {
            local_positive &= core(core(restrict(&obj, b))?.masked.is_nonnegative())?;
        }
        ensure(positive == local_positive, || format!("pair {i}: positivity is not local"))?;
        let other = if g.coin() {
            let ((keep, _), _) = g.complementary_masks(space);
            match (&obj, &other) {
                (_, LocalObject::Measure(nu)) => LocalObject::Measure(nu.mask(&keep, false)),
                _ => other,
            }
        } else {
            other
        };
        ensure(core(local_disjointness(&obj, &other, &gens))?.agrees, || {
            format!("pair {i}: disjointness is not local")
        })?;
        if let LocalObject::Polynomial(p @ Polynomial::Measure { measure: mu, .. }) = &obj {
            ensure(core(local_carrier_check(p, &ideal))?.passed, || format!("pair {i}: local carrier"))?;
            let restricted = r.masked.clone();
            let LocalObject::Polynomial(q) = restricted else {
                return Err(format!("pair {i}: restriction changed kind"));
            };
            let local_support = q.as_measure().ok_or("restriction is not a measure")?.support();
            let oracle: BTreeSet<usize> = mu.support().intersection(&supp).copied().collect();
            ensure(local_support == oracle, || format!("pair {i}: carrier of restriction"))?;
        }
    }
    Ok(format!("{PAIRS} pairs over finite(1..5)"))
}

fn probe_passes(p: &Polynomial) -> Result<bool, String> {
    let net = core(urysohn_witness_net(Rational::one()))?;
    Ok(core(zero_order_continuity_probe(p, &[net], 50))?.passed)
}

fn c7_order_continuity() -> Verdict {
    let start = Instant::now();
    let mut measures: Vec<Measure> = (0..1000).map(|i| Gen::for_trial(7, i).measure(OMEGA)).collect();
    measures.push(core(Measure::new(OMEGA, Vec::new(), Rational::one()))?);
    measures.push(core(Measure::new(OMEGA, vec![(0, Rational::one())], Rational::zero()))?);
    measures.push(Measure::zero(OMEGA));
    let (mut normal, mut singular) = (0, 0);
    for (i, mu) in measures.iter().enumerate() {
        let m = 2 + i % 3;
        let verdict = probe_passes(&core(Polynomial::measure(m, mu.clone()))?)?;
        let oracle = mu.limit_atom().is_zero();
        ensure(verdict == oracle, || format!("measure {i}: probe {verdict}, limit atom zero {oracle}"))?;
        if oracle {
            normal += 1;
        } else {
            singular += 1;
        }
    }
    for m in 2..=4 {
        let p = core(ProductFunctionalPolynomial::new(m, Functional::Coordinate(0), Functional::Limit))?;
        ensure(probe_passes(&Polynomial::Product(p.clone()))?, || format!("m={m}: zero probe fails"))?;
        let w = core(discontinuity_witness(&p, 50))?;
        ensure(core(w.reverify(&p))?, || format!("m={m}: witness does not re-verify"))?;
        ensure(w.gap == Rational::one(), || format!("m={m}: gap {}", w.gap))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:.1?}"))?;
    Ok(format!("{normal} normal and {singular} singular measures; gap 1 for m=2,3,4; {took:.1?}"))
}

fn disjoint_oracle(mu: &Measure, nu: &Measure) -> (bool, bool) {
    let points: BTreeSet<usize> = mu.support().union(&nu.support()).copied().collect();
    let polys = points.iter().all(|&t| mu.weight(t).is_zero() || nu.weight(t).is_zero())
        && (mu.limit_atom().is_zero() || nu.limit_atom().is_zero());
    let carriers = mu.support().is_disjoint(&nu.support());
    (polys, carriers)
}

fn weights(n: usize, mut index: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let w = (index % 3) as i64 - 1;
            index /= 3;
            Rational::from_int(w)
        })
        .collect()
}

fn c8_nakano() -> Verdict {
    let mut pairs = 0usize;
    for m in 2..=3 {
        for n in 1..=4 {
            let count = 3usize.pow(n as u32);
            for i in 0..count {
                for j in 0..count {
                    let mu = core(Measure::from_weights(&weights(n, i)))?;
                    let nu = core(Measure::from_weights(&weights(n, j)))?;
                    let r = core(nakano_verify(&core(to_poly(&mu, m))?, &core(to_poly(&nu, m))?))?;
                    let (polys, carriers) = disjoint_oracle(&mu, &nu);
                    ensure(r.polys_disjoint == polys && r.carriers_disjoint == carriers, || {
                        format!("m={m} n={n} pair ({i},{j}): report disagrees with the oracle")
                    })?;
                    ensure(r.hypothesis_met && r.equivalence_holds, || format!("m={m} n={n} pair ({i},{j})"))?;
                    pairs += 1;
                }
            }
        }
    }
    for n in 1..=4 {
        let config = SuiteConfig {
            space: Space::finite(n),
            trials: Trials::Exhaustive,
            ..SuiteConfig::single(SuiteName::Nakano)
        };
        let reports = command_suite(&config).map_err(|e| e.to_string())?;
        ensure(reports.iter().all(|r| r.passed), || format!("exhaustive nakano suite fails on finite({n})"))?;
    }
    for i in 0..1000 {
        let mut g = Gen::for_trial(8, i);
        let m = 2 + g.below(2);
        let mut mu = g.normal_measure(OMEGA);
        let mut nu = g.measure(OMEGA);
        if g.coin() {
            let ((keep, _), (rest, _)) = g.complementary_masks(OMEGA);
            mu = mu.mask(&keep, false);
            nu = nu.mask(&rest, true);
        }
        if g.coin() {
            std::mem::swap(&mut mu, &mut nu);
        }
        let r = core(nakano_verify(&core(to_poly(&mu, m))?, &core(to_poly(&nu, m))?))?;
        let (polys, carriers) = disjoint_oracle(&mu, &nu);
        ensure(r.polys_disjoint == polys && r.carriers_disjoint == carriers, || {
            format!("omega pair {i}: report disagrees with the oracle")
        })?;
        ensure(r.hypothesis_met && r.equivalence_holds, || format!("omega pair {i}: equivalence fails"))?;
    }
    let single = core(Measure::new(OMEGA, Vec::new(), Rational::one()))?;
    let p = core(to_poly(&single, 2))?;
    let r = core(nakano_verify(&p, &p))?;
    ensure(
        !r.hypothesis_met && !r.polys_disjoint && r.carriers_disjoint && !r.equivalence_holds,
        || format!("regression pair: {r:?}"),
    )?;
    Ok(format!("{pairs} exhaustive pairs, 1000 omega pairs, regression pair fails as expected"))
}

fn suite_configs() -> Vec<SuiteConfig> {
    let finite = SuiteConfig {
        suites: SuiteName::ALL.into_iter().filter(|s| !s.needs_omega()).collect(),
        m: 3,
        trials: Trials::Count(40),
        seed: 11,
        ..SuiteConfig::default()
    };
    let omega = SuiteConfig {
        suites: vec![
            SuiteName::OrderContinuity,
            SuiteName::Counterexample,
            SuiteName::Nakano,
            SuiteName::Carriers,
        ],
        space: OMEGA,
        trials: Trials::Count(40),
        seed: 11,
        ..SuiteConfig::default()
    };
    vec![finite, omega]
}

fn c9_determinism() -> Verdict {
    let mut witnesses = 0;
    for config in suite_configs() {
        let first = emit(&command_suite(&config).map_err(|e| e.to_string())?, Format::Json).map_err(|e| e.to_string())?;
        let second = emit(&command_suite(&config).map_err(|e| e.to_string())?, Format::Json).map_err(|e| e.to_string())?;
        ensure(first == second, || "two runs differ".into())?;
        let reloaded = load_reports(&first).map_err(|e| e.to_string())?;
        let again = emit(&reloaded, Format::Json).map_err(|e| e.to_string())?;
        ensure(again == first, || "reload does not round-trip".into())?;
        for r in &reloaded {
            witnesses += reverify_report(r).map_err(|e| format!("{}: {e}", r.suite))?;
        }
    }
    ensure(witnesses > 0, || "no counterexample was emitted".into())?;
    let bin = env!("CARGO_BIN_EXE_riesz-lab");
    let run = || {
        Command::new(bin)
            .args(["check", "--suite", "orthosymmetry,carriers", "--m", "3", "--n", "4", "--trials", "30", "--format", "json"])
            .env("RIESZ_LAB_SEED", "5")
            .output()
    };
    let (a, b) = (run().map_err(|e| e.to_string())?, run().map_err(|e| e.to_string())?);
    ensure(a.status.success() && a.stdout == b.stdout, || "binary output is not reproducible".into())?;
    for r in load_reports(&a.stdout).map_err(|e| e.to_string())? {
        witnesses += reverify_report(&r).map_err(|e| e.to_string())?;
    }
    Ok(format!("byte-identical reports; {witnesses} stored counterexamples re-verified"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("orthosymmetry equivalence", c1_orthosymmetry),
        ("orthogonal additivity equivalence", c2_additivity),
        ("polarisation round trip", c3_polarisation),
        ("isometry", c4_isometry),
        ("modulus", c5_modulus),
        ("localisation", c6_localisation),
        ("order continuity dichotomy", c7_order_continuity),
        ("nakano", c8_nakano),
        ("cli determinism", c9_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", k + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id.ends_with(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {id} {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name}: {why} [{:.1?}]", start.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
