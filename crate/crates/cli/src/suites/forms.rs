use riesz_lab::forms::{
    atomic_partition, modulus_partition_oracle, norm_check, orthogonal_additivity_check, orthosymmetry_check,
    poly_lattice_ops, polarize, tensor_modulus, to_measure, to_poly, AdditivityMode, Form, Measure,
    OrthosymmetryMode, PolyLatticeOp, Polynomial, SymTensor, Verdict,
};
use riesz_lab::lattice::Element;
use riesz_lab::ordercont::{Functional, ProductFunctionalPolynomial};
use riesz_lab::random::Gen;
use riesz_lab::Rational;

use super::{Case, Ctx, Outcome, Property, Witness};
use crate::CliError;

fn seed(g: &mut Gen) -> u64 {
    g.below(1 << 31) as u64
}

fn finite(ctx: &Ctx) -> bool {
    ctx.space.is_finite()
}

fn form_of<'a>(c: &'a Case, property: &str) -> Result<(&'a Form, u64), CliError> {
    match c {
        Case::Form { form, seed } => Ok((form, *seed)),
        other => Err(other.mismatch(property)),
    }
}

fn poly_of<'a>(c: &'a Case, property: &str) -> Result<(&'a Polynomial, u64, &'a [Element]), CliError> {
    match c {
        Case::Polynomial { polynomial, seed, points } => Ok((polynomial, *seed, points)),
        other => Err(other.mismatch(property)),
    }
}

fn sampled_modes(m: usize) -> Vec<OrthosymmetryMode> {
    let mut modes = vec![OrthosymmetryMode::JIdentity, OrthosymmetryMode::DisjointPairs];
    if m == 2 {
        modes.push(OrthosymmetryMode::BilinearKusraev);
    }
    modes
}

/// Runs the sampled orthosymmetry modes; returns their verdicts and the
/// first counterexample found as a witness.
fn sampled_verdicts(ctx: &Ctx, form: &Form, seed: u64) -> Result<(Vec<Verdict>, Option<Witness>), CliError> {
    let mut verdicts = Vec::new();
    let mut witness = None;
    for (i, mode) in sampled_modes(form.degree()).into_iter().enumerate() {
        let v = orthosymmetry_check(form, mode, ctx.samples, seed.wrapping_add(i as u64))?;
        if witness.is_none() {
            if let Some(cex) = &v.counterexample {
                witness = Some(Witness::Orthosymmetry {
                    mode,
                    counterexample: cex.clone(),
                });
            }
        }
        verdicts.push(v);
    }
    Ok((verdicts, witness))
}

pub fn orthosymmetry() -> Vec<Property> {
    vec![
        Property::new(
            "mode-agreement",
            |ctx, g| Case::Form {
                form: Form::Sym(g.sym_tensor(ctx.n(), ctx.m)),
                seed: seed(g),
            },
            |ctx, c| {
                let (form, seed) = form_of(c, "mode-agreement")?;
                let decisive = orthosymmetry_check(form, OrthosymmetryMode::Diagonal, 0, seed)?;
                let (sampled, witness) = sampled_verdicts(ctx, form, seed)?;
                Ok(Outcome {
                    holds: sampled.iter().all(|v| v.passed == decisive.passed),
                    witness,
                })
            },
        ),
        Property::new(
            "diagonal-tensors-pass",
            |ctx, g| Case::Form {
                form: Form::Sym(g.diagonal_tensor(ctx.n(), ctx.m)),
                seed: seed(g),
            },
            |ctx, c| {
                let (form, seed) = form_of(c, "diagonal-tensors-pass")?;
                let (sampled, _) = sampled_verdicts(ctx, form, seed)?;
                Ok(Outcome::holds(
                    form.first_off_diagonal().is_none() && sampled.iter().all(|v| v.passed),
                ))
            },
        ),
        Property::new(
            "bilinear-symmetry",
            |ctx, g| Case::Form {
                form: Form::Matrix(g.matrix(ctx.n())),
                seed: seed(g),
            },
            |ctx, c| {
                let (form, seed) = form_of(c, "bilinear-symmetry")?;
                let Form::Matrix(a) = form else {
                    return Err(c.mismatch("bilinear-symmetry"));
                };
                let pairs = orthosymmetry_check(form, OrthosymmetryMode::DisjointPairs, ctx.samples, seed)?;
                let decisive = orthosymmetry_check(form, OrthosymmetryMode::Diagonal, 0, seed)?;
                let witness = pairs.counterexample.clone().map(|counterexample| Witness::Orthosymmetry {
                    mode: OrthosymmetryMode::DisjointPairs,
                    counterexample,
                });
                Ok(Outcome {
                    holds: (!pairs.passed || a.is_symmetric()) && pairs.passed == decisive.passed,
                    witness,
                })
            },
        )
        .when(|ctx| ctx.m == 2),
    ]
}

fn measure_poly(ctx: &Ctx, g: &mut Gen) -> Polynomial {
    Polynomial::measure(ctx.m, g.measure(ctx.space)).expect("m >= 1")
}

/// An orthogonally additive polynomial in either finite representation.
fn oa_poly(ctx: &Ctx, g: &mut Gen) -> Polynomial {
    if finite(ctx) && g.coin() {
        Polynomial::Tensor(g.diagonal_tensor(ctx.n(), ctx.m))
    } else {
        measure_poly(ctx, g)
    }
}

fn additivity_verdicts(ctx: &Ctx, p: &Polynomial, seed: u64) -> Result<(Vec<bool>, Option<Witness>), CliError> {
    let mut passed = Vec::new();
    let mut witness = None;
    for (i, mode) in AdditivityMode::ALL.into_iter().enumerate() {
        let v = orthogonal_additivity_check(p, mode, ctx.samples, seed.wrapping_add(i as u64))?;
        if witness.is_none() {
            if let Some(cex) = v.counterexample {
                witness = Some(Witness::Additivity {
                    mode,
                    counterexample: cex,
                });
            }
        }
        passed.push(v.passed);
    }
    Ok((passed, witness))
}

fn modulus_poly(p: &Polynomial) -> Result<Polynomial, CliError> {
    Ok(match p {
        Polynomial::Tensor(t) => Polynomial::Tensor(t.abs()),
        _ => poly_lattice_ops(PolyLatticeOp::Modulus, p, None)?,
    })
}

fn random_product(ctx: &Ctx, g: &mut Gen) -> ProductFunctionalPolynomial {
    let functional = |g: &mut Gen| match g.below(3) {
        0 => Functional::Coordinate(g.below(riesz_lab::random::OMEGA_HORIZON)),
        1 => Functional::Limit,
        _ => Functional::Measure(g.measure(ctx.space)),
    };
    let phi = functional(g);
    let psi = functional(g);
    ProductFunctionalPolynomial::new(ctx.m, phi, psi).expect("m >= 2 on omega")
}

/// `x = u + v` with `0 ≤ u, v`, dropping zero pieces.
fn split(x: &Element, g: &mut Gen) -> Vec<Element> {
    let u = x.meet(&g.nonneg_element(x.space())).expect("same space");
    let v = x.sub(&u).expect("same space");
    [u, v].into_iter().filter(|e| !e.is_zero()).collect()
}

fn scalar_prefactor(s: &Rational, t: &Rational) -> bool {
    let mut sum = Rational::zero();
    for e1 in [1i64, -1] {
        for e2 in [1i64, -1] {
            let (a, b) = (Rational::from_int(e1), Rational::from_int(e2));
            let inner = &(&a * s) + &(&b * t);
            sum = &sum + &(&(&a * &b) * &inner.pow(2));
        }
    }
    sum == &(&Rational::from_int(8) * s) * t
}

pub fn oa_characterisations() -> Vec<Property> {
    vec![
        Property::new(
            "measure-polynomials-pass-all-modes",
            |ctx, g| Case::Polynomial {
                polynomial: measure_poly(ctx, g),
                seed: seed(g),
                points: Vec::new(),
            },
            |ctx, c| {
                let (p, seed, _) = poly_of(c, "measure-polynomials-pass-all-modes")?;
                let (passed, witness) = additivity_verdicts(ctx, p, seed)?;
                Ok(Outcome {
                    holds: passed.iter().all(|&b| b),
                    witness,
                })
            },
        ),
        Property::new(
            "tensor-mode-agreement",
            |ctx, g| Case::Polynomial {
                polynomial: Polynomial::Tensor(g.sym_tensor(ctx.n(), ctx.m)),
                seed: seed(g),
                points: Vec::new(),
            },
            |ctx, c| {
                let (p, seed, _) = poly_of(c, "tensor-mode-agreement")?;
                let Polynomial::Tensor(t) = p else {
                    return Err(c.mismatch("tensor-mode-agreement"));
                };
                let (passed, witness) = additivity_verdicts(ctx, p, seed)?;
                Ok(Outcome {
                    holds: passed.iter().all(|&b| b == t.is_diagonal()),
                    witness,
                })
            },
        )
        .when(finite),
        Property::new(
            "positive-cone-suffices",
            |ctx, g| Case::Polynomial {
                polynomial: Polynomial::Tensor(g.sym_tensor(ctx.n(), ctx.m)),
                seed: seed(g),
                points: Vec::new(),
            },
            |ctx, c| {
                let (p, seed, _) = poly_of(c, "positive-cone-suffices")?;
                let cone = orthogonal_additivity_check(p, AdditivityMode::PositiveConeOnly, ctx.samples, seed)?;
                let full = orthogonal_additivity_check(p, AdditivityMode::DisjointAdditivity, ctx.samples, seed)?;
                let witness = cone.counterexample.clone().map(|counterexample| Witness::Additivity {
                    mode: AdditivityMode::PositiveConeOnly,
                    counterexample,
                });
                Ok(Outcome {
                    holds: cone.passed == full.passed,
                    witness,
                })
            },
        )
        .when(finite),
        Property::new(
            "band-property",
            |ctx, g| Case::Polynomial {
                polynomial: oa_poly(ctx, g),
                seed: seed(g),
                points: Vec::new(),
            },
            |ctx, c| {
                let (p, seed, _) = poly_of(c, "band-property")?;
                let abs = modulus_poly(p)?;
                let structural = match &abs {
                    Polynomial::Tensor(t) => t.is_diagonal(),
                    other => other.as_measure().is_some(),
                };
                let v = orthogonal_additivity_check(&abs, AdditivityMode::DisjointAdditivity, ctx.samples, seed)?;
                Ok(Outcome::holds(structural && v.passed))
            },
        ),
        Property::new(
            "polarisation-inversion",
            |ctx, g| {
                let polynomial = if g.coin() {
                    Polynomial::Tensor(g.sym_tensor(ctx.n(), ctx.m))
                } else {
                    measure_poly(ctx, g)
                };
                Case::Polynomial {
                    polynomial,
                    seed: 0,
                    points: g.elements(ctx.space, 20),
                }
            },
            |_, c| {
                let (p, _, points) = poly_of(c, "polarisation-inversion")?;
                let a = polarize(p)?;
                let mut ok = match p {
                    Polynomial::Tensor(t) => &a == t,
                    _ => true,
                };
                for x in points {
                    ok &= a.eval_diag(x)? == p.eval(x)?;
                }
                Ok(Outcome::holds(ok))
            },
        )
        .when(finite),
        Property::new(
            "polarisation-prefactor",
            |_, g| Case::Scalars {
                values: vec![g.rational(), g.rational()],
            },
            |_, c| match c {
                Case::Scalars { values } if values.len() == 2 => {
                    Ok(Outcome::holds(scalar_prefactor(&values[0], &values[1])))
                }
                other => Err(other.mismatch("polarisation-prefactor")),
            },
        ),
        Property::new(
            "homogeneity",
            |ctx, g| {
                let polynomial = match (finite(ctx), g.coin()) {
                    (true, true) => Polynomial::Tensor(g.sym_tensor(ctx.n(), ctx.m)),
                    (false, true) => Polynomial::Product(random_product(ctx, g)),
                    _ => measure_poly(ctx, g),
                };
                Case::Homogeneity {
                    polynomial,
                    point: g.element(ctx.space),
                    scale: g.rational(),
                }
            },
            |_, c| match c {
                Case::Homogeneity { polynomial, point, scale } => {
                    let lhs = polynomial.eval(&point.scale(scale))?;
                    let rhs = &scale.pow(polynomial.degree() as u32) * &polynomial.eval(point)?;
                    Ok(Outcome::holds(lhs == rhs))
                }
                other => Err(other.mismatch("homogeneity")),
            },
        ),
        Property::new(
            "modulus-partition",
            |ctx, g| {
                let args = g.nonneg_elements(ctx.space, ctx.m);
                let coarse = args.iter().map(|x| split(x, g)).collect();
                Case::Modulus {
                    tensor: g.sym_tensor(ctx.n(), ctx.m),
                    args,
                    coarse,
                }
            },
            |_, c| {
                let Case::Modulus { tensor, args, coarse } = c else {
                    return Err(c.mismatch("modulus-partition"));
                };
                let modulus = tensor_modulus(&Form::Sym(tensor.clone())).eval(args)?;
                let atomic = args.iter().map(atomic_partition).collect::<Result<Vec<_>, _>>()?;
                let refined = coarse
                    .iter()
                    .map(|pieces| -> Result<Vec<Element>, CliError> {
                        let mut out = Vec::new();
                        for u in pieces {
                            out.extend(atomic_partition(u)?);
                        }
                        Ok(out)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let at_atoms = modulus_partition_oracle(tensor, args, &atomic)?;
                let at_coarse = modulus_partition_oracle(tensor, args, coarse)?;
                let at_refined = modulus_partition_oracle(tensor, args, &refined)?;
                Ok(Outcome::holds(
                    at_atoms == modulus && at_refined == modulus && at_coarse <= at_refined,
                ))
            },
        )
        .when(finite),
    ]
}

fn measure_from(ctx: &Ctx, weights: &Element) -> Measure {
    let _ = ctx;
    Measure::from_weights(weights.values()).expect("nonempty")
}

fn measures_of<'a>(c: &'a Case, property: &str) -> Result<(&'a Measure, &'a Measure), CliError> {
    match c {
        Case::Measures { first, second } => Ok((first, second)),
        other => Err(other.mismatch(property)),
    }
}

pub fn isometry() -> Vec<Property> {
    let single = |ctx: &Ctx, g: &mut Gen| Case::Polynomial {
        polynomial: measure_poly(ctx, g),
        seed: 0,
        points: Vec::new(),
    };
    let single_from = |ctx: &Ctx, v: Vec<Element>| {
        Some(Case::Polynomial {
            polynomial: Polynomial::measure(ctx.m, measure_from(ctx, &v[0])).ok()?,
            seed: 0,
            points: Vec::new(),
        })
    };
    vec![
        Property::new("norms-equal", single, |_, c| {
            let (p, _, _) = poly_of(c, "norms-equal")?;
            let (regular, variation) = norm_check(p)?;
            Ok(Outcome::holds(regular == variation))
        })
        .exhaustive(1, single_from),
        Property::new(
            "lattice-operations-commute",
            |ctx, g| Case::Measures {
                first: g.measure(ctx.space),
                second: g.measure(ctx.space),
            },
            |ctx, c| {
                let (mu, nu) = measures_of(c, "lattice-operations-commute")?;
                let (p, q) = (to_poly(mu, ctx.m)?, to_poly(nu, ctx.m)?);
                let join = poly_lattice_ops(PolyLatticeOp::Join, &p, Some(&q))? == to_poly(&mu.join(nu)?, ctx.m)?;
                let meet = poly_lattice_ops(PolyLatticeOp::Meet, &p, Some(&q))? == to_poly(&mu.meet(nu)?, ctx.m)?;
                let modulus = poly_lattice_ops(PolyLatticeOp::Modulus, &p, None)? == to_poly(&mu.abs(), ctx.m)?;
                Ok(Outcome::holds(join && meet && modulus))
            },
        )
        .exhaustive(2, |ctx, v| {
            Some(Case::Measures {
                first: measure_from(ctx, &v[0]),
                second: measure_from(ctx, &v[1]),
            })
        }),
        Property::new("round-trip", single, |ctx, c| {
            let (p, _, _) = poly_of(c, "round-trip")?;
            let mu = p.as_measure().ok_or_else(|| c.mismatch("round-trip"))?;
            let mut ok = &to_measure(&to_poly(mu, ctx.m)?)? == mu;
            if let Some(n) = mu.space().size() {
                let weights: Vec<Rational> = (0..n).map(|t| mu.weight(t)).collect();
                let diag = Polynomial::Tensor(SymTensor::diagonal(ctx.m, &weights)?);
                ok &= &to_measure(&diag)? == mu;
            }
            Ok(Outcome::holds(ok))
        })
        .exhaustive(1, single_from),
    ]
}
