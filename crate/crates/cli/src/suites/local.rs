use std::collections::BTreeSet;

use riesz_lab::carriers::{carrier, local_carrier_check, local_carrier_disjointness, nakano_verify, null_ideal};
use riesz_lab::forms::{Measure, Polynomial};
use riesz_lab::lattice::{Element, PrincipalIdeal, Space};
use riesz_lab::localisation::{
    default_generators, local_disjointness, local_lattice_consistency, restrict, LocalObject,
};
use riesz_lab::random::Gen;
use riesz_lab::Rational;

use super::{Case, Ctx, Outcome, Property, Witness};
use crate::CliError;

fn local_of<'a>(
    c: &'a Case,
    property: &str,
) -> Result<(&'a LocalObject, &'a LocalObject, PrincipalIdeal, &'a [Element]), CliError> {
    match c {
        Case::Local {
            first,
            second,
            generator,
            points,
        } => Ok((first, second, PrincipalIdeal::new(generator.clone())?, points)),
        other => Err(other.mismatch(property)),
    }
}

fn measure_poly(ctx: &Ctx, mu: Measure) -> Polynomial {
    Polynomial::measure(ctx.m, mu).expect("m >= 1")
}

/// Two objects of one randomly chosen representation.
fn object_pair(ctx: &Ctx, g: &mut Gen) -> (LocalObject, LocalObject) {
    let n = ctx.n();
    let one = |g: &mut Gen, kind: usize| match kind {
        0 => LocalObject::Tensor(g.sym_tensor(n, ctx.m)),
        1 => LocalObject::Polynomial(Polynomial::Tensor(g.sym_tensor(n, ctx.m))),
        2 => LocalObject::Measure(g.measure(ctx.space)),
        _ => LocalObject::Polynomial(measure_poly(ctx, g.measure(ctx.space))),
    };
    let kind = g.below(4);
    (one(g, kind), one(g, kind))
}

fn mask_object(obj: &LocalObject, keep: &BTreeSet<usize>) -> LocalObject {
    match obj {
        LocalObject::Tensor(t) => LocalObject::Tensor(t.mask(keep)),
        LocalObject::Measure(mu) => LocalObject::Measure(mu.mask(keep, false)),
        LocalObject::Polynomial(Polynomial::Tensor(t)) => LocalObject::Polynomial(Polynomial::Tensor(t.mask(keep))),
        LocalObject::Polynomial(Polynomial::Measure { degree, measure }) => {
            LocalObject::Polynomial(Polynomial::measure(*degree, measure.mask(keep, false)).expect("degree kept"))
        }
        other => other.clone(),
    }
}

fn eval_object(obj: &LocalObject, x: &Element) -> Result<Rational, CliError> {
    Ok(match obj {
        LocalObject::Polynomial(p) => p.eval(x)?,
        LocalObject::Measure(mu) => mu.integrate(x)?,
        LocalObject::Tensor(t) => t.eval_diag(x)?,
    })
}

fn local_case(first: LocalObject, second: LocalObject, generator: Element, points: Vec<Element>) -> Case {
    Case::Local {
        first,
        second,
        generator,
        points,
    }
}

pub fn localisation() -> Vec<Property> {
    vec![
        Property::new(
            "lattice-identities",
            |ctx, g| {
                let (a, b) = object_pair(ctx, g);
                local_case(a, b, g.generator(ctx.space), Vec::new())
            },
            |_, c| {
                let (a, b, ideal, _) = local_of(c, "lattice-identities")?;
                Ok(Outcome::holds(local_lattice_consistency(a, b, &ideal)?.passed))
            },
        ),
        Property::new(
            "restriction-agrees",
            |ctx, g| {
                let (a, b) = object_pair(ctx, g);
                let generator = g.generator(ctx.space);
                let supp = generator.support_positions();
                let points = (0..10).map(|_| g.element(ctx.space).mask(&supp, false)).collect();
                local_case(a, b, generator, points)
            },
            |_, c| {
                let (obj, _, ideal, points) = local_of(c, "restriction-agrees")?;
                let r = restrict(obj, &ideal)?;
                let supp: Vec<usize> = ideal.support().into_iter().collect();
                let mut ok = true;
                for x in points {
                    let parent = eval_object(obj, x)?;
                    ok &= r.eval(x)? == parent;
                    if let Some(induced) = &r.induced {
                        let local = Element::finite(supp.iter().map(|&t| x.at(t).clone()).collect())?;
                        ok &= eval_object(induced, &local)? == parent;
                    }
                }
                Ok(Outcome::holds(ok))
            },
        ),
        Property::new(
            "functoriality",
            |ctx, g| {
                let (a, b) = object_pair(ctx, g);
                let outer = g.generator(ctx.space);
                let inner = outer.meet(&g.generator(ctx.space)).expect("same space");
                let inner = if inner.is_zero() { outer.clone() } else { inner };
                local_case(a, b, outer, vec![inner])
            },
            |_, c| {
                let (obj, _, outer, points) = local_of(c, "functoriality")?;
                let inner = PrincipalIdeal::new(points.first().ok_or_else(|| c.mismatch("functoriality"))?.clone())?;
                if !inner.generator().le(outer.generator())? {
                    return Err(c.mismatch("functoriality"));
                }
                let twice = restrict(&restrict(obj, &outer)?.masked, &inner)?.masked;
                Ok(Outcome::holds(twice == restrict(obj, &inner)?.masked))
            },
        ),
        Property::new(
            "positivity-reflected",
            |ctx, g| {
                let (a, b) = object_pair(ctx, g);
                let a = if g.coin() { a.abs().expect("supported kinds") } else { a };
                local_case(a, b, Element::one(ctx.space), Vec::new())
            },
            |ctx, c| {
                let (obj, _, _, _) = local_of(c, "positivity-reflected")?;
                let mut local = true;
                for a in default_generators(ctx.space, ctx.n()) {
                    let r = restrict(obj, &a)?;
                    local &= r.masked.is_nonnegative()?;
                    if let Some(i) = &r.induced {
                        local &= i.is_nonnegative()?;
                    }
                }
                Ok(Outcome::holds(obj.is_nonnegative()? == local))
            },
        ),
        Property::new(
            "disjointness-is-local",
            |ctx, g| {
                let (a, b) = object_pair(ctx, g);
                let (a, b) = if g.coin() {
                    let ((left, _), (right, _)) = g.complementary_masks(ctx.space);
                    (mask_object(&a, &left), mask_object(&b, &right))
                } else {
                    (a, b)
                };
                local_case(a, b, Element::one(ctx.space), Vec::new())
            },
            |ctx, c| {
                let (a, b, _, _) = local_of(c, "disjointness-is-local")?;
                let report = local_disjointness(a, b, &default_generators(ctx.space, ctx.n()))?;
                Ok(Outcome::holds(report.agrees))
            },
        ),
    ]
}

fn poly_points(c: &Case, property: &str) -> Result<(Polynomial, Vec<Element>), CliError> {
    match c {
        Case::Polynomial { polynomial, points, .. } => Ok((polynomial.clone(), points.clone())),
        other => Err(other.mismatch(property)),
    }
}

fn from_weights(ctx: &Ctx, v: &Element) -> Polynomial {
    measure_poly(ctx, Measure::from_weights(v.values()).expect("nonempty"))
}

/// A random element, half the time vanishing on the atoms of `mu`.
fn probe_point(space: Space, mu: &Measure, g: &mut Gen) -> Element {
    let x = g.element(space);
    if g.coin() {
        let horizon = space.size().unwrap_or(riesz_lab::random::OMEGA_HORIZON);
        let keep: BTreeSet<usize> = (0..horizon).filter(|t| !mu.support().contains(t)).collect();
        x.mask_within(&keep, horizon, mu.limit_atom().is_zero() || g.coin())
    } else {
        x
    }
}

pub fn carriers() -> Vec<Property> {
    let single = |ctx: &Ctx, g: &mut Gen| Case::Polynomial {
        polynomial: measure_poly(ctx, g.measure(ctx.space)),
        seed: 0,
        points: Vec::new(),
    };
    let single_from = |ctx: &Ctx, v: Vec<Element>| {
        Some(Case::Polynomial {
            polynomial: from_weights(ctx, &v[0]),
            seed: 0,
            points: Vec::new(),
        })
    };
    let pair = |ctx: &Ctx, g: &mut Gen| Case::Pair {
        p: measure_poly(ctx, g.measure(ctx.space)),
        q: measure_poly(ctx, g.measure(ctx.space)),
    };
    vec![
        Property::new(
            "null-ideal-membership",
            |ctx, g| {
                let mu = g.measure(ctx.space);
                let points = (0..10).map(|_| probe_point(ctx.space, &mu, g)).collect();
                Case::Polynomial {
                    polynomial: measure_poly(ctx, mu),
                    seed: 0,
                    points,
                }
            },
            |ctx, c| {
                let (p, points) = poly_points(c, "null-ideal-membership")?;
                let mu = p.as_measure().ok_or_else(|| c.mismatch("null-ideal-membership"))?;
                let abs = measure_poly(ctx, mu.abs());
                let n = null_ideal(&p)?;
                let mut ok = true;
                for x in &points {
                    ok &= n.contains(x)? == abs.eval(&x.abs())?.is_zero();
                }
                Ok(Outcome::holds(ok))
            },
        )
        .exhaustive(2, |ctx, v| {
            Some(Case::Polynomial {
                polynomial: from_weights(ctx, &v[0]),
                seed: 0,
                points: vec![v[1].clone()],
            })
        }),
        Property::new("carrier-and-null-ideal-split", single, |_, c| {
            let (p, _) = poly_points(c, "carrier-and-null-ideal-split")?;
            let mu = p.as_measure().ok_or_else(|| c.mismatch("carrier-and-null-ideal-split"))?;
            let carrier = carrier(&p)?.isolated_support;
            let null = null_ideal(&p)?;
            let ok = match (mu.space().size(), &null.support) {
                (Some(n), Some(support)) => {
                    carrier.is_disjoint(support) && carrier.union(support).count() == n
                }
                _ => {
                    carrier == mu.support()
                        && null.vanishes_on == carrier
                        && null.vanishes_at_limit == !mu.limit_atom().is_zero()
                }
            };
            Ok(Outcome::holds(ok))
        })
        .exhaustive(1, single_from),
        Property::new("modulus-invariance", single, |ctx, c| {
            let (p, _) = poly_points(c, "modulus-invariance")?;
            let mu = p.as_measure().ok_or_else(|| c.mismatch("modulus-invariance"))?;
            let abs = measure_poly(ctx, mu.abs());
            Ok(Outcome::holds(
                carrier(&abs)? == carrier(&p)? && null_ideal(&abs)? == null_ideal(&p)?,
            ))
        })
        .exhaustive(1, single_from),
        Property::new(
            "local-carrier-identities",
            |ctx, g| {
                let p = LocalObject::Polynomial(measure_poly(ctx, g.measure(ctx.space)));
                local_case(p.clone(), p, g.generator(ctx.space), Vec::new())
            },
            |_, c| {
                let (p, _, a, _) = local_of(c, "local-carrier-identities")?;
                let LocalObject::Polynomial(p) = p else {
                    return Err(c.mismatch("local-carrier-identities"));
                };
                Ok(Outcome::holds(local_carrier_check(p, &a)?.passed))
            },
        )
        .exhaustive(2, |ctx, v| {
            let a = v[1].abs();
            if a.is_zero() {
                return None;
            }
            let p = LocalObject::Polynomial(from_weights(ctx, &v[0]));
            Some(local_case(p.clone(), p, a, Vec::new()))
        }),
        Property::new("local-carrier-disjointness", pair, |_, c| match c {
            Case::Pair { p, q } => Ok(Outcome::holds(local_carrier_disjointness(p, q)?)),
            other => Err(other.mismatch("local-carrier-disjointness")),
        })
        .exhaustive(2, |ctx, v| {
            Some(Case::Pair {
                p: from_weights(ctx, &v[0]),
                q: from_weights(ctx, &v[1]),
            })
        }),
    ]
}

fn omega(ctx: &Ctx) -> bool {
    !ctx.space.is_finite()
}

/// The stored regression pair: both measures a unit limit atom.
pub fn double_limit_atom(m: usize) -> (Polynomial, Polynomial) {
    let mu = Measure::new(Space::OmegaPlusOne, Vec::new(), Rational::one()).expect("valid on omega");
    let p = Polynomial::measure(m, mu).expect("m >= 1");
    (p.clone(), p)
}

pub fn nakano() -> Vec<Property> {
    vec![
        Property::new(
            "equivalence-under-hypothesis",
            |ctx, g| {
                // on ω+1 the first measure is normal, so the hypothesis holds
                let mu = if ctx.space.is_finite() {
                    g.measure(ctx.space)
                } else {
                    g.normal_measure(ctx.space)
                };
                let nu = g.measure(ctx.space);
                let (mu, nu) = if g.coin() {
                    let ((left, lt), (right, rt)) = g.complementary_masks(ctx.space);
                    (mu.mask(&left, lt), nu.mask(&right, rt))
                } else {
                    (mu, nu)
                };
                Case::Pair {
                    p: measure_poly(ctx, mu),
                    q: measure_poly(ctx, nu),
                }
            },
            |_, c| match c {
                Case::Pair { p, q } => {
                    let r = nakano_verify(p, q)?;
                    Ok(Outcome::holds(r.hypothesis_met && r.equivalence_holds))
                }
                other => Err(other.mismatch("equivalence-under-hypothesis")),
            },
        )
        .exhaustive(2, |ctx, v| {
            Some(Case::Pair {
                p: from_weights(ctx, &v[0]),
                q: from_weights(ctx, &v[1]),
            })
        }),
        Property::new(
            "fails-without-hypothesis",
            |ctx, _| {
                let (p, q) = double_limit_atom(ctx.m);
                Case::Pair { p, q }
            },
            |_, c| match c {
                Case::Pair { p, q } => {
                    let report = nakano_verify(p, q)?;
                    let exhibited = !report.hypothesis_met
                        && !report.polys_disjoint
                        && report.carriers_disjoint
                        && !report.equivalence_holds;
                    Ok(Outcome {
                        holds: exhibited,
                        witness: exhibited.then_some(Witness::Nakano { report }),
                    })
                }
                other => Err(other.mismatch("fails-without-hypothesis")),
            },
        )
        .once()
        .when(omega),
    ]
}
