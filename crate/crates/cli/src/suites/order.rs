use riesz_lab::forms::{Measure, Polynomial};
use riesz_lab::lattice::{verify_certificate, ConvergenceCertificate, Element, Family, Sign, Space};
use riesz_lab::ordercont::{
    discontinuity_witness, is_normal_measure, power_net_dominator, urysohn_witness_net, zero_order_continuity_probe,
    Functional, ProductFunctionalPolynomial,
};
use riesz_lab::random::{Gen, OMEGA_HORIZON};
use riesz_lab::{Error, Rational};

use super::{Case, Outcome, Property, Witness};
use crate::CliError;

const OMEGA: Space = Space::OmegaPlusOne;

fn product_of<'a>(c: &'a Case, property: &str) -> Result<&'a ProductFunctionalPolynomial, CliError> {
    match c {
        Case::Product { polynomial } => Ok(polynomial),
        other => Err(other.mismatch(property)),
    }
}

fn net_of<'a>(c: &'a Case, property: &str) -> Result<(&'a ConvergenceCertificate, &'a Rational), CliError> {
    match c {
        Case::Net { certificate, bound } => Ok((certificate, bound)),
        other => Err(other.mismatch(property)),
    }
}

fn passes_zero_probe(p: Polynomial, depth: usize) -> Result<bool, CliError> {
    let net = urysohn_witness_net(Rational::one())?;
    Ok(zero_order_continuity_probe(&p, &[net], depth)?.passed)
}

/// Clamps `z` into `[−y, y]`.
fn clamp(z: &Element, y: &Element) -> Element {
    z.meet(y).and_then(|v| v.join(&y.neg())).expect("same space")
}

/// A pointwise scan of an explicit certificate, independent of the verifier.
fn scan_explicit(c: &ConvergenceCertificate) -> Result<bool, CliError> {
    let (Family::Explicit { members: xs }, Family::Explicit { members: ys }) = (&c.sequence, &c.dominator) else {
        return Ok(false);
    };
    let horizon = xs.iter().chain(ys).map(Element::horizon).max().unwrap_or(0) + 1;
    let len = xs.len().max(ys.len());
    let at = |v: &[Element], n: usize| v[n.min(v.len() - 1)].clone();
    for n in 0..len {
        let (x, y) = (at(xs, n), at(ys, n));
        for i in 0..horizon {
            if (x.at(i) - c.limit.at(i)).abs() > *y.at(i) {
                return Ok(false);
            }
            if n > 0 && y.at(i) > at(ys, n - 1).at(i) {
                return Ok(false);
            }
        }
        if (x.tail() - c.limit.tail()).abs() > *y.tail() || (n > 0 && y.tail() > at(ys, n - 1).tail()) {
            return Ok(false);
        }
    }
    // repeating the last dominator forever, its infimum is itself
    let last = &ys[ys.len() - 1];
    Ok((0..horizon).all(|i| last.at(i).is_zero()) && last.tail().is_zero())
}

fn explicit_certificate(g: &mut Gen) -> ConvergenceCertificate {
    let limit = g.element(OMEGA);
    let len = 2 + g.below(4);
    let mut ys = vec![g.nonneg_element(OMEGA)];
    for _ in 1..len - 1 {
        let next = ys[ys.len() - 1].meet(&g.nonneg_element(OMEGA)).expect("same space");
        ys.push(next);
    }
    ys.push(Element::zero(OMEGA));
    let mut xs: Vec<Element> = ys
        .iter()
        .map(|y| limit.add(&clamp(&g.element(OMEGA), y)).expect("same space"))
        .collect();
    if g.below(4) == 0 {
        let k = g.below(len);
        xs[k] = xs[k].add(&g.element(OMEGA)).expect("same space");
    }
    ConvergenceCertificate::new(
        Family::explicit(xs).expect("nonempty"),
        limit,
        Family::explicit(ys).expect("nonempty"),
    )
}

pub fn order_continuity() -> Vec<Property> {
    vec![
        Property::new(
            "dichotomy",
            |ctx, g| Case::MeasureNet {
                polynomial: Polynomial::measure(ctx.m, g.measure(OMEGA)).expect("m >= 1"),
                scale: g.positive_rational(),
            },
            |ctx, c| {
                let Case::MeasureNet { polynomial, scale } = c else {
                    return Err(c.mismatch("dichotomy"));
                };
                let mu = polynomial.as_measure().ok_or_else(|| c.mismatch("dichotomy"))?;
                let net = urysohn_witness_net(scale.clone())?;
                let probe = zero_order_continuity_probe(polynomial, &[net], ctx.depth)?;
                Ok(Outcome::holds(probe.passed == is_normal_measure(&mu.abs())))
            },
        ),
        Property::new(
            "power-dominator-verifies",
            |_, g| {
                let scale = g.positive_rational();
                if g.coin() {
                    Case::Net {
                        certificate: urysohn_witness_net(scale.clone()).expect("positive scale"),
                        bound: scale,
                    }
                } else {
                    let base = g.element(OMEGA);
                    let bound = &base.sup_norm() + &scale;
                    let sign = if g.coin() { Sign::Plus } else { Sign::Minus };
                    let certificate = ConvergenceCertificate::new(
                        Family::Affine {
                            base: base.clone(),
                            sign,
                            scale: scale.clone(),
                        },
                        base,
                        Family::tail_indicator(scale),
                    );
                    Case::Net { certificate, bound }
                }
            },
            |ctx, c| {
                let (cert, bound) = net_of(c, "power-dominator-verifies")?;
                if !verify_certificate(cert, ctx.depth)?.passed {
                    return Ok(Outcome::holds(true));
                }
                let lifted = power_net_dominator(cert, ctx.m, bound)?;
                Ok(Outcome::holds(verify_certificate(&lifted, ctx.depth)?.passed))
            },
        ),
        Property::new(
            "certificate-soundness",
            |_, g| Case::Net {
                certificate: explicit_certificate(g),
                bound: Rational::zero(),
            },
            |ctx, c| {
                let (cert, _) = net_of(c, "certificate-soundness")?;
                let verdict = verify_certificate(cert, ctx.depth)?;
                Ok(Outcome::holds(verdict.passed == scan_explicit(cert)?))
            },
        ),
        Property::new(
            "continuous-at-zero-not-at-unit",
            |ctx, g| Case::Product {
                polynomial: ProductFunctionalPolynomial::new(
                    ctx.m,
                    Functional::Coordinate(g.below(OMEGA_HORIZON)),
                    Functional::Limit,
                )
                .expect("m >= 2"),
            },
            |ctx, c| {
                let p = product_of(c, "continuous-at-zero-not-at-unit")?;
                let at_zero = passes_zero_probe(Polynomial::Product(p.clone()), ctx.depth)?;
                let w = discontinuity_witness(p, ctx.depth)?;
                let ok = at_zero && w.gap == Rational::one() && w.reverify(p)?;
                Ok(Outcome {
                    holds: ok,
                    witness: ok.then_some(Witness::Discontinuity { witness: w }),
                })
            },
        ),
    ]
}

/// An order continuous functional with `φ(1) ≠ 0`.
fn continuous_functional(g: &mut Gen) -> Functional {
    if g.coin() {
        return Functional::Coordinate(g.below(OMEGA_HORIZON));
    }
    loop {
        let mu = g.normal_measure(OMEGA);
        if !mu.integrate(&Element::one(OMEGA)).expect("same space").is_zero() {
            return Functional::Measure(mu);
        }
    }
}

fn discontinuous_functional(g: &mut Gen) -> Functional {
    if g.coin() {
        return Functional::Limit;
    }
    let mu = g.normal_measure(OMEGA);
    let atoms: Vec<(usize, Rational)> = mu.atoms().iter().map(|(t, w)| (*t, w.clone())).collect();
    Functional::Measure(Measure::new(OMEGA, atoms, g.positive_rational()).expect("valid on omega"))
}

fn limit_weight(f: &Functional) -> Rational {
    match f {
        Functional::Limit => Rational::one(),
        Functional::Measure(mu) => mu.limit_atom().clone(),
        Functional::Coordinate(_) => Rational::zero(),
    }
}

pub fn counterexample() -> Vec<Property> {
    vec![
        Property::new(
            "witness-gap",
            |ctx, g| {
                let phi = continuous_functional(g);
                let psi = discontinuous_functional(g);
                Case::Product {
                    polynomial: ProductFunctionalPolynomial::new(ctx.m, phi, psi).expect("m >= 2"),
                }
            },
            |ctx, c| {
                let p = product_of(c, "witness-gap")?;
                let phi_one = p.phi().eval(&Element::one(OMEGA))?;
                let expected = &phi_one.abs().pow(p.degree() as u32 - 1) * &limit_weight(p.psi()).abs();
                let w = discontinuity_witness(p, ctx.depth)?;
                let at_zero = passes_zero_probe(Polynomial::Product(p.clone()), ctx.depth)?;
                let ok = at_zero && w.gap == expected && w.reverify(p)?;
                Ok(Outcome {
                    holds: ok,
                    witness: ok.then_some(Witness::Discontinuity { witness: w }),
                })
            },
        ),
        Property::new(
            "unit-gap-instance",
            |ctx, _| Case::Product {
                polynomial: ProductFunctionalPolynomial::new(ctx.m, Functional::Coordinate(0), Functional::Limit)
                    .expect("m >= 2"),
            },
            |ctx, c| {
                let p = product_of(c, "unit-gap-instance")?;
                let w = discontinuity_witness(p, ctx.depth)?;
                let ok = w.gap == Rational::one() && w.gap_from == 2 && w.reverify(p)?;
                Ok(Outcome {
                    holds: ok,
                    witness: ok.then_some(Witness::Discontinuity { witness: w }),
                })
            },
        )
        .once(),
        Property::new(
            "no-witness-for-continuous-factor",
            |ctx, g| {
                let phi = continuous_functional(g);
                let psi = continuous_functional(g);
                Case::Product {
                    polynomial: ProductFunctionalPolynomial::new(ctx.m, phi, psi).expect("m >= 2"),
                }
            },
            |ctx, c| {
                let p = product_of(c, "no-witness-for-continuous-factor")?;
                let refused = matches!(discontinuity_witness(p, ctx.depth), Err(Error::NoWitness(_)));
                let at_zero = passes_zero_probe(Polynomial::Product(p.clone()), ctx.depth)?;
                Ok(Outcome::holds(refused && at_zero))
            },
        ),
    ]
}
