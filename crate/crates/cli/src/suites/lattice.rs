use riesz_lab::lattice::{rearrange_all, Element, RadicalElement};
use riesz_lab::random::Gen;
use riesz_lab::Rational;

use super::{Case, Ctx, Outcome, Property};
use crate::CliError;

fn elements<'a>(case: &'a Case, property: &str) -> Result<&'a [Element], CliError> {
    match case {
        Case::Elements { elements } => Ok(elements),
        other => Err(other.mismatch(property)),
    }
}

fn triple<'a>(case: &'a Case, property: &str) -> Result<[&'a Element; 3], CliError> {
    match elements(case, property)? {
        [x, y, z] => Ok([x, y, z]),
        _ => Err(CliError::Payload {
            property: property.into(),
            reason: "expected three elements".into(),
        }),
    }
}

fn random_triple(ctx: &Ctx, g: &mut Gen) -> Case {
    Case::Elements {
        elements: g.elements(ctx.space, 3),
    }
}

fn as_case(_: &Ctx, elements: Vec<Element>) -> Option<Case> {
    Some(Case::Elements { elements })
}

pub fn axioms() -> Vec<Property> {
    vec![
        Property::new("commutativity", random_triple, |_, c| {
            let [x, y, _] = triple(c, "commutativity")?;
            Ok(Outcome::holds(x.join(y)? == y.join(x)? && x.meet(y)? == y.meet(x)?))
        })
        .exhaustive(3, as_case),
        Property::new("associativity", random_triple, |_, c| {
            let [x, y, z] = triple(c, "associativity")?;
            Ok(Outcome::holds(
                x.join(y)?.join(z)? == x.join(&y.join(z)?)? && x.meet(y)?.meet(z)? == x.meet(&y.meet(z)?)?,
            ))
        })
        .exhaustive(3, as_case),
        Property::new("absorption", random_triple, |_, c| {
            let [x, y, _] = triple(c, "absorption")?;
            Ok(Outcome::holds(&x.join(&x.meet(y)?)? == x && &x.meet(&x.join(y)?)? == x))
        })
        .exhaustive(3, as_case),
        Property::new("distributivity", random_triple, |_, c| {
            let [x, y, z] = triple(c, "distributivity")?;
            let meet_over_join = x.meet(&y.join(z)?)? == x.meet(y)?.join(&x.meet(z)?)?;
            let join_over_meet = x.join(&y.meet(z)?)? == x.join(y)?.meet(&x.join(z)?)?;
            Ok(Outcome::holds(meet_over_join && join_over_meet))
        })
        .exhaustive(3, as_case),
        Property::new("riesz-decomposition", random_triple, |_, c| {
            let [x, y, _] = triple(c, "riesz-decomposition")?;
            let (p, n) = (x.pos_part(), x.neg_part());
            let parts = &p.sub(&n)? == x && x.abs() == p.add(&n)? && riesz_lab::lattice::is_disjoint(&p, &n)?;
            let triangle = x.add(y)?.abs().le(&x.abs().add(&y.abs())?)?;
            Ok(Outcome::holds(parts && triangle))
        })
        .exhaustive(3, as_case),
    ]
}

fn random_tuple(ctx: &Ctx, g: &mut Gen) -> Case {
    Case::Elements {
        elements: g.elements(ctx.space, ctx.m),
    }
}

/// Positions that determine an element set: every finite point, or on ω+1
/// the longest prefix plus one tail position.
fn positions(xs: &[Element]) -> usize {
    let first = &xs[0];
    match first.space().size() {
        Some(n) => n,
        None => xs.iter().map(Element::horizon).max().unwrap_or(0) + 1,
    }
}

fn product(xs: &[Element]) -> Result<Element, CliError> {
    let mut acc = xs[0].clone();
    for x in &xs[1..] {
        acc = acc.mul(x)?;
    }
    Ok(acc)
}

pub fn rearrangement() -> Vec<Property> {
    vec![
        Property::new("sorts-pointwise", random_tuple, |_, c| {
            let xs = elements(c, "sorts-pointwise")?;
            let j = rearrange_all(xs)?;
            let mut ok = true;
            for i in 0..positions(xs) {
                let mut column: Vec<&Rational> = xs.iter().map(|x| x.at(i)).collect();
                column.sort_by(|a, b| b.cmp(a));
                ok &= j.iter().zip(&column).all(|(jk, v)| jk.at(i) == *v);
            }
            if !xs[0].space().is_finite() {
                let mut tails: Vec<&Rational> = xs.iter().map(Element::tail).collect();
                tails.sort_by(|a, b| b.cmp(a));
                ok &= j.iter().zip(&tails).all(|(jk, v)| jk.tail() == *v);
            }
            Ok(Outcome::holds(ok))
        })
        .exhaustive_per_argument(as_case),
        Property::new("product-identity", random_tuple, |_, c| {
            let xs = elements(c, "product-identity")?;
            Ok(Outcome::holds(product(xs)? == product(&rearrange_all(xs)?)?))
        })
        .exhaustive_per_argument(as_case),
        Property::new("radical-commutation", random_tuple, |ctx, c| {
            let xs = elements(c, "radical-commutation")?;
            let (x, y) = (xs[0].abs(), xs[xs.len() - 1].abs());
            let rx = RadicalElement::of_element(ctx.m, &x)?;
            let ry = RadicalElement::of_element(ctx.m, &y)?;
            let join = rx.join(&ry)? == RadicalElement::of_element(ctx.m, &x.join(&y)?)?;
            let meet = rx.meet(&ry)? == RadicalElement::of_element(ctx.m, &x.meet(&y)?)?;
            Ok(Outcome::holds(join && meet))
        })
        .exhaustive_per_argument(as_case),
    ]
}
