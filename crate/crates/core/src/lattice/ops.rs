use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinaryOp {
    Join,
    Meet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum UnaryOp {
    Abs,
    PosPart,
    NegPart,
}

pub fn lattice_binary(op: BinaryOp, x: &Element, y: &Element) -> Result<Element> {
    match op {
        BinaryOp::Join => x.join(y),
        BinaryOp::Meet => x.meet(y),
    }
}

pub fn lattice_unary(op: UnaryOp, x: &Element) -> Element {
    match op {
        UnaryOp::Abs => x.abs(),
        UnaryOp::PosPart => x.pos_part(),
        UnaryOp::NegPart => x.neg_part(),
    }
}

/// `|x| ∧ |y| = 0`.
pub fn is_disjoint(x: &Element, y: &Element) -> Result<bool> {
    Ok(x.abs().meet(&y.abs())?.is_zero())
}

/// Join of a nonempty list.
pub fn join_all<'a, I>(items: I) -> Result<Option<Element>>
where
    I: IntoIterator<Item = &'a Element>,
{
    let mut acc: Option<Element> = None;
    for x in items {
        acc = Some(match acc {
            None => x.clone(),
            Some(a) => a.join(x)?,
        });
    }
    Ok(acc)
}

/// Meet of a nonempty list.
pub fn meet_all<'a, I>(items: I) -> Result<Option<Element>>
where
    I: IntoIterator<Item = &'a Element>,
{
    let mut acc: Option<Element> = None;
    for x in items {
        acc = Some(match acc {
            None => x.clone(),
            Some(a) => a.meet(x)?,
        });
    }
    Ok(acc)
}
