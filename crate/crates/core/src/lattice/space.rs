use std::fmt;

use serde::{Deserialize, Serialize};

/// The compact space `K` underlying a lattice `C(K)`.
///
/// Points are addressed by zero-based position: for `Finite(n)` positions
/// `0..n` are the points `1..=n`; for `OmegaPlusOne` position `i` is the
/// isolated point `i + 1`, and [`Point::Limit`] is the accumulation point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Space {
    Finite { n: usize },
    #[serde(rename = "omega1")]
    OmegaPlusOne,
}

impl Space {
    pub fn finite(n: usize) -> Space {
        Space::Finite { n }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Space::Finite { .. })
    }

    /// Number of points of a finite space.
    pub fn size(&self) -> Option<usize> {
        match self {
            Space::Finite { n } => Some(*n),
            Space::OmegaPlusOne => None,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Finite { n } => write!(f, "finite({n})"),
            Space::OmegaPlusOne => write!(f, "omega+1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// Zero-based position of a finite point or an isolated point of ω+1.
    At(usize),
    Limit,
}
