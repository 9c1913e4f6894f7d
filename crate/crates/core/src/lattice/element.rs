use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Point, Space};
use crate::scalar::Rational;

/// A point of `C(K)` for one of the two backends.
///
/// Finite elements hold one value per point. Elements of `C(ω+1)` are
/// eventually constant: `prefix[i]` is the value at isolated point `i + 1`
/// and `tail` the value at every later isolated point and at the limit.
/// The prefix is kept canonical (no trailing entries equal to the tail), so
/// derived equality is pointwise equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    space: Space,
    values: Vec<Rational>,
    tail: Rational,
}

impl Element {
    pub fn finite(values: Vec<Rational>) -> Result<Element> {
        if values.is_empty() {
            return Err(Error::EmptySpace);
        }
        Ok(Element {
            space: Space::finite(values.len()),
            values,
            tail: Rational::zero(),
        })
    }

    /// Convenience constructor from integers, mostly for tests and examples.
    pub fn from_ints(values: &[i64]) -> Element {
        Element::finite(values.iter().map(|&v| Rational::from_int(v)).collect())
            .expect("nonempty value list")
    }

    pub fn omega(prefix: Vec<Rational>, tail: Rational) -> Element {
        let mut e = Element {
            space: Space::OmegaPlusOne,
            values: prefix,
            tail,
        };
        e.canonicalise();
        e
    }

    pub fn omega_from_ints(prefix: &[i64], tail: i64) -> Element {
        Element::omega(
            prefix.iter().map(|&v| Rational::from_int(v)).collect(),
            Rational::from_int(tail),
        )
    }

    /// Builds an element of `space`; for finite spaces `values` must have
    /// length `n` and `tail` is ignored.
    pub fn on(space: Space, values: Vec<Rational>, tail: Rational) -> Result<Element> {
        match space {
            Space::Finite { n } => {
                if values.len() != n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        got: values.len(),
                    });
                }
                Element::finite(values)
            }
            Space::OmegaPlusOne => Ok(Element::omega(values, tail)),
        }
    }

    pub fn constant(space: Space, c: Rational) -> Element {
        match space {
            Space::Finite { n } => Element {
                space,
                values: vec![c; n],
                tail: Rational::zero(),
            },
            Space::OmegaPlusOne => Element::omega(Vec::new(), c),
        }
    }

    pub fn zero(space: Space) -> Element {
        Element::constant(space, Rational::zero())
    }

    pub fn one(space: Space) -> Element {
        Element::constant(space, Rational::one())
    }

    /// Indicator of the point at position `i` (`e_{i+1}`).
    pub fn basis(space: Space, i: usize) -> Result<Element> {
        match space {
            Space::Finite { n } => {
                if i >= n {
                    return Err(Error::PointOutOfRange { point: i + 1, space });
                }
                let mut values = vec![Rational::zero(); n];
                values[i] = Rational::one();
                Element::finite(values)
            }
            Space::OmegaPlusOne => {
                let mut prefix = vec![Rational::zero(); i + 1];
                prefix[i] = Rational::one();
                Ok(Element::omega(prefix, Rational::zero()))
            }
        }
    }

    /// `c` times the indicator of `{limit} ∪ {isolated points ≥ from}` on ω+1
    /// (`from` is 1-based, as in the isolated-point labels).
    pub fn tail_indicator(from: usize, scale: Rational) -> Element {
        let from = from.max(1);
        Element::omega(vec![Rational::zero(); from - 1], scale)
    }

    fn canonicalise(&mut self) {
        if self.space == Space::OmegaPlusOne {
            while self.values.last() == Some(&self.tail) {
                self.values.pop();
            }
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Values of a finite element, or the prefix of an ω+1 element.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.values
    }

    /// Tail value of an ω+1 element; zero for finite elements.
    pub fn tail(&self) -> &Rational {
        &self.tail
    }

    /// Number of positions that must be inspected to see every distinct
    /// value (the length for finite elements, the prefix length for ω+1).
    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// Value at position `i`.
    pub fn at(&self, i: usize) -> &Rational {
        match self.space {
            Space::Finite { .. } => &self.values[i],
            Space::OmegaPlusOne => self.values.get(i).unwrap_or(&self.tail),
        }
    }

    pub fn value_at(&self, p: Point) -> Result<&Rational> {
        match (p, self.space) {
            (Point::At(i), Space::Finite { n }) if i >= n => Err(Error::PointOutOfRange {
                point: i + 1,
                space: self.space,
            }),
            (Point::At(i), _) => Ok(self.at(i)),
            (Point::Limit, Space::OmegaPlusOne) => Ok(&self.tail),
            (Point::Limit, _) => Err(Error::PointOutOfRange {
                point: 0,
                space: self.space,
            }),
        }
    }

    pub fn ensure_same_space(&self, other: &Element) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: other.space,
            });
        }
        Ok(())
    }

    /// Pointwise combination after prefix alignment.
    pub fn zip_with<F>(&self, other: &Element, f: F) -> Result<Element>
    where
        F: Fn(&Rational, &Rational) -> Rational,
    {
        self.ensure_same_space(other)?;
        let len = self.horizon().max(other.horizon());
        let values = (0..len).map(|i| f(self.at(i), other.at(i))).collect();
        let tail = match self.space {
            Space::Finite { .. } => Rational::zero(),
            Space::OmegaPlusOne => f(&self.tail, &other.tail),
        };
        let mut e = Element {
            space: self.space,
            values,
            tail,
        };
        e.canonicalise();
        Ok(e)
    }

    pub fn map<F>(&self, f: F) -> Element
    where
        F: Fn(&Rational) -> Rational,
    {
        let tail = match self.space {
            Space::Finite { .. } => Rational::zero(),
            Space::OmegaPlusOne => f(&self.tail),
        };
        let mut e = Element {
            space: self.space,
            values: self.values.iter().map(&f).collect(),
            tail,
        };
        e.canonicalise();
        e
    }

    /// True when `pred` holds at every point.
    pub fn all<F>(&self, pred: F) -> bool
    where
        F: Fn(&Rational) -> bool,
    {
        self.values.iter().all(&pred) && (self.space.is_finite() || pred(&self.tail))
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        self.map(|v| v * c)
    }

    pub fn neg(&self) -> Element {
        self.map(|v| -v)
    }

    /// Pointwise power `x^m`.
    pub fn pow(&self, m: u32) -> Element {
        self.map(|v| v.pow(m))
    }

    pub fn join(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, Rational::max_of)
    }

    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, Rational::min_of)
    }

    pub fn abs(&self) -> Element {
        self.map(Rational::abs)
    }

    pub fn pos_part(&self) -> Element {
        self.map(|v| Rational::max_of(v, &Rational::zero()))
    }

    pub fn neg_part(&self) -> Element {
        self.map(|v| Rational::max_of(&-v, &Rational::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.all(Rational::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.all(|v| !v.is_negative())
    }

    /// Pointwise order `self ≤ other`.
    pub fn le(&self, other: &Element) -> Result<bool> {
        self.ensure_same_space(other)?;
        let len = self.horizon().max(other.horizon());
        let prefix_ok = (0..len).all(|i| self.at(i) <= other.at(i));
        Ok(prefix_ok && (self.space.is_finite() || self.tail <= other.tail))
    }

    pub fn sup_norm(&self) -> Rational {
        let m = self
            .values
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero);
        match self.space {
            Space::Finite { .. } => m,
            Space::OmegaPlusOne => Rational::max_of(&m, &self.tail.abs()),
        }
    }

    /// Positions within the horizon where the element is nonzero. For ω+1
    /// elements with a nonzero tail the support additionally contains every
    /// later isolated point and the limit point.
    pub fn support_positions(&self) -> BTreeSet<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn tail_is_zero(&self) -> bool {
        self.tail.is_zero()
    }

    /// Splits ω+1 at `horizon`: positions below it are kept iff listed in
    /// `keep`, positions from it onwards (and the limit) iff `keep_tail`.
    /// On finite spaces this is [`Self::mask`].
    pub fn mask_within(&self, keep: &BTreeSet<usize>, horizon: usize, keep_tail: bool) -> Element {
        if self.space.is_finite() {
            return self.mask(keep, keep_tail);
        }
        let len = horizon.max(self.horizon());
        let zero = Rational::zero();
        let values = (0..len)
            .map(|i| {
                let kept = if i < horizon { keep.contains(&i) } else { keep_tail };
                if kept { self.at(i).clone() } else { zero.clone() }
            })
            .collect();
        let tail = if keep_tail { self.tail.clone() } else { zero };
        Element::omega(values, tail)
    }

    /// Restriction to positions in `keep`; other positions (and the tail,
    /// for ω+1) are set to zero.
    pub fn mask(&self, keep: &BTreeSet<usize>, keep_tail: bool) -> Element {
        let len = match keep.iter().next_back() {
            Some(&last) => self.horizon().max(last + 1),
            None => self.horizon(),
        };
        let len = match self.space {
            Space::Finite { n } => n,
            Space::OmegaPlusOne => len,
        };
        let values = (0..len)
            .map(|i| {
                if keep.contains(&i) {
                    self.at(i).clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let tail = if keep_tail && !self.space.is_finite() {
            self.tail.clone()
        } else {
            Rational::zero()
        };
        let mut e = Element {
            space: self.space,
            values,
            tail,
        };
        e.canonicalise();
        e
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRepr {
    space: Space,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prefix: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<Rational>,
}

impl TryFrom<ElementRepr> for Element {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Element> {
        let invalid = |path: &str, reason: &str| Error::Invalid {
            path: path.into(),
            reason: reason.into(),
        };
        match r.space {
            Space::Finite { n } => {
                if r.prefix.is_some() || r.tail.is_some() {
                    return Err(invalid("prefix", "finite elements use \"values\""));
                }
                if n == 0 {
                    return Err(Error::EmptySpace);
                }
                let values = r.values.ok_or_else(|| invalid("values", "missing"))?;
                Element::on(r.space, values, Rational::zero())
            }
            Space::OmegaPlusOne => {
                if r.values.is_some() {
                    return Err(invalid("values", "omega1 elements use \"prefix\" and \"tail\""));
                }
                let tail = r.tail.ok_or_else(|| invalid("tail", "missing"))?;
                Ok(Element::omega(r.prefix.unwrap_or_default(), tail))
            }
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self.space {
            Space::Finite { .. } => ElementRepr {
                space: self.space,
                values: Some(self.values.clone()),
                prefix: None,
                tail: None,
            },
            Space::OmegaPlusOne => ElementRepr {
                space: self.space,
                values: None,
                prefix: Some(self.values.clone()),
                tail: Some(self.tail.clone()),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        Element::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        match self.space {
            Space::Finite { .. } => write!(f, "({})", vals.join(", ")),
            Space::OmegaPlusOne => write!(f, "({}; tail {})", vals.join(", "), self.tail),
        }
    }
}
