use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Element, Space};
use crate::scalar::Rational;

/// A signed atomic measure: weights at isolated points plus, on ω+1, an atom
/// at the limit point. Points are 0-based internally and 1-based in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    space: Space,
    atoms: BTreeMap<usize, Rational>,
    limit_atom: Rational,
}

impl Measure {
    pub fn zero(space: Space) -> Measure {
        Measure {
            space,
            atoms: BTreeMap::new(),
            limit_atom: Rational::zero(),
        }
    }

    pub fn new<I>(space: Space, atoms: I, limit_atom: Rational) -> Result<Measure>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        if space.is_finite() && !limit_atom.is_zero() {
            return Err(Error::LimitAtomOnFinite);
        }
        let mut m = Measure::zero(space);
        m.limit_atom = limit_atom;
        for (p, w) in atoms {
            if let Some(n) = space.size() {
                if p >= n {
                    return Err(Error::PointOutOfRange { point: p + 1, space });
                }
            }
            if m.atoms.contains_key(&p) {
                return Err(Error::DuplicateAtom(p + 1));
            }
            m.atoms.insert(p, w);
        }
        m.atoms.retain(|_, w| !w.is_zero());
        Ok(m)
    }

    /// Finite-space measure from a weight per point.
    pub fn from_weights(weights: &[Rational]) -> Result<Measure> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        Measure::new(
            Space::finite(weights.len()),
            weights.iter().cloned().enumerate(),
            Rational::zero(),
        )
    }

    pub fn from_ints(weights: &[i64]) -> Measure {
        Measure::from_weights(&weights.iter().map(|&w| Rational::from_int(w)).collect::<Vec<_>>())
            .expect("nonempty weights")
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn atoms(&self) -> &BTreeMap<usize, Rational> {
        &self.atoms
    }

    pub fn weight(&self, point: usize) -> Rational {
        self.atoms.get(&point).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn limit_atom(&self) -> &Rational {
        &self.limit_atom
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.limit_atom.is_zero()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.atoms.values().all(|w| !w.is_negative()) && !self.limit_atom.is_negative()
    }

    /// Isolated points carrying a nonzero atom.
    pub fn support(&self) -> BTreeSet<usize> {
        self.atoms.keys().copied().collect()
    }

    pub fn variation_norm(&self) -> Rational {
        let s: Rational = self.atoms.values().map(Rational::abs).sum();
        &s + &self.limit_atom.abs()
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.space() != self.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: x.space(),
            });
        }
        Ok(())
    }

    /// `∫ x dμ`.
    pub fn integrate(&self, x: &Element) -> Result<Rational> {
        self.check(x)?;
        let s: Rational = self.atoms.iter().map(|(t, w)| w * x.at(*t)).sum();
        Ok(&s + &(&self.limit_atom * x.tail()))
    }

    /// `∫ x^m dμ`.
    pub fn integrate_power(&self, x: &Element, m: usize) -> Result<Rational> {
        self.check(x)?;
        let m = m as u32;
        let s: Rational = self.atoms.iter().map(|(t, w)| w * &x.at(*t).pow(m)).sum();
        Ok(&s + &(&self.limit_atom * &x.tail().pow(m)))
    }

    /// `∫ x_1 ⋯ x_m dμ`.
    pub fn integrate_product(&self, args: &[Element]) -> Result<Rational> {
        for x in args {
            self.check(x)?;
        }
        let point = |at: &dyn Fn(&Element) -> &Rational| -> Rational { args.iter().map(at).product() };
        let s: Rational = self.atoms.iter().map(|(t, w)| w * &point(&|x| x.at(*t))).sum();
        Ok(&s + &(&self.limit_atom * &point(&|x| x.tail())))
    }

    pub fn map<F: Fn(&Rational) -> Rational>(&self, f: F) -> Measure {
        let mut out = Measure::zero(self.space);
        for (t, w) in &self.atoms {
            let v = f(w);
            if !v.is_zero() {
                out.atoms.insert(*t, v);
            }
        }
        out.limit_atom = f(&self.limit_atom);
        out
    }

    pub fn zip_with<F>(&self, other: &Measure, f: F) -> Result<Measure>
    where
        F: Fn(&Rational, &Rational) -> Rational,
    {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: other.space,
            });
        }
        let zero = Rational::zero();
        let mut out = Measure::zero(self.space);
        for t in self.atoms.keys().chain(other.atoms.keys()) {
            let v = f(self.atoms.get(t).unwrap_or(&zero), other.atoms.get(t).unwrap_or(&zero));
            if !v.is_zero() {
                out.atoms.insert(*t, v);
            }
        }
        out.limit_atom = f(&self.limit_atom, &other.limit_atom);
        Ok(out)
    }

    pub fn abs(&self) -> Measure {
        self.map(Rational::abs)
    }

    pub fn pos_part(&self) -> Measure {
        self.map(|v| Rational::max_of(v, &Rational::zero()))
    }

    pub fn neg_part(&self) -> Measure {
        self.map(|v| Rational::max_of(&-v, &Rational::zero()))
    }

    pub fn join(&self, other: &Measure) -> Result<Measure> {
        self.zip_with(other, Rational::max_of)
    }

    pub fn meet(&self, other: &Measure) -> Result<Measure> {
        self.zip_with(other, Rational::min_of)
    }

    pub fn add(&self, other: &Measure) -> Result<Measure> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Measure) -> Result<Measure> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Measure {
        self.map(|v| v * c)
    }

    pub fn is_disjoint(&self, other: &Measure) -> Result<bool> {
        Ok(self.abs().meet(&other.abs())?.is_zero())
    }

    /// Keeps the atoms at points in `keep` and, if `keep_limit`, the limit atom.
    pub fn mask(&self, keep: &BTreeSet<usize>, keep_limit: bool) -> Measure {
        let mut out = self.clone();
        out.atoms.retain(|t, _| keep.contains(t));
        if !keep_limit {
            out.limit_atom = Rational::zero();
        }
        out
    }

    /// The measure on `finite(|keep|)` with points renumbered in increasing order.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Result<Measure> {
        if keep.is_empty() {
            return Err(Error::EmptySpace);
        }
        let atoms = keep.iter().enumerate().map(|(j, i)| (j, self.weight(*i)));
        Measure::new(Space::finite(keep.len()), atoms, Rational::zero())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRepr {
    point: usize,
    weight: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureRepr {
    space: Space,
    atoms: Vec<AtomRepr>,
    #[serde(default)]
    limit_atom: Rational,
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureRepr {
            space: self.space,
            atoms: self
                .atoms
                .iter()
                .map(|(t, w)| AtomRepr {
                    point: t + 1,
                    weight: w.clone(),
                })
                .collect(),
            limit_atom: self.limit_atom.clone(),
        }
        .serialize(s)
    }
}

impl TryFrom<MeasureRepr> for Measure {
    type Error = Error;

    fn try_from(r: MeasureRepr) -> Result<Measure> {
        let atoms = r
            .atoms
            .into_iter()
            .map(|a| match a.point {
                0 => Err(Error::PointOutOfRange { point: 0, space: r.space }),
                p => Ok((p - 1, a.weight)),
            })
            .collect::<Result<Vec<_>>>()?;
        Measure::new(r.space, atoms, r.limit_atom)
    }
}

impl<'de> Deserialize<'de> for Measure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Measure::try_from(MeasureRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
