use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::surd::Surd;
use crate::lattice::{Element, Space};
use crate::scalar::{factorial, Rational};

/// A symmetric `m`-linear form on `R^n`, stored sparsely by nondecreasing
/// index keys.
///
/// The value `c` stored under key `I` is the coefficient at every distinct
/// permutation of `I`, so
/// `A(x_1, …, x_m) = Σ_I c_I Σ_{τ distinct perm of I} Π_k x_k[τ_k]`.
/// Keys are 0-based internally and 1-based in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymTensor {
    n: usize,
    degree: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl SymTensor {
    pub fn zero(n: usize, degree: usize) -> Result<SymTensor> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(SymTensor {
            n,
            degree,
            entries: BTreeMap::new(),
        })
    }

    /// Index order within a key is irrelevant; two keys that sort to the same
    /// multiset are rejected.
    pub fn from_entries<I>(n: usize, degree: usize, entries: I) -> Result<SymTensor>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut t = SymTensor::zero(n, degree)?;
        let mut seen = BTreeSet::new();
        for (idx, v) in entries {
            let key = t.key(idx)?;
            if !seen.insert(key.clone()) {
                return Err(Error::BadIndex(key));
            }
            t.set_key(key, v);
        }
        Ok(t)
    }

    /// `A(e_{t_1}, …) = w_t` on the diagonal, zero elsewhere.
    pub fn diagonal(degree: usize, weights: &[Rational]) -> Result<SymTensor> {
        let mut t = SymTensor::zero(weights.len(), degree)?;
        for (i, w) in weights.iter().enumerate() {
            t.set_key(vec![i; degree], w.clone());
        }
        Ok(t)
    }

    fn key(&self, mut idx: Vec<usize>) -> Result<Vec<usize>> {
        if idx.len() != self.degree || idx.iter().any(|&i| i >= self.n) {
            return Err(Error::BadIndex(idx));
        }
        idx.sort_unstable();
        Ok(idx)
    }

    fn set_key(&mut self, key: Vec<usize>, v: Rational) {
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub fn set(&mut self, idx: Vec<usize>, v: Rational) -> Result<()> {
        let key = self.key(idx)?;
        self.set_key(key, v);
        Ok(())
    }

    pub fn get(&self, idx: &[usize]) -> Result<Rational> {
        let key = self.key(idx.to_vec())?;
        Ok(self.entries.get(&key).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> Space {
        Space::finite(self.n)
    }

    /// Nonzero entries by canonical key.
    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    pub fn first_off_diagonal(&self) -> Option<(&Vec<usize>, &Rational)> {
        self.entries.iter().find(|(k, _)| k.first() != k.last())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| !v.is_negative())
    }

    /// Diagonal weights `A(e_t, …, e_t)`.
    pub fn diagonal_weights(&self) -> Vec<Rational> {
        (0..self.n)
            .map(|t| self.entries.get(&vec![t; self.degree]).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    fn check_arg(&self, x: &Element) -> Result<()> {
        if x.space() != self.space() {
            return Err(Error::SpaceMismatch {
                left: self.space(),
                right: x.space(),
            });
        }
        Ok(())
    }

    /// `A(x_1, …, x_m)`.
    pub fn eval(&self, args: &[Element]) -> Result<Rational> {
        if args.len() != self.degree {
            return Err(Error::Arity {
                expected: self.degree,
                got: args.len(),
            });
        }
        for x in args {
            self.check_arg(x)?;
        }
        let mut total = Rational::zero();
        for (key, c) in &self.entries {
            let mut perm = key.clone();
            let mut s = Rational::zero();
            loop {
                let mut prod = Rational::one();
                for (k, &t) in perm.iter().enumerate() {
                    let v = args[k].at(t);
                    if v.is_zero() {
                        prod = Rational::zero();
                        break;
                    }
                    prod = &prod * v;
                }
                s = &s + &prod;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            total = &total + &(c * &s);
        }
        Ok(total)
    }

    /// `P(x) = A(x, …, x)`, using multinomial counts instead of permutations.
    pub fn eval_diag(&self, x: &Element) -> Result<Rational> {
        self.check_arg(x)?;
        let mut total = Rational::zero();
        for (key, c) in &self.entries {
            let mut prod = Rational::one();
            for &t in key {
                prod = &prod * x.at(t);
                if prod.is_zero() {
                    break;
                }
            }
            if !prod.is_zero() {
                total = &total + &(&(c * &multiplicity(key)) * &prod);
            }
        }
        Ok(total)
    }

    /// `P` at a vector of surds, one per coordinate.
    pub fn eval_diag_surd(&self, x: &[Surd]) -> Result<Surd> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let degree = x.first().map(Surd::degree).unwrap_or(1);
        let mut total = Surd::zero(degree);
        for (key, c) in &self.entries {
            let mut prod = Surd::rational(degree, Rational::one());
            for &t in key {
                prod = prod.mul(&x[t])?;
                if prod.is_zero() {
                    break;
                }
            }
            total = total.add(&prod.scale(&(c * &multiplicity(key))))?;
        }
        Ok(total)
    }

    pub fn map<F: Fn(&Rational) -> Rational>(&self, f: F) -> SymTensor {
        let mut out = SymTensor {
            n: self.n,
            degree: self.degree,
            entries: BTreeMap::new(),
        };
        for (k, v) in &self.entries {
            out.set_key(k.clone(), f(v));
        }
        out
    }

    fn same_shape(&self, other: &SymTensor) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SpaceMismatch {
                left: self.space(),
                right: other.space(),
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn zip_with<F>(&self, other: &SymTensor, f: F) -> Result<SymTensor>
    where
        F: Fn(&Rational, &Rational) -> Rational,
    {
        self.same_shape(other)?;
        let zero = Rational::zero();
        let keys: BTreeSet<&Vec<usize>> = self.entries.keys().chain(other.entries.keys()).collect();
        let mut out = SymTensor::zero(self.n, self.degree)?;
        for k in keys {
            let a = self.entries.get(k).unwrap_or(&zero);
            let b = other.entries.get(k).unwrap_or(&zero);
            out.set_key(k.clone(), f(a, b));
        }
        Ok(out)
    }

    /// Coefficientwise modulus, which is the lattice modulus in the
    /// regular forms on a finite space.
    pub fn abs(&self) -> SymTensor {
        self.map(Rational::abs)
    }

    pub fn pos_part(&self) -> SymTensor {
        self.map(|v| Rational::max_of(v, &Rational::zero()))
    }

    pub fn neg_part(&self) -> SymTensor {
        self.map(|v| Rational::max_of(&-v, &Rational::zero()))
    }

    pub fn join(&self, other: &SymTensor) -> Result<SymTensor> {
        self.zip_with(other, Rational::max_of)
    }

    pub fn meet(&self, other: &SymTensor) -> Result<SymTensor> {
        self.zip_with(other, Rational::min_of)
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SymTensor) -> Result<SymTensor> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> SymTensor {
        self.map(|v| v * c)
    }

    /// Keeps entries whose indices all lie in `keep`.
    pub fn mask(&self, keep: &BTreeSet<usize>) -> SymTensor {
        let mut out = self.clone();
        out.entries.retain(|k, _| k.iter().all(|i| keep.contains(i)));
        out
    }

    /// The form on `R^keep`, reindexed in increasing order.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Result<SymTensor> {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        let mut out = SymTensor::zero(keep.len(), self.degree)?;
        for (k, v) in &self.entries {
            if let Some(key) = k.iter().map(|i| pos.get(i).copied()).collect::<Option<Vec<_>>>() {
                out.set_key(key, v.clone());
            }
        }
        Ok(out)
    }

    /// Indices touched by a nonzero entry.
    pub fn support(&self) -> BTreeSet<usize> {
        self.entries.keys().flatten().copied().collect()
    }
}

/// Number of distinct permutations of a sorted key.
pub(crate) fn multiplicity(key: &[usize]) -> Rational {
    let mut denom = Rational::one();
    let mut run = 1u32;
    for w in key.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            denom = &denom * &factorial(run);
            run = 1;
        }
    }
    denom = &denom * &factorial(run);
    &factorial(key.len() as u32) / &denom
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    idx: Vec<usize>,
    val: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorRepr {
    m: usize,
    space: Space,
    entries: Vec<EntryRepr>,
}

impl Serialize for SymTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorRepr {
            m: self.degree,
            space: self.space(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryRepr {
                    idx: k.iter().map(|i| i + 1).collect(),
                    val: v.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl TryFrom<TensorRepr> for SymTensor {
    type Error = Error;

    fn try_from(r: TensorRepr) -> Result<SymTensor> {
        let n = match r.space {
            Space::Finite { n } => n,
            other => return Err(Error::NotFinite(other)),
        };
        let entries = r
            .entries
            .into_iter()
            .map(|e| {
                if e.idx.contains(&0) {
                    return Err(Error::BadIndex(e.idx));
                }
                Ok((e.idx.iter().map(|i| i - 1).collect(), e.val))
            })
            .collect::<Result<Vec<_>>>()?;
        SymTensor::from_entries(n, r.m, entries)
    }
}

impl<'de> Deserialize<'de> for SymTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SymTensor::try_from(TensorRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
