//! Exact arithmetic in `Q(q^(1/m))` for a fixed root degree `m`.
//!
//! A [`Surd`] is a finite sum `Σ c_q · q^(1/m)` with rational `c_q` and
//! pairwise distinct `m`-th-power-free positive integers `q`. Real `m`-th
//! roots of distinct `m`-th-power-free integers are linearly independent over
//! the rationals, so this canonical form decides equality exactly. It lets
//! polynomials that are not measure-represented be evaluated at Krivine
//! radicals without rounding.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Prime factorisation with exponents in `1..m`; empty means `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
struct Radicand(Vec<(u128, u32)>);

impl Radicand {
    fn value(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::from(1), |acc, (p, e)| acc * BigInt::from(*p).pow(*e))
    }
}

thread_local! {
    static FACTOR_CACHE: RefCell<HashMap<u128, Vec<(u128, u32)>>> = RefCell::new(HashMap::new());
}

fn factor(n: u128) -> Vec<(u128, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    FACTOR_CACHE.with(|cache| {
        if let Some(f) = cache.borrow().get(&n) {
            return f.clone();
        }
        let f: Vec<(u128, u32)> = num_prime::nt_funcs::factorize128(n)
            .into_iter()
            .map(|(p, e)| (p, e as u32))
            .collect();
        let mut c = cache.borrow_mut();
        if c.len() > 1 << 16 {
            c.clear();
        }
        c.insert(n, f.clone());
        f
    })
}

fn to_u128(x: &BigInt) -> Result<u128> {
    let (sign, _) = x.to_bytes_le();
    if sign == Sign::Minus {
        return Err(Error::NegativeRadicand);
    }
    x.to_u128().ok_or_else(|| Error::RadicandTooLarge(x.to_string()))
}

fn pow_rational(p: u128, e: i64) -> Rational {
    let base = Rational::from(BigInt::from(p));
    if e >= 0 {
        base.pow(e as u32)
    } else {
        base.pow((-e) as u32).recip().expect("prime is nonzero")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    degree: u32,
    terms: BTreeMap<Radicand, Rational>,
}

impl Surd {
    pub fn zero(degree: u32) -> Surd {
        Surd {
            degree: degree.max(1),
            terms: BTreeMap::new(),
        }
    }

    pub fn rational(degree: u32, r: Rational) -> Surd {
        let mut s = Surd::zero(degree);
        if !r.is_zero() {
            s.terms.insert(Radicand::default(), r);
        }
        s
    }

    /// `r^(1/degree)` for `r ≥ 0`.
    pub fn root(degree: u32, r: &Rational) -> Result<Surd> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if r.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        if r.is_zero() {
            return Ok(Surd::zero(degree));
        }
        let m = degree as i64;
        let mut exps: BTreeMap<u128, i64> = BTreeMap::new();
        for (p, e) in factor(to_u128(&r.numer())?) {
            *exps.entry(p).or_default() += e as i64;
        }
        for (p, e) in factor(to_u128(&r.denom())?) {
            *exps.entry(p).or_default() -= e as i64;
        }
        let mut coef = Rational::one();
        let mut rad = Vec::new();
        for (p, e) in exps {
            let rem = e.rem_euclid(m);
            let out = (e - rem) / m;
            if out != 0 {
                coef = &coef * &pow_rational(p, out);
            }
            if rem > 0 {
                rad.push((p, rem as u32));
            }
        }
        let mut s = Surd::zero(degree);
        s.terms.insert(Radicand(rad), coef);
        Ok(s)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Radicand::default()).cloned(),
            _ => None,
        }
    }

    fn check_degree(&self, other: &Surd) -> Result<()> {
        if self.degree != other.degree && !(self.is_rational() && other.is_rational()) {
            return Err(Error::MixedRadicalDegree(self.degree as usize, other.degree as usize));
        }
        Ok(())
    }

    fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn insert(&mut self, rad: Radicand, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(rad).or_insert_with(Rational::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("just zeroed");
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Surd) -> Result<Surd> {
        self.check_degree(other)?;
        let mut out = self.clone();
        out.degree = self.degree.max(other.degree);
        for (r, c) in &other.terms {
            out.insert(r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Surd) -> Result<Surd> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Surd {
        let mut out = Surd::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (r, v) in &self.terms {
            out.terms.insert(r.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Surd) -> Result<Surd> {
        self.check_degree(other)?;
        let degree = self.degree.max(other.degree);
        let mut out = Surd::zero(degree);
        for (ra, ca) in &self.terms {
            for (rb, cb) in &other.terms {
                let (rad, extra) = multiply_radicands(ra, rb, degree);
                out.insert(rad, &(ca * cb) * &extra);
            }
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64() * r.value().to_f64().unwrap_or(f64::NAN).powf(1.0 / self.degree as f64))
            .sum()
    }
}

fn multiply_radicands(a: &Radicand, b: &Radicand, degree: u32) -> (Radicand, Rational) {
    let mut exps: BTreeMap<u128, u32> = a.0.iter().copied().collect();
    for (p, e) in &b.0 {
        *exps.entry(*p).or_default() += e;
    }
    let mut extra = Rational::one();
    let mut rad = Vec::new();
    for (p, e) in exps {
        if e >= degree {
            extra = &extra * &Rational::from(BigInt::from(p));
        }
        let rem = e % degree;
        if rem > 0 {
            rad.push((p, rem));
        }
    }
    (Radicand(rad), extra)
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, c)| {
                if r.0.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}^(1/{})", r.value(), self.degree)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct SurdTerm {
    radicand: Rational,
    coef: Rational,
}

#[derive(Serialize, Deserialize)]
struct SurdRepr {
    degree: u32,
    terms: Vec<SurdTerm>,
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SurdRepr {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(r, c)| SurdTerm {
                    radicand: Rational::from(r.value()),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SurdRepr::deserialize(deserializer)?;
        let mut acc = Surd::zero(repr.degree);
        for t in repr.terms {
            let term = Surd::root(repr.degree, &t.radicand)
                .map_err(serde::de::Error::custom)?
                .scale(&t.coef);
            acc = acc.add(&term).map_err(serde::de::Error::custom)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn perfect_powers_are_rational() {
        assert_eq!(Surd::root(2, &q(25, 1)).unwrap().as_rational(), Some(q(5, 1)));
        assert_eq!(Surd::root(3, &q(8, 27)).unwrap().as_rational(), Some(q(2, 3)));
        assert_eq!(Surd::root(2, &q(0, 1)).unwrap().as_rational(), Some(q(0, 1)));
        assert!(Surd::root(2, &q(2, 1)).unwrap().as_rational().is_none());
    }

    #[test]
    fn products_of_roots_combine() {
        // sqrt(2) * sqrt(8) = 4
        let a = Surd::root(2, &q(2, 1)).unwrap();
        let b = Surd::root(2, &q(8, 1)).unwrap();
        assert_eq!(a.mul(&b).unwrap().as_rational(), Some(q(4, 1)));
        // cbrt(1/2)^3 = 1/2
        let c = Surd::root(3, &q(1, 2)).unwrap();
        let c3 = c.mul(&c).unwrap().mul(&c).unwrap();
        assert_eq!(c3.as_rational(), Some(q(1, 2)));
    }

    #[test]
    fn independent_roots_do_not_cancel() {
        let a = Surd::root(2, &q(2, 1)).unwrap();
        let b = Surd::root(2, &q(3, 1)).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.terms.len(), 2);
        assert!((s.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
        assert!(s.sub(&a).unwrap().sub(&b).unwrap().is_zero());
    }

    #[test]
    fn canonical_denominators() {
        // sqrt(1/2) = (1/2) sqrt(2)
        let a = Surd::root(2, &q(1, 2)).unwrap();
        let b = Surd::root(2, &q(2, 1)).unwrap().scale(&q(1, 2));
        assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip() {
        let s = Surd::root(2, &q(2, 1)).unwrap().add(&Surd::rational(2, q(3, 4))).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: Surd = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_negative() {
        assert_eq!(Surd::root(2, &q(-1, 1)), Err(Error::NegativeRadicand));
    }
}
