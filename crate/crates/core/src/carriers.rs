//! Null ideals, carriers and the Nakano carrier theorem for orthogonally
//! additive polynomials.
//!
//! Bands are described by the isolated points they live on. On ω+1 a limit
//! atom adds nothing to a carrier: its null ideal (elements vanishing at
//! the limit point) is order dense, and an element disjoint from all of it
//! vanishes at every isolated point and hence, by continuity, everywhere.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{Measure, Polynomial};
use crate::lattice::{Element, PrincipalIdeal, Space};
use crate::localisation::{default_generators, restrict, LocalObject};
use crate::ordercont::oa_order_continuity;

fn one_based<S: Serializer>(points: &BTreeSet<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(points.iter().map(|p| p + 1))
}

/// The band `{x : supp x ⊆ isolated_support}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BandDescriptor {
    pub space: Space,
    #[serde(serialize_with = "one_based")]
    pub isolated_support: BTreeSet<usize>,
}

impl BandDescriptor {
    pub fn is_disjoint(&self, other: &BandDescriptor) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: other.space,
            });
        }
        Ok(self.isolated_support.is_disjoint(&other.isolated_support))
    }
}

/// `N(P) = {x : x = 0 |μ|-a.e.}`: elements vanishing on the atoms, and at
/// the limit point too when there is a limit atom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NullIdeal {
    pub space: Space,
    #[serde(serialize_with = "one_based")]
    pub vanishes_on: BTreeSet<usize>,
    pub vanishes_at_limit: bool,
    /// Finite spaces: the points where members may be nonzero.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "one_based_opt")]
    pub support: Option<BTreeSet<usize>>,
}

fn one_based_opt<S: Serializer>(points: &Option<BTreeSet<usize>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match points {
        Some(p) => one_based(p, s),
        None => s.serialize_none(),
    }
}

impl NullIdeal {
    pub fn contains(&self, x: &Element) -> Result<bool> {
        if x.space() != self.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: x.space(),
            });
        }
        let at_limit = !self.vanishes_at_limit || self.space.is_finite() || x.tail().is_zero();
        Ok(at_limit && self.vanishes_on.iter().all(|&t| x.at(t).is_zero()))
    }
}

fn measure_of(p: &Polynomial) -> Result<(usize, &Measure)> {
    match p {
        Polynomial::Measure { degree, measure } => Ok((*degree, measure)),
        _ => Err(Error::NotMeasure),
    }
}

pub fn null_ideal(p: &Polynomial) -> Result<NullIdeal> {
    let (_, mu) = measure_of(p)?;
    let atoms = mu.support();
    let support = mu
        .space()
        .size()
        .map(|n| (0..n).filter(|t| !atoms.contains(t)).collect());
    Ok(NullIdeal {
        space: mu.space(),
        vanishes_on: atoms,
        vanishes_at_limit: !mu.limit_atom().is_zero(),
        support,
    })
}

/// `C(P) = N(P)^⊥`: the isolated atoms of `|μ|`.
pub fn carrier(p: &Polynomial) -> Result<BandDescriptor> {
    let (_, mu) = measure_of(p)?;
    Ok(BandDescriptor {
        space: mu.space(),
        isolated_support: mu.support(),
    })
}

fn same_shape(p: &Polynomial, q: &Polynomial) -> Result<()> {
    let (m, mu) = measure_of(p)?;
    let (k, nu) = measure_of(q)?;
    if m != k {
        return Err(Error::DegreeMismatch(m, k));
    }
    if mu.space() != nu.space() {
        return Err(Error::SpaceMismatch {
            left: mu.space(),
            right: nu.space(),
        });
    }
    Ok(())
}

/// `P ⊥ Q` iff `|μ_P| ∧ |μ_Q| = 0`, limit atoms included.
pub fn polys_disjoint(p: &Polynomial, q: &Polynomial) -> Result<bool> {
    same_shape(p, q)?;
    measure_of(p)?.1.is_disjoint(measure_of(q)?.1)
}

pub fn carriers_disjoint(p: &Polynomial, q: &Polynomial) -> Result<bool> {
    carrier(p)?.is_disjoint(&carrier(q)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NakanoReport {
    pub order_continuous_p: bool,
    pub order_continuous_q: bool,
    pub polys_disjoint: bool,
    pub carriers_disjoint: bool,
    pub hypothesis_met: bool,
    pub equivalence_holds: bool,
}

impl NakanoReport {
    /// The theorem is only violated if its hypothesis holds and the
    /// equivalence does not.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_met || self.equivalence_holds
    }
}

/// `nakanoVerify`.
pub fn nakano_verify(p: &Polynomial, q: &Polynomial) -> Result<NakanoReport> {
    same_shape(p, q)?;
    let order_continuous_p = oa_order_continuity(p)?;
    let order_continuous_q = oa_order_continuity(q)?;
    let polys = polys_disjoint(p, q)?;
    let carriers = carriers_disjoint(p, q)?;
    Ok(NakanoReport {
        order_continuous_p,
        order_continuous_q,
        polys_disjoint: polys,
        carriers_disjoint: carriers,
        hypothesis_met: order_continuous_p || order_continuous_q,
        equivalence_holds: polys == carriers,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalCarrierVerdict {
    /// `C(P_a) = C(P) ∩ E_a`.
    pub carrier_identity: bool,
    /// `N(P_a) = N(P) ∩ E_a`.
    pub null_identity: bool,
    pub passed: bool,
}

fn restricted_poly(p: &Polynomial, a: &PrincipalIdeal) -> Result<(Polynomial, Vec<usize>)> {
    let r = restrict(&LocalObject::Polynomial(p.clone()), a)?;
    match (r.induced, r.masked) {
        (Some(LocalObject::Polynomial(q)), _) => Ok((q, a.support().into_iter().collect())),
        (None, LocalObject::Polynomial(q)) => {
            let horizon = measure_of(&q)?.1.support().last().map_or(0, |t| t + 1);
            Ok((q, (0..horizon).collect()))
        }
        _ => unreachable!("restricting a polynomial yields a polynomial"),
    }
}

/// `localCarrierCheck`. Both sides are computed independently: the left
/// from the induced polynomial on `supp a`, mapped back to parent points.
pub fn local_carrier_check(p: &Polynomial, a: &PrincipalIdeal) -> Result<LocalCarrierVerdict> {
    let (pa, back) = restricted_poly(p, a)?;
    let lift = |s: &BTreeSet<usize>| -> BTreeSet<usize> { s.iter().map(|&j| back[j]).collect() };
    let supp_a = a.support();
    let in_ideal = |t: &usize| supp_a.contains(t) || (!a.space().is_finite() && a.generator().at(*t).is_positive());

    let local_carrier = lift(&carrier(&pa)?.isolated_support);
    let global_carrier: BTreeSet<usize> = carrier(p)?.isolated_support.into_iter().filter(in_ideal).collect();
    let carrier_identity = local_carrier == global_carrier;

    let null_identity = match (null_ideal(&pa)?.support, null_ideal(p)?.support) {
        (Some(local), Some(global)) => lift(&local) == global.into_iter().filter(in_ideal).collect(),
        // on ω+1 the restriction is masked in parent coordinates
        _ => {
            let n_a = null_ideal(&pa)?;
            let n = null_ideal(p)?;
            n_a.vanishes_on == n.vanishes_on.iter().copied().filter(in_ideal).collect()
        }
    };
    Ok(LocalCarrierVerdict {
        carrier_identity,
        null_identity,
        passed: carrier_identity && null_identity,
    })
}

/// `C(P) ⊥ C(Q)` iff `C(P_a) ⊥ C(Q_a)` for every default generator.
pub fn local_carrier_disjointness(p: &Polynomial, q: &Polynomial) -> Result<bool> {
    let global = carriers_disjoint(p, q)?;
    let horizon = [p, q]
        .iter()
        .filter_map(|r| r.as_measure()?.support().last().copied())
        .max()
        .map_or(0, |t| t + 1);
    let mut all_local = true;
    for a in default_generators(p.space(), horizon) {
        let (pa, _) = restricted_poly(p, &a)?;
        let (qa, _) = restricted_poly(q, &a)?;
        all_local &= carriers_disjoint(&pa, &qa)?;
    }
    Ok(global == all_local)
}
