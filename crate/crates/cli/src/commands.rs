//! The single-instance commands: order continuity of one polynomial, the
//! counterexample demo, carriers, Nakano and localisation.

use std::path::Path;

use riesz_lab::carriers::{carrier, nakano_verify, null_ideal, BandDescriptor, NakanoReport, NullIdeal};
use riesz_lab::forms::{to_measure, Polynomial};
use riesz_lab::lattice::{Element, PrincipalIdeal};
use riesz_lab::localisation::{restrict, RestrictedObject};
use riesz_lab::ordercont::{
    discontinuity_witness, oa_order_continuity, urysohn_witness_net, zero_order_continuity_probe,
    DiscontinuityWitness, Functional, ProbeVerdict, ProductFunctionalPolynomial,
};
use riesz_lab::{Error, Rational};
use serde::Serialize;

use crate::instance::{parse_instance_file, Instance};
use crate::CliError;

/// A command result and whether it counts as a pass for the exit status.
pub struct Outcome<T> {
    pub body: T,
    pub passed: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Reads a polynomial; a bare measure becomes the degree-`m` polynomial.
pub fn load_polynomial(path: &Path, m: usize) -> Result<Polynomial, CliError> {
    match parse_instance_file(path)? {
        Instance::Polynomial(p) => Ok(p),
        Instance::Measure(mu) => Ok(Polynomial::measure(m, mu)?),
        Instance::SymTensor(t) => Ok(Polynomial::Tensor(t)),
        other => Err(usage(format!("{}: expected a polynomial, got {}", path.display(), other.kind()))),
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderContinuityReport {
    pub kind: &'static str,
    /// Whether `order_continuous` is a decision rather than a probe verdict.
    pub decided: bool,
    pub order_continuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_probe: Option<ProbeVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DiscontinuityWitness>,
}

/// `check order-continuity --poly`.
pub fn check_order_continuity(p: &Polynomial, depth: usize) -> Result<Outcome<OrderContinuityReport>, CliError> {
    let on_omega = !p.space().is_finite();
    let zero_probe = if on_omega {
        Some(zero_order_continuity_probe(p, &[urysohn_witness_net(Rational::one())?], depth)?)
    } else {
        None
    };
    let (decided, order_continuous, witness) = match p {
        // every net on a finite space converges coordinatewise
        _ if !on_omega => (true, true, None),
        Polynomial::Measure { .. } => (true, oa_order_continuity(p)?, None),
        Polynomial::Product(pf) => match discontinuity_witness(pf, depth) {
            Ok(w) => (true, false, Some(w)),
            Err(Error::NoWitness(_)) => (false, zero_probe.as_ref().is_some_and(|v| v.passed), None),
            Err(e) => return Err(e.into()),
        },
        Polynomial::Tensor(_) => unreachable!("tensors live on finite spaces"),
    };
    Ok(Outcome {
        passed: order_continuous,
        body: OrderContinuityReport {
            kind: p.kind_name(),
            decided,
            order_continuous,
            zero_probe,
            witness,
        },
    })
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CounterexampleDemo {
    pub m: usize,
    pub polynomial: ProductFunctionalPolynomial,
    pub base_point: Element,
    /// The first few members `x_n` of the net.
    pub net_samples: Vec<Element>,
    pub values: Vec<(usize, Rational)>,
    pub gap: Rational,
    pub gap_from: usize,
    pub verified: bool,
    /// The same polynomial is order continuous at 0.
    pub zero_probe: bool,
}

const NET_SAMPLES: usize = 5;

/// `demo counterexample`: `φ = x ↦ x(1)`, `ψ = lim`.
pub fn demo_counterexample(m: usize, depth: usize) -> Result<Outcome<CounterexampleDemo>, CliError> {
    if m < 2 {
        return Err(usage("the counterexample needs m >= 2"));
    }
    if depth == 0 {
        return Err(usage("probe depth must be positive"));
    }
    let p = ProductFunctionalPolynomial::new(m, Functional::Coordinate(0), Functional::Limit)?;
    let w = discontinuity_witness(&p, depth)?;
    let verified = w.reverify(&p)?;
    let probe = zero_order_continuity_probe(
        &Polynomial::Product(p.clone()),
        &[urysohn_witness_net(Rational::one())?],
        depth,
    )?;
    let net_samples = (1..=NET_SAMPLES.min(depth))
        .map(|n| w.net.sequence.member(n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome {
        passed: verified && probe.passed,
        body: CounterexampleDemo {
            m,
            polynomial: p,
            base_point: w.base_point,
            net_samples,
            values: w.values,
            gap: w.gap,
            gap_from: w.gap_from,
            verified,
            zero_probe: probe.passed,
        },
    })
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CarrierReport {
    pub carrier: BandDescriptor,
    pub null_ideal: NullIdeal,
}

/// `carrier --poly`. A diagonal tensor is read as its measure first.
pub fn carrier_report(p: &Polynomial) -> Result<Outcome<CarrierReport>, CliError> {
    let p = match p {
        Polynomial::Tensor(_) => Polynomial::measure(p.degree(), to_measure(p)?)?,
        _ => p.clone(),
    };
    Ok(Outcome {
        passed: true,
        body: CarrierReport {
            carrier: carrier(&p)?,
            null_ideal: null_ideal(&p)?,
        },
    })
}

/// `nakano --p --q`; fails when the hypothesis holds and the equivalence
/// does not.
pub fn nakano(p: &Polynomial, q: &Polynomial) -> Result<Outcome<NakanoReport>, CliError> {
    let r = nakano_verify(p, q)?;
    Ok(Outcome {
        passed: r.consistent(),
        body: r,
    })
}

/// `localize --obj --gen`.
pub fn localize(obj: &Path, generator: &Path) -> Result<Outcome<RestrictedObject>, CliError> {
    let local = parse_instance_file(obj)?
        .into_local()
        .ok_or_else(|| usage(format!("{}: an element cannot be localised", obj.display())))?;
    let a = match parse_instance_file(generator)? {
        Instance::Element(a) => a,
        other => return Err(usage(format!("{}: expected an element, got {}", generator.display(), other.kind()))),
    };
    let ideal = PrincipalIdeal::new(a)?;
    Ok(Outcome {
        passed: true,
        body: restrict(&local, &ideal)?,
    })
}
