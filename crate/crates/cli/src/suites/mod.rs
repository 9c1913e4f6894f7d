//! Seeded property suites.
//!
//! A property generates a [`Case`] per trial and checks it. Cases are plain
//! data, so a failing case stored in a report can be reloaded and checked
//! again. Trial `t` of property `k` draws from its own stream derived from
//! `(seed, k, t)`, so trials run in any order and in parallel.

mod cases;
mod forms;
mod lattice;
mod local;
mod order;

use std::time::Instant;

use rayon::prelude::*;
use riesz_lab::lattice::{Element, Space};
use riesz_lab::random::Gen;
use riesz_lab::Rational;

pub use cases::{Case, Witness};

use crate::config::{SuiteConfig, SuiteName, Trials};
use crate::report::{ConfigEcho, Finding, PropertyReport, Report};
use crate::CliError;

const MAX_FAILURES: usize = 10;
const MAX_WITNESSES: usize = 3;

/// What a property check needs besides the case.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub m: usize,
    pub space: Space,
    pub samples: usize,
    pub depth: usize,
}

impl Ctx {
    fn of(c: &ConfigEcho) -> Ctx {
        Ctx {
            m: c.m,
            space: c.space,
            samples: c.samples,
            depth: c.probe_depth,
        }
    }

    fn n(&self) -> usize {
        self.space.size().unwrap_or(riesz_lab::random::OMEGA_HORIZON)
    }
}

pub struct Outcome {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Outcome {
    fn holds(holds: bool) -> Outcome {
        Outcome { holds, witness: None }
    }
}

type Generate = fn(&Ctx, &mut Gen) -> Case;
/// Builds a case from weight vectors in `{−1, 0, 1}^n`; `None` skips the tuple.
type Enumerate = fn(&Ctx, Vec<Element>) -> Option<Case>;
type Check = fn(&Ctx, &Case) -> Result<Outcome, CliError>;

#[derive(Clone, Copy)]
enum Arity {
    Fixed(usize),
    /// One vector per form argument.
    Degree,
}

pub struct Property {
    pub name: &'static str,
    generate: Generate,
    /// Number of weight vectors and the builder, for exhaustive runs.
    exhaustive: Option<(Arity, Enumerate)>,
    check: Check,
    /// The case is fixed; one trial suffices.
    once: bool,
    applies: fn(&Ctx) -> bool,
}

impl Property {
    fn new(name: &'static str, generate: Generate, check: Check) -> Property {
        Property {
            name,
            generate,
            exhaustive: None,
            check,
            once: false,
            applies: |_| true,
        }
    }

    fn exhaustive(mut self, vectors: usize, build: Enumerate) -> Property {
        self.exhaustive = Some((Arity::Fixed(vectors), build));
        self
    }

    fn exhaustive_per_argument(mut self, build: Enumerate) -> Property {
        self.exhaustive = Some((Arity::Degree, build));
        self
    }

    fn once(mut self) -> Property {
        self.once = true;
        self
    }

    fn when(mut self, applies: fn(&Ctx) -> bool) -> Property {
        self.applies = applies;
        self
    }
}

pub fn properties(suite: SuiteName) -> Vec<Property> {
    match suite {
        SuiteName::LatticeAxioms => lattice::axioms(),
        SuiteName::Rearrangement => lattice::rearrangement(),
        SuiteName::Orthosymmetry => forms::orthosymmetry(),
        SuiteName::OaCharacterisations => forms::oa_characterisations(),
        SuiteName::Isometry => forms::isometry(),
        SuiteName::Localisation => local::localisation(),
        SuiteName::OrderContinuity => order::order_continuity(),
        SuiteName::Carriers => local::carriers(),
        SuiteName::Nakano => local::nakano(),
        SuiteName::Counterexample => order::counterexample(),
    }
}

fn stream_seed(seed: u64, property: usize) -> u64 {
    seed ^ (property as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// The `index`-th tuple of `vectors` weight vectors in `{−1, 0, 1}^n`.
fn weight_vectors(n: usize, vectors: usize, mut index: u64) -> Vec<Element> {
    (0..vectors)
        .map(|_| {
            let values = (0..n)
                .map(|_| {
                    let w = (index % 3) as i64 - 1;
                    index /= 3;
                    Rational::from_int(w)
                })
                .collect();
            Element::finite(values).expect("n >= 1")
        })
        .collect()
}

struct TrialResult {
    trial: u64,
    failure: Option<Finding>,
    witness: Option<Finding>,
}

fn run_trial(p: &Property, ctx: &Ctx, trial: u64, case: Case) -> TrialResult {
    match (p.check)(ctx, &case) {
        Ok(out) => {
            let finding = Finding {
                trial,
                case,
                witness: out.witness,
                error: None,
            };
            if out.holds {
                TrialResult {
                    trial,
                    failure: None,
                    witness: finding.witness.is_some().then_some(finding),
                }
            } else {
                TrialResult {
                    trial,
                    failure: Some(finding),
                    witness: None,
                }
            }
        }
        Err(e) => TrialResult {
            trial,
            failure: Some(Finding {
                trial,
                case,
                witness: None,
                error: Some(e.to_string()),
            }),
            witness: None,
        },
    }
}

fn run_property(index: usize, p: &Property, config: &SuiteConfig, ctx: &Ctx) -> Result<PropertyReport, CliError> {
    let seed = stream_seed(config.seed, index);
    let (count, exhaustive) = match (p.once, config.trials) {
        (true, _) => (1, None),
        (false, Trials::Count(t)) => (t, None),
        (false, Trials::Exhaustive) => {
            let (vectors, build) = p.exhaustive.ok_or_else(|| {
                CliError::Usage(format!("property {} has no exhaustive enumeration", p.name))
            })?;
            let n = ctx.space.size().expect("validated finite");
            let vectors = match vectors {
                Arity::Fixed(k) => k,
                Arity::Degree => ctx.m,
            };
            (3u64.pow((n * vectors) as u32), Some((n, vectors, build)))
        }
    };
    let results: Vec<TrialResult> = (0..count)
        .into_par_iter()
        .filter_map(|t| {
            let case = match exhaustive {
                Some((n, vectors, build)) => build(ctx, weight_vectors(n, vectors, t))?,
                None => (p.generate)(ctx, &mut Gen::for_trial(seed, t)),
            };
            let r = run_trial(p, ctx, t, case);
            (r.failure.is_some() || (r.witness.is_some() && t < 64)).then_some(r)
        })
        .collect();
    let mut failures: Vec<Finding> = Vec::new();
    let mut witnesses: Vec<Finding> = Vec::new();
    let mut failure_count = 0;
    let mut ordered = results;
    ordered.sort_by_key(|r| r.trial);
    for r in ordered {
        if let Some(f) = r.failure {
            failure_count += 1;
            if failures.len() < MAX_FAILURES {
                failures.push(f);
            }
        }
        if let Some(w) = r.witness {
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(w);
            }
        }
    }
    Ok(PropertyReport {
        name: p.name.to_string(),
        passed: failure_count == 0,
        trials: count,
        failure_count,
        failures,
        witnesses,
    })
}

/// Runs one suite of `config`.
pub fn run_suite(suite: SuiteName, config: &SuiteConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let echo = ConfigEcho::of(config);
    let ctx = Ctx::of(&echo);
    let mut reports = Vec::new();
    for (i, p) in properties(suite).iter().enumerate() {
        if (p.applies)(&ctx) {
            reports.push(run_property(i, p, config, &ctx)?);
        }
    }
    Ok(Report {
        suite,
        passed: reports.iter().all(|r| r.passed),
        config: echo,
        properties: reports,
        wall_time: start.elapsed(),
    })
}

/// `commandSuite`: validates the configuration and runs every listed suite.
pub fn command_suite(config: &SuiteConfig) -> Result<Vec<Report>, CliError> {
    config.validate()?;
    config.suites.iter().map(|&s| run_suite(s, config)).collect()
}

fn find_property(suite: SuiteName, name: &str) -> Result<Property, CliError> {
    properties(suite)
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| CliError::Payload {
            property: name.to_string(),
            reason: format!("suite {suite} has no such property"),
        })
}

/// Re-checks every stored finding of a (reloaded) report. Failures must
/// fail again in the same way; witnesses must re-verify against their case.
/// Returns the number of findings checked.
pub fn reverify_report(report: &Report) -> Result<usize, CliError> {
    let ctx = Ctx::of(&report.config);
    let mut checked = 0;
    for pr in &report.properties {
        let p = find_property(report.suite, &pr.name)?;
        let mismatch = |trial: u64, reason: &str| CliError::Payload {
            property: pr.name.clone(),
            reason: format!("trial {trial}: {reason}"),
        };
        for f in &pr.failures {
            match ((p.check)(&ctx, &f.case), &f.error) {
                (Ok(out), None) if !out.holds => {}
                (Err(e), Some(msg)) if &e.to_string() == msg => {}
                _ => return Err(mismatch(f.trial, "stored failure does not reproduce")),
            }
            checked += 1;
        }
        for f in &pr.witnesses {
            let w = f.witness.as_ref().ok_or_else(|| mismatch(f.trial, "witness entry without witness"))?;
            if !cases::reverify_witness(&f.case, w)? {
                return Err(mismatch(f.trial, "witness does not re-verify"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
