use std::fmt::Write as _;
use std::time::Duration;

use riesz_lab::lattice::Space;
use serde::{Deserialize, Serialize};

use crate::config::{Format, SuiteConfig, SuiteName, Trials};
use crate::suites::{Case, Witness};

/// Configuration as echoed in a report; enough to re-run every check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfigEcho {
    pub m: usize,
    pub space: Space,
    pub trials: Trials,
    pub seed: u64,
    pub probe_depth: usize,
    pub samples: usize,
}

impl ConfigEcho {
    pub fn of(c: &SuiteConfig) -> ConfigEcho {
        ConfigEcho {
            m: c.m,
            space: c.space,
            trials: c.trials,
            seed: c.seed,
            probe_depth: c.probe_depth,
            samples: c.samples,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Finding {
    pub trial: u64,
    pub case: Case,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Set when checking the case raised an error instead of a verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyReport {
    pub name: String,
    pub passed: bool,
    pub trials: u64,
    pub failure_count: u64,
    /// The first failures by trial index.
    pub failures: Vec<Finding>,
    /// Violations the property expects, such as counterexamples found for
    /// forms that are not orthosymmetric.
    pub witnesses: Vec<Finding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub suite: SuiteName,
    pub config: ConfigEcho,
    pub passed: bool,
    pub properties: Vec<PropertyReport>,
    /// Not serialised, so identical runs give identical bytes.
    #[serde(skip)]
    pub wall_time: Duration,
}

fn human(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let c = &r.config;
        let _ = writeln!(
            out,
            "suite {} (m={}, space={}, trials={}, seed={})",
            r.suite, c.m, c.space, c.trials, c.seed
        );
        for p in &r.properties {
            let status = if p.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "  {status} {:<36} {} trials", p.name, p.trials);
            if p.failure_count > 0 {
                let _ = write!(out, ", {} failures", p.failure_count);
            }
            if !p.witnesses.is_empty() {
                let _ = write!(out, ", {} witnesses", p.witnesses.len());
            }
            out.push('\n');
            for f in &p.failures {
                let detail = f.error.clone().unwrap_or_else(|| "violation".into());
                let _ = writeln!(out, "       trial {}: {detail}", f.trial);
            }
        }
        let _ = writeln!(
            out,
            "  {} in {:.2}s",
            if r.passed { "passed" } else { "FAILED" },
            r.wall_time.as_secs_f64()
        );
    }
    out
}

/// `reportEmit`. One report is emitted as an object, several as an array.
pub fn emit(reports: &[Report], format: Format) -> Result<Vec<u8>, serde_json::Error> {
    match format {
        Format::Human => Ok(human(reports).into_bytes()),
        Format::Json => {
            let mut bytes = match reports {
                [one] => serde_json::to_vec_pretty(one)?,
                many => serde_json::to_vec_pretty(many)?,
            };
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

/// Parses what [`emit`] wrote in JSON format.
pub fn load_reports(bytes: &[u8]) -> Result<Vec<Report>, serde_json::Error> {
    let value: serde_json::Value = serde_json::from_slice(bytes)?;
    if value.is_array() {
        serde_json::from_value(value)
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}
