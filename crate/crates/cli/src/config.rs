use std::fmt;
use std::str::FromStr;

use riesz_lab::lattice::Space;
use riesz_lab::ordercont::DEFAULT_PROBE_DEPTH;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    LatticeAxioms,
    Rearrangement,
    Orthosymmetry,
    OaCharacterisations,
    Isometry,
    Localisation,
    OrderContinuity,
    Carriers,
    Nakano,
    Counterexample,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::LatticeAxioms,
        SuiteName::Rearrangement,
        SuiteName::Orthosymmetry,
        SuiteName::OaCharacterisations,
        SuiteName::Isometry,
        SuiteName::Localisation,
        SuiteName::OrderContinuity,
        SuiteName::Carriers,
        SuiteName::Nakano,
        SuiteName::Counterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::LatticeAxioms => "lattice-axioms",
            SuiteName::Rearrangement => "rearrangement",
            SuiteName::Orthosymmetry => "orthosymmetry",
            SuiteName::OaCharacterisations => "oa-characterisations",
            SuiteName::Isometry => "isometry",
            SuiteName::Localisation => "localisation",
            SuiteName::OrderContinuity => "order-continuity",
            SuiteName::Carriers => "carriers",
            SuiteName::Nakano => "nakano",
            SuiteName::Counterexample => "counterexample",
        }
    }

    /// Suites whose properties involve polynomials or forms of degree `m`.
    fn needs_degree(self) -> bool {
        self != SuiteName::LatticeAxioms
    }

    pub fn needs_omega(self) -> bool {
        matches!(self, SuiteName::OrderContinuity | SuiteName::Counterexample)
    }

    fn needs_finite(self) -> bool {
        matches!(
            self,
            SuiteName::Orthosymmetry | SuiteName::Localisation
        )
    }

    pub fn supports_exhaustive(self) -> bool {
        matches!(
            self,
            SuiteName::LatticeAxioms
                | SuiteName::Rearrangement
                | SuiteName::Isometry
                | SuiteName::Carriers
                | SuiteName::Nakano
        )
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}")))
    }
}

/// `finite:N` or `omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceSpec(pub Space);

impl FromStr for SpaceSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "omega" | "omega1" | "omega+1" => Ok(SpaceSpec(Space::OmegaPlusOne)),
            _ => {
                let n = s
                    .strip_prefix("finite:")
                    .ok_or_else(|| format!("expected finite:N or omega, got {s:?}"))?;
                let n: usize = n.parse().map_err(|_| format!("bad point count {n:?}"))?;
                if n == 0 {
                    return Err("a finite space needs at least one point".into());
                }
                Ok(SpaceSpec(Space::finite(n)))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Trials {
    Count(u64),
    Exhaustive,
}

impl FromStr for Trials {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exhaustive" {
            return Ok(Trials::Exhaustive);
        }
        s.parse()
            .map(Trials::Count)
            .map_err(|_| format!("expected a trial count or \"exhaustive\", got {s:?}"))
    }
}

impl fmt::Display for Trials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trials::Count(n) => write!(f, "{n}"),
            Trials::Exhaustive => f.write_str("exhaustive"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Json,
}

pub const EXHAUSTIVE_MAX_POINTS: usize = 4;
pub const EXHAUSTIVE_MAX_DEGREE: usize = 3;
pub const DEFAULT_SAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suites: Vec<SuiteName>,
    pub m: usize,
    pub space: Space,
    pub trials: Trials,
    pub seed: u64,
    pub probe_depth: usize,
    /// Tuples drawn per sampled identity check.
    pub samples: usize,
    #[serde(skip)]
    pub format: Format,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Vec::new(),
            m: 2,
            space: Space::finite(3),
            trials: Trials::Count(100),
            seed: 0,
            probe_depth: DEFAULT_PROBE_DEPTH,
            samples: DEFAULT_SAMPLES,
            format: Format::Human,
        }
    }
}

impl SuiteConfig {
    pub fn single(suite: SuiteName) -> SuiteConfig {
        SuiteConfig {
            suites: vec![suite],
            ..SuiteConfig::default()
        }
    }

    /// Rejects configurations no suite can run; never silently adjusts.
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if self.suites.is_empty() {
            return usage("no suite given".into());
        }
        if self.trials == Trials::Count(0) {
            return usage("trials must be at least 1".into());
        }
        if self.probe_depth == 0 {
            return usage("probe depth must be positive".into());
        }
        if self.samples == 0 {
            return usage("samples must be positive".into());
        }
        if self.m == 0 {
            return usage("degree m must be at least 1".into());
        }
        for &s in &self.suites {
            if s.needs_degree() && self.m < 2 {
                return usage(format!("suite {s} needs m >= 2"));
            }
            if s.needs_omega() && self.space.is_finite() {
                return usage(format!("suite {s} runs on omega only"));
            }
            if s.needs_finite() && !self.space.is_finite() {
                return usage(format!("suite {s} needs a finite space"));
            }
            if self.trials == Trials::Exhaustive {
                if !s.supports_exhaustive() {
                    return usage(format!("exhaustive enumeration is not available for suite {s}"));
                }
                match self.space.size() {
                    Some(n) if n <= EXHAUSTIVE_MAX_POINTS => {}
                    _ => {
                        return usage(format!(
                            "exhaustive mode needs finite:N with N <= {EXHAUSTIVE_MAX_POINTS}"
                        ))
                    }
                }
                if self.m > EXHAUSTIVE_MAX_DEGREE {
                    return usage(format!("exhaustive mode needs m <= {EXHAUSTIVE_MAX_DEGREE}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spaces_and_trials() {
        assert_eq!("finite:3".parse::<SpaceSpec>().unwrap().0, Space::finite(3));
        assert_eq!("omega".parse::<SpaceSpec>().unwrap().0, Space::OmegaPlusOne);
        assert!("finite:0".parse::<SpaceSpec>().is_err());
        assert!("circle".parse::<SpaceSpec>().is_err());
        assert_eq!("exhaustive".parse::<Trials>().unwrap(), Trials::Exhaustive);
        assert_eq!("12".parse::<Trials>().unwrap(), Trials::Count(12));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(SuiteConfig::default().validate().is_err());
        let mut c = SuiteConfig::single(SuiteName::Nakano);
        c.validate().unwrap();
        c.trials = Trials::Exhaustive;
        c.validate().unwrap();
        c.space = Space::finite(5);
        assert!(c.validate().is_err());
        let mut c = SuiteConfig::single(SuiteName::Orthosymmetry);
        c.trials = Trials::Exhaustive;
        assert!(c.validate().is_err());
        let mut c = SuiteConfig::single(SuiteName::Counterexample);
        assert!(c.validate().is_err());
        c.space = Space::OmegaPlusOne;
        c.validate().unwrap();
        c.m = 1;
        assert!(c.validate().is_err());
    }
}
