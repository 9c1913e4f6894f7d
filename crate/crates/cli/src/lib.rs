//! Suite runner, instance IO and report emission behind the `riesz-lab`
//! binary.

pub mod commands;
pub mod config;
pub mod instance;
pub mod report;
pub mod suites;

pub use config::{Format, SpaceSpec, SuiteConfig, SuiteName, Trials};
pub use instance::{parse_instance_file, parse_instance_str, Instance, ParseError};
pub use report::{emit, Finding, PropertyReport, Report};
pub use suites::{command_suite, reverify_report, run_suite, Case, Witness};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] riesz_lab::Error),
    #[error("payload does not match property {property}: {reason}")]
    Payload { property: String, reason: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: property failures are reported, not raised, so
    /// every error here is a usage or input problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
