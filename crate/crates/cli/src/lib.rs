//! Batch driver: scenario files in, CSV tables and a verification report out.
//!
//! The scenario format is flat `key = value` text with dotted section
//! prefixes (`medium.K = 1e-6`), full-line `#` comments and comma-separated
//! number lists. Outputs are RFC-4180 CSV files with LF line endings, full
//! shortest-round-trip float formatting and a `#` comment block recording the
//! complete parameter set and code version.

pub mod report;
pub mod run;
pub mod scenario;
pub mod sweep;

pub use report::{RunReport, ZReport};
pub use run::run;
pub use scenario::{OutputFlags, Scenario, SimSettings};
pub use sweep::{sweep, SweepParam, SweepReport};

/// Driver-level error. Exit-code mapping: input problems (IO, parse,
/// validation) exit 2, numeric failures exit 3, verification failures exit 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid scenario: {message}")]
    Validation { message: String },
    #[error("numeric failure: {0}")]
    Numeric(#[from] vaporfront::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse { .. } | CliError::Validation { .. } => 2,
            CliError::Numeric(_) | CliError::Csv(_) => 3,
        }
    }
}
