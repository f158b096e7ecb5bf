use std::process::ExitCode;

use thiserror::Error;

/// Exit status for a run whose checks did not all pass.
pub const EXIT_VERIFY_FAILED: u8 = 1;
/// Exit status for unreadable or invalid input.
pub const EXIT_PARSE: u8 = 2;
/// Exit status for a numerical solver that gave up.
pub const EXIT_SOLVER: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Geometry(#[from] polarity_core::Error),
    #[error("{message}")]
    Solver { message: String, log: String },
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Solver { .. } => EXIT_SOLVER,
            CliError::Geometry(polarity_core::Error::NoConvergence { .. }) => EXIT_SOLVER,
            _ => EXIT_PARSE,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.status())
    }

    /// Turns a failed numerical run into a solver error with its iterate log.
    pub fn solver(e: polarity_core::Error) -> Self {
        let log = match &e {
            polarity_core::Error::NoConvergence { iterates, .. } => iterates
                .iter()
                .enumerate()
                .map(|(k, x)| format!("iterate {k}: {}\n", crate::report::coords(x)))
                .collect(),
            _ => String::new(),
        };
        CliError::Solver {
            message: e.to_string(),
            log,
        }
    }
}
