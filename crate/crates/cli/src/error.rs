use std::fmt;

use klm_core::Error;

/// Failure classes with the exit codes scripts depend on.
#[derive(Debug)]
pub enum CliError {
    /// Bad or unreadable config, bad flag combination, unwritable output.
    Config(String),
    /// NaN/inf in a result, or a state the protocol cannot continue from.
    Numerical(String),
    /// The numeric gate leaked more than half of the population.
    Regime(String),
    /// One or more invariants failed in `validate`.
    Validation(usize),
}

impl CliError {
    pub fn config(key: &str, msg: impl fmt::Display) -> Self {
        CliError::Config(format!("`{key}`: {msg}"))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Regime(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Regime(m) => write!(f, "regime violation: {m}"),
            CliError::Validation(n) => write!(f, "{n} invariant check(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFinite(_) | Error::ProtocolViolation(_) => CliError::Numerical(e.to_string()),
            Error::RegimeViolation { .. } => CliError::Regime(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
