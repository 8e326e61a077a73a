use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),

    #[error("tensor product needs at least one factor")]
    EmptyFactors,

    #[error("unknown subsystem `{0}`")]
    UnknownSubsystem(String),

    #[error("subsystem `{label}` has invalid dimension {dim}: {reason}")]
    InvalidDimension {
        label: String,
        dim: usize,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("layout mismatch between operands")]
    LayoutMismatch,

    #[error("zero detuning `{0}`")]
    ZeroDetuning(&'static str),

    #[error("invalid cutoff {cutoff}: {reason}")]
    InvalidCutoff { cutoff: usize, reason: &'static str },

    #[error("negative decay rate `{0}`")]
    NegativeDecay(&'static str),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("leakage {leakage:.3} exceeds 0.5; parameters leave the dispersive gate regime")]
    RegimeViolation { leakage: f64 },

    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}
