use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid neighborhood: {0}")]
    InvalidNeighborhood(String),
    #[error("transition table too large ({0} entries)")]
    TableTooLarge(u128),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("pattern radius {got} is smaller than required {required}")]
    RadiusTooSmall { required: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("expected a 1D rule")]
    NotOneDimensional,
    #[error("expected radius {expected}, rule has radius {got}")]
    WrongRadius { expected: usize, got: usize },
    #[error("state {0} is not spreading")]
    NotSpreading(String),
    #[error("no convergence certificate supplied; nilpotency equivalence needs a convergent rule")]
    MissingCertificate,
    #[error("neighborhood is not one-way")]
    NotOneWay,
    #[error("change bound exceeded at cell {cell}: {segments} segments, bound allows {allowed}")]
    BoundViolation {
        cell: i64,
        segments: usize,
        allowed: usize,
    },
    #[error("no consistent column assembly ({0})")]
    NoConsistentAssembly(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("change counts not reached within {0} steps")]
    CountsNotReached(usize),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("unknown zoo entry {0}")]
    UnknownZooEntry(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
