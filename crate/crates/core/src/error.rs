use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Hypothesis failures inside the verdict engine are not errors: they are
/// recorded in the certificate. `HypothesisUnmet` is only raised by the
/// standalone operations that refuse to run without their preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero (or by a non-invertible element of a reducible quotient ring)")]
    DivisionByZero,
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("invalid number field: {0}")]
    InvalidField(String),

    #[error("schema error: {0}")]
    Schema(String),
    #[error("crossing {crossing} joins component {component} to itself; blow up the point first so that every crossing is a normal crossing of two distinct components")]
    SelfLoop { crossing: String, component: String },
    #[error("dual graph is disconnected: {0}")]
    Disconnected(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("bad field element at {location}: {reason}")]
    BadFieldElement { location: String, reason: String },

    #[error("subcurve selection is empty")]
    EmptySelection,
    #[error("subcurve selection does not induce a connected curve: {0}")]
    DisconnectedSelection(String),

    #[error("residual representation is not trivial ({0})")]
    NontrivialRepresentation(String),
    #[error("saddle-node crossing {0} has no residue quotient")]
    SaddleNodePresent(String),
    #[error("dual graph is not a tree ({0} independent cycles)")]
    NotATree(usize),
    #[error("hypothesis `{name}` unmet: {evidence}")]
    HypothesisUnmet { name: String, evidence: String },
    #[error("Gorenstein data inconsistent: {0}")]
    GorensteinInconsistent(String),
    #[error("index validation reported {0} error(s)")]
    ValidationFailed(usize),

    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
