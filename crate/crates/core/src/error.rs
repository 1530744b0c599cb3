use thiserror::Error;

/// Errors surfaced by the algebra kernels and verification drivers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("variable context mismatch: [{0}] vs [{1}]")]
    ContextMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("generator context mismatch")]
    GeneratorMismatch,
    #[error("tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("tensor arity {0} outside supported range 1..=3")]
    ArityRange(usize),
    #[error("leg index {leg} out of range for arity {arity}")]
    LegOutOfRange { leg: usize, arity: usize },
    #[error("exponent series has a term of deformation degree 0 or a bare identity term")]
    ExpDegreeZero,
    #[error("series constant term is not the identity")]
    ConstantTermNotOne,
    #[error("singular denominator: {0}")]
    SingularDenominator(String),
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("twist truncation order {0} too low for realization extraction (need >= 2)")]
    TruncationTooLow(u32),
    #[error("kappa must be nonzero")]
    ZeroKappa,
    #[error("division by zero")]
    DivisionByZero,
    #[error("probe momentum has no differential-operator realization")]
    ProbeNotRealizable,
    #[error("space dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
