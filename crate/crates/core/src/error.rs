use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("monomial arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("expected an ideal (ambient rank 1), found rank {0}")]
    NotAnIdeal(usize),
    #[error("presentation is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("operation needs the standard grading (all variable weights 1)")]
    NonStandardGrading,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("local cohomology H^{p} did not stabilize within power cap {cap} on window [{lo}, {hi}]")]
    Inconclusive { p: usize, cap: usize, lo: i64, hi: i64 },
    #[error("computation cancelled")]
    Cancelled,
    #[error("depth undefined: I*M = M")]
    DepthUndefined,
    #[error("operation undefined on the zero module")]
    ZeroModule,
    #[error("the associated sheaf is zero")]
    ZeroSheaf,
    #[error("sheaf has zero-dimensional support; every twist is regular")]
    RegularityUnbounded,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("chart block is singular")]
    SingularBlock,
    #[error("generic fiber witnesses disagree: {0}")]
    GenericFiberDisagreement(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
