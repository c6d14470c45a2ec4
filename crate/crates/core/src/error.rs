use thiserror::Error;

/// Errors raised by the numeric core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dyadic exponent {0} exceeds the supported maximum of 63")]
    ExponentOverflow(u32),
    #[error("rho entry at level {level} is not a 2^{level}-th root of -1")]
    InvalidRho { level: usize },
    #[error("rho choice has no entry for level {0}")]
    MissingRhoLevel(usize),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("beta yields an extremal point of the Chebyshev polynomial of degree {0}")]
    ExtremalBeta(usize),
    #[error("node set is empty")]
    EmptyNodeSet,
    #[error("nodes must be distinct and lie in [-1, 1]")]
    InvalidNodes,
    #[error("expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("probe point {0} coincides with a node")]
    ProbeOnNode(f64),
    #[error("k = {0} is outside every range 2^n + 1 < k <= 2^(n+1), n >= 1")]
    BlockRange(usize),
    #[error("block {0} does not match the expected modified Chebyshev set")]
    BlockMismatch(usize),
    #[error("axis {axis} has {len} points, need at least {needed}")]
    AxisTooShort { axis: usize, len: usize, needed: usize },
    #[error("grid needs at least one axis")]
    NoAxes,
    #[error("Newton factor diagonal entry {0} underflows")]
    Degenerate(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("sample grid of {0} points exceeds the budget of 10^7")]
    SampleBudget(u64),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
