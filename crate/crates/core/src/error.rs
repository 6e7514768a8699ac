use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("radicand {0} is a perfect square")]
    SquareRadicand(String),
    #[error("radicand {0} is not positive")]
    NonPositiveRadicand(String),
    #[error("radicands {0} and {1} differ")]
    RadicandMismatch(String, String),
    #[error("rational number has no periodic continued fraction")]
    Rational,
    #[error("continued fraction did not become periodic within {0} digits")]
    InternalOverflow(usize),
    #[error("word is empty")]
    EmptyWord,
    #[error("word letters must be positive integers")]
    NonPositiveLetter,
    #[error("word has odd length {0}")]
    OddWord(usize),
    #[error("rotation index {index} outside 1..={len}")]
    RotationIndex { index: usize, len: usize },
    #[error("word is not built from the letters 1 and 2")]
    NotMarkovWord,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("matrix is not hyperbolic (det {det}, trace {trace})")]
    NotHyperbolic { det: String, trace: String },
    #[error("point is not in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("iteration did not converge: {0}")]
    NonConvergence(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("argument outside domain: {0}")]
    OutOfDomain(String),
    #[error("value expected to be real has imaginary part {0:e}")]
    RealityViolation(f64),
    #[error("function fails the arc hypotheses: {0}")]
    ArcHypothesis(String),
    #[error("quadrature failed to reach tolerance: {0}")]
    QuadratureFailure(String),
    #[error("integration path too close to a singularity: {0}")]
    PathSingularity(String),
    #[error("grid or refinement produced a non-finite value at {0:?}")]
    NonFinite(Vec<f64>),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
