use thiserror::Error;

/// Errors raised by the symbolic constructions and the numerical pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("implicit series requires F of order >= 2, found a term of degree {0}")]
    LowOrderTerm(u32),
    #[error("system is not weight-homogeneous")]
    NotWeightHomogeneous,
    #[error("weight constraints admit no solution with alpha > 0 and beta > 0")]
    DegenerateWeights,
    #[error("weight constraints do not determine a unique signature (solution space of dimension {0})")]
    AmbiguousWeights(usize),
    #[error("center hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("invalid family parameter c = {0}: requires c < -1/4")]
    InvalidC(String),
    #[error("sigma must have nonzero real part")]
    ZeroSigmaReal,
    #[error("system is not in nilpotent normal form: {0}")]
    NotNormalForm(String),
    #[error("truncated series inconclusive up to order {0}")]
    TruncationInconclusive(usize),
    #[error("origin is not an isolated singular point")]
    NonIsolatedSingularity,
    #[error("first integral is singular at the origin")]
    OriginSingular,
    #[error("could not bracket the section point for level h = {0}")]
    RootBracketFailure(f64),
    #[error("trace did not close: return point misses start by {miss:e} (allowed {allowed:e})")]
    NonClosure { miss: f64, allowed: f64 },
    #[error("orbit from x0 = {x0} did not return to the section: {reason}")]
    NoReturn { x0: f64, reason: String },
    #[error("integrator failure: {0}")]
    Integrator(String),
    #[error("operation requires a model of the nilpotent family")]
    NotFamilyModel,
    #[error("too many target zeros: {given} given, at most {max} realizable")]
    TooManyTargets { given: usize, max: usize },
    #[error("target zeros must be distinct and positive")]
    InvalidTargets,
    #[error("generalized Vandermonde solve is ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors that come from bad input rather than from a numerical step.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::BadRational(_)
                | Error::LowOrderTerm(_)
                | Error::NotWeightHomogeneous
                | Error::DegenerateWeights
                | Error::AmbiguousWeights(_)
                | Error::HypothesisViolation(_)
                | Error::InvalidC(_)
                | Error::ZeroSigmaReal
                | Error::NotNormalForm(_)
                | Error::NotFamilyModel
                | Error::TooManyTargets { .. }
                | Error::InvalidTargets
                | Error::InvalidArgument(_)
        )
    }

    /// Short machine-readable name for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BadRational(_) => "BadRational",
            Error::LowOrderTerm(_) => "LowOrderTerm",
            Error::NotWeightHomogeneous => "NotWeightHomogeneous",
            Error::DegenerateWeights => "DegenerateWeights",
            Error::AmbiguousWeights(_) => "AmbiguousWeights",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::InvalidC(_) => "InvalidC",
            Error::ZeroSigmaReal => "ZeroSigmaReal",
            Error::NotNormalForm(_) => "NotNormalForm",
            Error::TruncationInconclusive(_) => "TruncationInconclusive",
            Error::NonIsolatedSingularity => "NonIsolatedSingularity",
            Error::OriginSingular => "OriginSingular",
            Error::RootBracketFailure(_) => "RootBracketFailure",
            Error::NonClosure { .. } => "NonClosure",
            Error::NoReturn { .. } => "NoReturn",
            Error::Integrator(_) => "Integrator",
            Error::NotFamilyModel => "NotFamilyModel",
            Error::TooManyTargets { .. } => "TooManyTargets",
            Error::InvalidTargets => "InvalidTargets",
            Error::IllConditioned(_) => "IllConditioned",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
