use thiserror::Error;

/// Errors produced by the quantization model and the sweep pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quantization parameter {0} outside {{2,...,31}}")]
    QuantParamRange(i64),

    #[error("deadzone factor {0} outside [1, 2]")]
    DeadzoneFactor(f64),

    #[error("weighting entry must be strictly positive, got {0}")]
    NonPositiveWeight(f64),

    #[error("variance must be strictly positive, got {0}")]
    NonPositiveVariance(f64),

    #[error("correlation parameter {name} must lie in (0, 1), got {value}")]
    CorrelationRange { name: &'static str, value: f64 },

    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("sample count must be at least {min}, got {got}")]
    SampleCount { min: usize, got: usize },

    #[error(
        "distortion series did not converge: tail mass {tail:.3e} above tolerance \
         {tol:.3e} after {terms} terms"
    )]
    TruncationFailure { tail: f64, tol: f64, terms: usize },

    #[error("truncation policy invalid: {0}")]
    TruncationPolicy(&'static str),

    #[error("zero-variance input to correlation")]
    DegenerateCorrelation,

    #[error("sequence length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("sequences must hold at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("empty parameter range: {0}")]
    EmptyRange(&'static str),

    #[error("coupled mode draws requested but the first pass did not retain them")]
    MissingSharedDraws,

    #[error(
        "variance-difference routes disagree at q1={q1} q2={q2}: direct {direct:.17e} \
         vs decomposed {decomposed:.17e}"
    )]
    RouteMismatch {
        q1: u8,
        q2: u8,
        direct: f64,
        decomposed: f64,
    },

    #[error("statistic grid has {values} values but axes imply {expected}")]
    GridShape { values: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
