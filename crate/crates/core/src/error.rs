use thiserror::Error;

/// Errors raised by constructors, measures and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("duplicate alphabet label {0:?}")]
    DuplicateLabel(String),

    #[error("negative or non-finite probability {value} at index {index}")]
    InvalidMass { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("row {row} sums to {sum}, expected 1")]
    RowNotNormalized { row: usize, sum: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid order alpha = {0}")]
    InvalidOrder(f64),

    #[error("order alpha = {0} is below 1; leakage measures require alpha >= 1")]
    OrderBelowOne(f64),

    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange { name: &'static str, value: f64, expected: &'static str },

    #[error("empty list of {0}")]
    EmptyList(&'static str),

    #[error("distortion ball of input {input:?} is empty")]
    EmptyBall { input: String },

    #[error("target distribution puts no mass on the ball of input {input:?}")]
    ZeroTargetMass { input: String },

    #[error("a prior is required at alpha = 1")]
    MissingPrior,

    #[error("generator rejected: {0}")]
    InvalidGenerator(String),

    #[error(
        "f(0) is infinite: a hard distortion constraint forces zero outputs, \
         which is incompatible with this privacy measure"
    )]
    IncompatibleGenerator,

    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("invalid syntax: {0}")]
    Syntax(String),

    #[error("{path}: {source}")]
    Input {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotConverged { .. } => 3,
            Error::IncompatibleGenerator => 4,
            Error::Input { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
