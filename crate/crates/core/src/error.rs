use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("variable index {index} out of range 1..={num_vars}{}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    IndexOutOfRange {
        index: usize,
        num_vars: usize,
        line: Option<usize>,
    },

    #[error("implicant {subset:?} is contained in implicant {superset:?}")]
    NotAntichain {
        subset: Vec<usize>,
        superset: Vec<usize>,
    },

    #[error("empty implicants are not allowed")]
    EmptyImplicant,

    #[error("number of variables must be in 1..={max}, got {got}")]
    InvalidArity { got: usize, max: usize },

    #[error("input {x} outside [0, 2^{arity})")]
    Domain { x: u64, arity: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("arity {arity} exceeds cap {cap}")]
    ArityTooLarge { arity: usize, cap: usize },

    #[error("arity {arity} is below the minimum of {min}")]
    ArityTooSmall { arity: usize, min: usize },

    #[error("majority family requires odd n, got {0}")]
    EvenArity(usize),

    #[error("{requested} qubits requested, simulator cap is {cap}")]
    TooManyQubits { requested: usize, cap: usize },

    #[error("invalid qubit register: {0}")]
    QubitIndex(String),

    #[error("counting register width must be at least 2, got {0}")]
    WidthTooSmall(usize),

    #[error("state norm {0:e} is too small to measure")]
    DegenerateState(f64),

    #[error("state norm drifted to {0}")]
    NormDrift(f64),

    #[error("constant functions are not accepted by the pipeline")]
    ConstantFunction,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
