use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealError {
    #[error("divisor ball contains zero")]
    DivisorStraddlesZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("root certification failed at precision {0}")]
    PrecisionExhausted(i64),
    #[error("root lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VandermondeError {
    #[error("trailing root ball {0} meets the distinguished root ball")]
    SingularDenominator(usize),
    #[error("argument shape mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CFiniteError {
    #[error("precision exhausted at {0} bits")]
    PrecisionExhausted(i64),
    #[error("oracle not applicable: {0}")]
    OracleInapplicable(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl From<PolyError> for CFiniteError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::PrecisionExhausted(p) => CFiniteError::PrecisionExhausted(p),
            PolyError::LengthMismatch(a, b) => {
                CFiniteError::Dimension(format!("root lists of length {a} and {b}"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("ultimate inequality needs real coefficients and initial values")]
    NotReal,
    #[error("fuel must be at least 1")]
    NoFuel,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("epsilon must lie strictly between 0 and 1")]
    BadEpsilon,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {msg}")]
    Field { path: String, msg: String },
}
