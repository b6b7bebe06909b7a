use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parts sum to {actual}, expected {expected}")]
    PartsSumMismatch { expected: u32, actual: u64 },

    #[error("invalid rational literal {0:?}")]
    RationalSyntax(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("empty input to rational_gcd")]
    EmptyGcdInput,

    #[error("rational_gcd input contains zero")]
    ZeroGcdInput,

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("parameter out of range: {name} = {value} violates {bound}")]
    OutOfRange {
        name: &'static str,
        value: String,
        bound: String,
    },

    #[error("point lies on the hyperplane at infinity (last homogeneous coordinate is zero)")]
    OnHyperplane,

    #[error("all homogeneous coordinates are zero")]
    ZeroHomogeneous,

    #[error("point is not inside the open unit ball (squared norm {0})")]
    OutsideBall(f64),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("product lattice does not contain generator {0}")]
    LatticeNotContained(String),

    #[error("independent evaluations disagree: {0}")]
    OracleMismatch(String),

    #[error("manifold descriptor: {field}: {message}")]
    Descriptor { field: String, message: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn out_of_range(
        name: &'static str,
        value: impl ToString,
        bound: impl Into<String>,
    ) -> Self {
        Error::OutOfRange {
            name,
            value: value.to_string(),
            bound: bound.into(),
        }
    }

    pub(crate) fn descriptor(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Descriptor {
            field: field.into(),
            message: message.into(),
        }
    }
}
