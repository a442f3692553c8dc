use thiserror::Error;

/// Errors raised by the group computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("budget exceeded while {what}: limit {limit}")]
    Budget { what: String, limit: usize },

    #[error("unknown group descriptor `{0}`")]
    UnknownGroup(String),

    #[error("unsupported field size {0}: only prime q is supported")]
    UnsupportedField(u64),

    #[error("subgroup is not contained in the ambient group")]
    NotContained,

    #[error("{0} does not divide the group order {1}")]
    NotDivisor(usize, usize),

    #[error("map is not a crossed homomorphism for the given action")]
    NotCrossed,

    #[error("group has a non-trivial center")]
    NontrivialCenter,

    #[error("h does not agree with f modulo inner automorphisms")]
    NotInHomF,

    #[error("missing (f, g, h) parameterization on the subgroup record")]
    MissingParameterization,

    #[error("group is not almost simple")]
    NotAlmostSimple,

    #[error("formula inapplicable: {0}")]
    FormulaInapplicable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("duplicate record for ({group}, {order}) at line {line}")]
    DuplicateRecord { group: String, order: u64, line: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, limit: usize) -> Self {
        Error::Budget { what: what.into(), limit }
    }

    /// True for resource exhaustion, as opposed to a violated claim or bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
