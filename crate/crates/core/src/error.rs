use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate preference: all prize lotteries are indifferent")]
    DegeneratePreference,

    #[error("axiom violation ({axiom}): {detail}")]
    AxiomViolation { axiom: &'static str, detail: String },

    #[error("credal set is empty")]
    EmptyCredalSet,

    #[error("functional is not a maxmin representation: constraints {constraints:?} are jointly infeasible")]
    NotARepresentation { constraints: Vec<usize> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("shape mismatch: expected {expected}, witness {witness:?}")]
    ShapeMismatch { expected: &'static str, witness: Vec<Vec<f64>> },

    #[error("point outside the functional's domain [{lo}, {hi}]")]
    OutOfDomain { lo: f64, hi: f64 },

    #[error("oracle could not compare the queried acts")]
    UnknownComparison,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal a mathematical inconsistency in the
    /// input preferences rather than a usage problem.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::AxiomViolation { .. }
                | Error::NotARepresentation { .. }
                | Error::ShapeMismatch { .. }
                | Error::EmptyCredalSet
                | Error::DegeneratePreference
        )
    }
}
