use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular (det = 0)")]
    SingularMatrix,

    #[error("matrix is not diagonalizable")]
    NotDiagonalizable,

    #[error("expected a {expected}x{expected} matrix, got dimension {got}")]
    Dimension { expected: usize, got: usize },

    #[error("cone contains a line")]
    NotStrictlyConvex,

    #[error("invalid fan: {reason}")]
    BadFan {
        reason: String,
        /// Pair of maximal cones (as ray-index lists) violating the face axiom.
        witness: Option<(Vec<usize>, Vec<usize>)>,
    },

    #[error("fans have different supports")]
    SupportMismatch,

    #[error("fan is not complete")]
    NotComplete,

    #[error("fan is not invariant: {0}")]
    NotInvariant(String),

    #[error("fan is not simplicial")]
    NotSimplicial,

    #[error("polytope is not full-dimensional")]
    DegeneratePolytope,

    #[error("insufficient data: need at least {needed} terms, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("not a complex pair: p^2 >= 4q")]
    NotComplexPair,

    #[error("operation does not apply to case {0}")]
    WrongCase(String),

    #[error("point {0} is not in the support of the fan")]
    OutsideSupport(String),

    #[error("construction failed verification: {0}")]
    ConstructionFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn bad_fan(reason: impl Into<String>) -> Self {
        Error::BadFan {
            reason: reason.into(),
            witness: None,
        }
    }
}
