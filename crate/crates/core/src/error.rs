use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree overflow: {0} + {1} > 8")]
    DegreeOverflow(usize, usize),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("invalid degree {0}")]
    InvalidDegree(usize),

    #[error("interior product into a degree-0 form")]
    InteriorOfScalar,

    #[error("metric is not positive definite")]
    NotPositiveDefinite,

    #[error("metric is not symmetric (|g_ij - g_ji| = {0:e})")]
    NotSymmetric(f64),

    #[error("not a Spin(7) form: {0}")]
    NotSpin7(String),

    #[error("Jacobi identity fails at (i,j,k,l) = {indices:?} with residual {residual:e}")]
    Jacobi { indices: [usize; 4], residual: f64 },

    #[error("invalid multi-index {0:?}: {1}")]
    InvalidIndex(Vec<usize>, &'static str),

    #[error("duplicate monomial {0:?}")]
    DuplicateMonomial(Vec<usize>),

    #[error("cannot parse scalar {0:?}")]
    Scalar(String),

    #[error("algebra spec: {0}")]
    AlgebraSpec(String),

    #[error("unknown corpus entry {0:?}")]
    UnknownCorpus(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
