use thiserror::Error;

use crate::textio::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("forms live on different sides (x vs y)")]
    SideMismatch,
    #[error("expected {expected} variables, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("form is not homogeneous (degrees {0} and {1} both occur)")]
    MixedDegree(u32, u32),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("elimination left a non-unit residual; rank is not locally constant")]
    RankJump,

    #[error("operator degree {operator} exceeds form degree {form}")]
    DegreeExcess { operator: u32, form: u32 },
    #[error("the zero form has no Gorenstein sequence")]
    ZeroForm,
    #[error("Hilbert function {0:?} is not symmetric")]
    AsymmetricSequence(Vec<usize>),

    #[error("resultant vanishes: the forms have a common zero away from the origin (quotient algebra is not finite dimensional)")]
    NotFiniteColength,
    #[error("jacobian lies in the ideal piece of top degree")]
    SocleDegenerate,
    #[error("Macaulay extraneous factor stayed zero after {retries} coordinate changes")]
    GenericityFailure { retries: u32 },

    #[error("{0}")]
    Shape(String),
    #[error("no nonvanishing minor of size K-n: the form is not in U")]
    ChartNotFound,
    #[error("form is not in U_Res")]
    NotInImage,
    #[error("membership routes disagree: {0}")]
    RouteMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sampling gave up after {0} attempts")]
    SamplingExhausted(usize),
}
