use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("input is not symmetric: swapping q{0} and q{1} changes it")]
    NotSymmetric(usize, usize),
    #[error("symmetric reduction did not terminate after {0} steps")]
    NonTerminating(usize),
    #[error("weighted basis is infinite: variable {0} has weight {1} and no exponent bound")]
    InfiniteBasis(usize, String),
    #[error("singular system: no pivot in column {col} (rank {rank})")]
    Singular { col: usize, rank: usize },
    #[error("inconsistent system at row {row}")]
    Inconsistent { row: usize },
    #[error("division left a nonzero remainder")]
    NonPolynomialResult,
    #[error("negative exponent of variable {0} with a non-monomial image")]
    NotInvertible(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("exactness failure in {stage}: {detail}")]
    Exactness { stage: String, detail: String },
    #[error("{stage}: underdetermined, kernel {kernel:?}")]
    Underdetermined { stage: String, kernel: Vec<String> },
    #[error("{stage}: inconsistent linear system")]
    Inconsistent { stage: String },
    #[error("substitution did not terminate after {0} rounds")]
    SubstitutionNonTerminating(usize),
    #[error("degenerate sample: {0}")]
    Degenerate(String),
    #[error("zero coordinate {0}")]
    ZeroCoordinate(usize),
    #[error("near discriminant: condition number {0:e}")]
    NearDiscriminant(f64),
    #[error("{0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn exact(stage: &str, detail: impl Into<String>) -> Self {
        Error::Exactness { stage: stage.to_string(), detail: detail.into() }
    }
}
