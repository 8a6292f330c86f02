use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone of dimension zero")]
    ZeroDimension,
    #[error("cone generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("dual cone contains a line (witness direction {witness}); no compact base exists")]
    NotPointed { witness: String },
    #[error("dual cone is {{0}}; no base exists")]
    TrivialCone,
    #[error("empty input sequence")]
    EmptySequence,
    #[error("sets live in different ambient cones")]
    AmbientMismatch,
    #[error("point {0} is not on the grid")]
    OffGrid(String),
    #[error("grid point {0} appears twice")]
    DuplicateGridPoint(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("composability violated: {0}")]
    NotComposable(String),
    #[error("direction {0} is zero or outside the dual cone")]
    BadDirection(String),
    #[error("inner set is not contained in outer set")]
    NotSubset,
    #[error("missing primal ordering cone")]
    MissingPrimalCone,
    #[error("inconsistent ray data: {0}")]
    InconsistentRay(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
