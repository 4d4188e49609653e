use thiserror::Error;

/// Errors raised by the algebra, combinatorics and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} is out of the supported range (at most {1})")]
    BadDegree(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(String, String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("{inner} does not refine {outer}")]
    NotASubgroup { inner: String, outer: String },
    #[error("not a valid tableau: {0}")]
    InvalidTableau(String),
    #[error("tableau is not row standard: {0}")]
    NotRowStandard(String),
    #[error("tableau is not standard: {0}")]
    NotStandard(String),
    #[error("({row},{col}) is not a Garnir position of {shape}")]
    InvalidGarnirPosition { shape: String, row: usize, col: usize },
    #[error("({row},{col}) is not an addable node of {shape}")]
    NotAddable { shape: String, row: usize, col: usize },
    #[error("({row},{col}) is not a removable node of {shape}")]
    NotRemovable { shape: String, row: usize, col: usize },
    #[error("restriction index {k} must satisfy 1 <= k < {n}")]
    BadRestrictionIndex { k: usize, n: usize },
    #[error("rational function {0} is not a Laurent polynomial")]
    NotLaurent(String),
    #[error("non-integral coefficient while expanding: {0}")]
    IntegralityFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown check: {0}")]
    UnknownCheck(String),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
