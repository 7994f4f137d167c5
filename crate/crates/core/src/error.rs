use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operands belong to different fields")]
    OwnerMismatch,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("matrix is singular to the available precision")]
    Singular,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("input is not topologically nilpotent")]
    NotTopologicallyNilpotent,

    #[error("input is not topologically unipotent")]
    NotTopologicallyUnipotent,

    #[error("matrix is not in the Lie algebra of {0}")]
    NotInLieAlgebra(String),

    #[error("element is not in the filtration piece at level {0}")]
    NotInFiltration(String),

    #[error("apartment point is not fixed by theta")]
    NotThetaFixed,

    #[error("graded class is not fixed by the induced involution")]
    NotFixedClass,

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("enumeration of {size} elements exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u64 },

    #[error("no inclusion certificate: {0}")]
    CertificateSearch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn precision(msg: impl Into<String>) -> Self {
        Error::PrecisionExhausted(msg.into())
    }

    pub fn is_precision(&self) -> bool {
        matches!(self, Error::PrecisionExhausted(_))
    }
}
