use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} lies outside the validated range 0..={max}")]
    UndefinedIndex { index: usize, max: usize },

    #[error("degenerate family: n_psi vanishes at n = {index} ({reason})")]
    DegenerateFamily { index: usize, reason: String },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("binomial index order violated: k = {k} > n = {n}")]
    IndexOrder { n: usize, k: usize },

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(usize),

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("operator does not lower degree by exactly one")]
    NotDifferenceTial,

    #[error("sequence is not basic for the operator: check fails at n = {n}")]
    BasisMismatch { n: usize },

    #[error("triangular solve breaks down at degree {n} (vanishing pivot)")]
    Singular { n: usize },

    #[error("series is not invertible (zero constant term)")]
    NotInvertible,

    #[error("series is not a delta series (needs c0 = 0 and c1 != 0)")]
    NotDelta,

    #[error("eigenseries construction failed at order {n}")]
    EigenSeriesFailure { n: usize },

    #[error("left inverse of xhat_psi applied to a polynomial with nonzero constant term")]
    ConstantTermObstruction,

    #[error("integral operator and differencer do not form a matched pair")]
    MismatchedPair,

    #[error("operation requires a q-deformed family")]
    WrongFamily,

    #[error("working degrees do not match: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// The variant name, used in diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UndefinedIndex { .. } => "UndefinedIndex",
            Error::DegenerateFamily { .. } => "DegenerateFamily",
            Error::BadParameter(_) => "BadParameter",
            Error::IndexOrder { .. } => "IndexOrder",
            Error::BadModulus(_) => "BadModulus",
            Error::DegreeOverflow { .. } => "DegreeOverflow",
            Error::NotDifferenceTial => "NotDifferenceTial",
            Error::BasisMismatch { .. } => "BasisMismatch",
            Error::Singular { .. } => "Singular",
            Error::NotInvertible => "NotInvertible",
            Error::NotDelta => "NotDelta",
            Error::EigenSeriesFailure { .. } => "EigenSeriesFailure",
            Error::ConstantTermObstruction => "ConstantTermObstruction",
            Error::MismatchedPair => "MismatchedPair",
            Error::WrongFamily => "WrongFamily",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::Parse(_) => "Parse",
        }
    }
}
