use thiserror::Error;

/// Every failure the library can report. The variant name doubles as the
/// machine-readable error name emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular (pivot {pivot:.3e} below threshold {threshold:.3e})")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("matrix is not self-adjoint (defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error(
        "block form is not of split type: E1 - I defect {e1_defect:.3e}, E3 defect {e3_defect:.3e}"
    )]
    NotInSplitClass { e1_defect: f64, e3_defect: f64 },
    #[error("complex-linear part M is singular")]
    SingularM,
    #[error("matrix {0} is required to be real")]
    NotReal(&'static str),
    #[error("conversion self-check failed: residual {residual:.3e} exceeds {bound:.3e}")]
    ConversionCheckFailed { residual: f64, bound: f64 },
    #[error("matrix is not in SL (|det - 1| = {det_defect:.3e})")]
    NotInSL { det_defect: f64 },
    #[error("generators have real rank below 2n (margin {margin:.3e})")]
    RankDeficient { margin: f64 },
    #[error("{m} generators exceed 2n = {limit}")]
    DimensionViolation { m: usize, limit: usize },
    #[error("entry ({row}, {col}) is {distance:.3e} away from a Gaussian integer")]
    NonIntegralEntry {
        row: usize,
        col: usize,
        distance: f64,
    },
    #[error(
        "entry ({row}, {col}) is {distance:.3e} away from an integer, inside the ambiguity band"
    )]
    AmbiguousIntegrality {
        row: usize,
        col: usize,
        distance: f64,
    },
    #[error("determinant is {re} + {im}i, expected 1")]
    DeterminantNotOne { re: i128, im: i128 },
    #[error("first n generators are not C-linearly independent")]
    FirstBlockSingular,
    #[error("imaginary part of the period matrix is singular")]
    PeriodImaginaryPartSingular,
    #[error("dimension {n} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { n: usize, cap: usize },
    #[error("enumeration at height {height} needs {estimate} candidates, budget is {budget}")]
    HeightTooLarge {
        height: u32,
        estimate: u128,
        budget: u128,
    },
    #[error("short-vector box of {estimate} points exceeds budget {budget}")]
    RadiusBudgetExceeded { estimate: u128, budget: u128 },
    #[error("points live on different lattices")]
    LatticeMismatch,
    #[error("|alpha| <= |beta|: the map is not of the form theta (z + mu conj(z))")]
    MajorizationFails,
    #[error("exact integer arithmetic overflowed")]
    Overflow,
}

impl Error {
    /// Stable name used in CLI error payloads.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NonFinite",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::NotSelfAdjoint { .. } => "NotSelfAdjoint",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::NotInSplitClass { .. } => "NotInSplitClass",
            Error::SingularM => "SingularM",
            Error::NotReal(_) => "NotReal",
            Error::ConversionCheckFailed { .. } => "ConversionCheckFailed",
            Error::NotInSL { .. } => "NotInSL",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::DimensionViolation { .. } => "DimensionViolation",
            Error::NonIntegralEntry { .. } => "NonIntegralEntry",
            Error::AmbiguousIntegrality { .. } => "AmbiguousIntegrality",
            Error::DeterminantNotOne { .. } => "DeterminantNotOne",
            Error::FirstBlockSingular => "FirstBlockSingular",
            Error::PeriodImaginaryPartSingular => "PeriodImaginaryPartSingular",
            Error::DimensionTooLarge { .. } => "DimensionTooLarge",
            Error::HeightTooLarge { .. } => "HeightTooLarge",
            Error::RadiusBudgetExceeded { .. } => "RadiusBudgetExceeded",
            Error::LatticeMismatch => "LatticeMismatch",
            Error::MajorizationFails => "MajorizationFails",
            Error::Overflow => "Overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
