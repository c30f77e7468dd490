use thiserror::Error;

use crate::forms::SuperForm;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum QlsError {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vector is not homogeneous: {0}")]
    Parity(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("square root missing from the field: {0}")]
    MissingSquareRoot(String),
    #[error("bilinear form is not invariant: {0}")]
    NotQuadratic(String),
    #[error("invariant form does not integrate to a Lie superalgebra: {{I,I}} has {} nonzero terms", .bracket.len())]
    NonIntegrable { bracket: Box<SuperForm> },
    #[error("the dup-number is undefined for abelian algebras")]
    UndefinedDup,
    #[error("descriptor invariant violated: {0}")]
    DescriptorInvariant(String),
    #[error("partition {0} is not admissible for this sign")]
    InadmissiblePartition(String),
    #[error("map is not nilpotent")]
    NotNilpotent,
    #[error("map is not skew with respect to the form: {0}")]
    NotSkew(String),
    #[error("characteristic polynomial does not split; unsplit factor {factor}")]
    NonSplitSpectrum { factor: String },
    #[error("no double-extension descriptor can be extracted: {0}")]
    NotExtractable(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported descriptor variant: {0}")]
    UnsupportedVariant(String),
    #[error("empty input: {0}")]
    Empty(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl QlsError {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            QlsError::Parse(_) => "malformed-input",
            QlsError::DivisionByZero => "division-by-zero",
            QlsError::InvalidSpace(_) => "invalid-space",
            QlsError::Shape(_) => "shape",
            QlsError::Parity(_) => "parity",
            QlsError::NotInvertible(_) => "not-invertible",
            QlsError::MissingSquareRoot(_) => "missing-square-root",
            QlsError::NotQuadratic(_) => "not-quadratic",
            QlsError::NonIntegrable { .. } => "non-integrable",
            QlsError::UndefinedDup => "undefined-dup",
            QlsError::DescriptorInvariant(_) => "descriptor-invariant",
            QlsError::InadmissiblePartition(_) => "inadmissible-partition",
            QlsError::NotNilpotent => "not-nilpotent",
            QlsError::NotSkew(_) => "not-skew",
            QlsError::NonSplitSpectrum { .. } => "non-split-spectrum",
            QlsError::NotExtractable(_) => "not-extractable",
            QlsError::OutOfRange(_) => "out-of-range",
            QlsError::UnsupportedVariant(_) => "unsupported-variant",
            QlsError::Empty(_) => "empty-input",
            QlsError::Internal(_) => "internal-consistency",
        }
    }

    /// True for errors caused by unreadable input rather than by the mathematics.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, QlsError::Parse(_))
    }
}

pub type Result<T, E = QlsError> = std::result::Result<T, E>;
