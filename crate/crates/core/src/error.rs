use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic 2 is not supported: graded Lie algebras here require a field of characteristic different from 2")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported range")]
    PrimeTooLarge(u64),
    #[error("cannot parse field or coefficient `{0}`")]
    Parse(String),
    #[error("denominator of {value} vanishes in F_{p}")]
    DenominatorVanishes { value: String, p: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("degree {degree} lies beyond truncation {truncation}")]
    BeyondTruncation { degree: usize, truncation: usize },
    #[error("malformed Lie algebra dimensions: degree 0 entry must be 0, found {0}")]
    NonzeroDegreeZero(String),
    #[error("enveloping algebra dimensions must start with 1 in degree 0, found {0}")]
    BadUnit(String),
    #[error("no Lie algebra realizes these dimensions: degree {degree} would need dimension {value}")]
    NoLieRealization { degree: usize, value: String },
    #[error("invalid window [{lo}, {hi}]: {reason}")]
    InvalidWindow { lo: usize, hi: usize, reason: String },
    #[error("truncation {truncation} is too small: need degree {needed}")]
    TruncationTooSmall { needed: String, truncation: usize },
    #[error("malformed dimension sequence: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("basis element `{0}` must have degree at least 1")]
    DegreeZero(String),
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis element `{0}`")]
    UnknownName(String),
    #[error("basis element `{name}` has degree {degree} above truncation {truncation}")]
    AboveTruncation { name: String, degree: u32, truncation: u32 },
    #[error("bracket target degree {degree} lies beyond truncation {truncation}")]
    BeyondTruncation { degree: u32, truncation: u32 },
    #[error("vector is not homogeneous")]
    NotHomogeneous,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown generator `{0}` in relator")]
    UnknownGenerator(String),
    #[error("relator {index} is not homogeneous (degrees {degrees:?})")]
    NotHomogeneous { index: usize, degrees: Vec<u32> },
    #[error("malformed Lie word: {0}")]
    MalformedWord(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("truncation {truncation} is below the smallest generator degree {min_degree}")]
    TruncationTooSmall { truncation: u32, min_degree: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("internal sign-convention failure: boundary squared is nonzero at homological degree {q}, internal degree {degree}")]
    BoundarySquaredNonzero { q: usize, degree: i64 },
    #[error("Ext against UL needs a finite-dimensional (complete) Lie algebra; this one is truncated at {truncation}")]
    Truncated { truncation: u32 },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("module and algebra use different fields")]
    FieldMismatch,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("JSON error: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("{0}")]
    Schema(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}
