use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants split into input problems (parse, dimension, configuration) and
/// mathematical failures (non-closed forms, degenerate structures); see
/// [`Error::is_mathematical`].
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: String },

    #[error("d^2 e^{index} = {value} != 0 (Jacobi identity fails)")]
    Jacobi { index: usize, value: String },

    #[error("form is not closed: d = {differential}")]
    NotClosed { differential: String },

    #[error("form is not real")]
    NotReal,

    #[error("coframe does not span the complexified dual ({rank} independent of {needed})")]
    NotSpanning { rank: usize, needed: usize },

    #[error("J^2 != -id")]
    NotComplexStructure,

    #[error("matrix is singular")]
    Singular,

    #[error("metric is not positive definite")]
    NotPositiveDefinite,

    #[error("volume factor sqrt({0}) is irrational")]
    IrrationalVolume(String),

    #[error("type set {0} is inconsistent with the degree or with realness")]
    InconsistentTypes(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("requested order {requested} exceeds truncation order {max}")]
    OrderTooHigh { requested: u32, max: u32 },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("{0}")]
    Config(String),
}

impl Error {
    /// True for failures of the mathematics on valid input, as opposed to
    /// malformed input or configuration.
    pub fn is_mathematical(&self) -> bool {
        !matches!(
            self,
            Error::Parse { .. }
                | Error::IndexOutOfRange { .. }
                | Error::UnknownName(_)
                | Error::Config(_)
                | Error::Jacobi { .. }
        )
    }
}

impl Error {
    /// Stable snake-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::Jacobi { .. } => "jacobi",
            Error::NotClosed { .. } => "not_closed",
            Error::NotReal => "not_real",
            Error::NotSpanning { .. } => "not_spanning",
            Error::NotComplexStructure => "not_complex_structure",
            Error::Singular => "singular",
            Error::NotPositiveDefinite => "not_positive_definite",
            Error::IrrationalVolume(_) => "irrational_volume",
            Error::InconsistentTypes(_) => "inconsistent_types",
            Error::Precondition(_) => "precondition",
            Error::OrderTooHigh { .. } => "order_too_high",
            Error::UnknownName(_) => "unknown_name",
            Error::Config(_) => "config",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
