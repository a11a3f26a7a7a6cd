use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("charge {charge} is not compatible with sheet {sheet}")]
    SheetMismatch { charge: String, sheet: i64 },
    #[error("{w} has no argument in the requested window above {lower}")]
    OutsideWindow { w: String, lower: String },
    #[error("chart inequalities fail: {}", .0.join("; "))]
    ChartViolation(Vec<String>),
    #[error("zero charge for {0}")]
    ZeroCharge(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("representation too large: total dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("search exceeded budget of {cap} steps ({what})")]
    SearchBudgetExceeded { what: String, cap: i64 },
    #[error("no table row fired: {0}")]
    NoRowFired(String),
    #[error("several table rows fired: {0}")]
    MultipleRowsFired(String),
    #[error("phase of {0} could not be pinned down")]
    PhaseUndetermined(String),
}

impl Error {
    /// Stable machine-readable code used in CLI and HTTP error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SheetMismatch { .. } => "SheetMismatch",
            Error::OutsideWindow { .. } => "OutsideWindow",
            Error::ChartViolation(_) => "ChartViolation",
            Error::ZeroCharge(_) => "ZeroCharge",
            Error::Invalid(_) => "InvalidInput",
            Error::Precondition(_) => "Precondition",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            Error::NoRowFired(_) => "NoRowFired",
            Error::MultipleRowsFired(_) => "MultipleRowsFired",
            Error::PhaseUndetermined(_) => "PhaseUndetermined",
        }
    }

    /// True for errors that can only come from a defect in this crate, never
    /// from bad input on a valid point.
    pub fn is_bug(&self) -> bool {
        matches!(
            self,
            Error::NoRowFired(_)
                | Error::MultipleRowsFired(_)
                | Error::PhaseUndetermined(_)
                | Error::SearchBudgetExceeded { .. }
        )
    }
}
