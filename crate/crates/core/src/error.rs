use thiserror::Error;

/// Every failure the library can report. Messages are the diagnostics the CLI prints verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("not well-ordered: {0}")]
    NotWellOrdered(String),
    #[error("bound exceeded - supply --bound (needed {needed} coefficient evaluations, limit {limit})")]
    BoundExceeded { needed: String, limit: usize },
    #[error("star not proper: the starred expression has a nonzero constant term")]
    StarNotProper,
    #[error("closure budget exceeded - expression appears not well-defined")]
    ClosureBudget,
    #[error("cycle budget exceeded ({0} cycles)")]
    CycleBudget(usize),
    #[error("comparison budget exceeded: no differing Lyndon coefficient up to length {0}")]
    ComparisonBudget(usize),
    #[error("zero series")]
    ZeroSeries,
    #[error("inconsistent bound: no support element of length < {0} although the series is nonzero")]
    InconsistentBound(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("star undefined: the series has a nonzero coefficient on the identity")]
    StarUndefined,
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Budget-type failures (exit code 3 in the CLI).
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. }
                | Error::ClosureBudget
                | Error::CycleBudget(_)
                | Error::ComparisonBudget(_)
                | Error::InconsistentBound(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
