use thiserror::Error;

/// Everything that can stop a computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("NotSimple: companion polynomial has a repeated root")]
    NotSimple,
    #[error("Degenerate: a ratio of distinct roots is a root of unity")]
    Degenerate,
    #[error("NoDominantRoot: {0}")]
    NoDominantRoot(String),
    #[error("DominantRootNotGreaterThanOne: |alpha| <= 1")]
    DominantRootNotGreaterThanOne,
    #[error("ZeroDominantCoefficient: the closed form has no alpha^n component")]
    ZeroDominantCoefficient,
    #[error("PrecisionExhausted: {0}")]
    PrecisionExhausted(String),
    #[error("DominanceFails: {0}")]
    DominanceFails(String),
    #[error("DominanceUnsupported: {0}")]
    DominanceUnsupported(String),
    #[error("DegenerateDenominator: {0}")]
    DegenerateDenominator(String),
}

impl Error {
    /// The hypotheses of the main theorem fail for this recurrence.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotSimple
                | Error::Degenerate
                | Error::NoDominantRoot(_)
                | Error::DominantRootNotGreaterThanOne
                | Error::ZeroDominantCoefficient
        )
    }

    pub fn is_dominance_failure(&self) -> bool {
        matches!(self, Error::DominanceFails(_) | Error::DominanceUnsupported(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
