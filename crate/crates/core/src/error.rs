use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Mismatched variable counts, ranks, presentations or indices.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("step budget of {limit} exhausted during {context}")]
    BudgetExceeded { limit: u64, context: String },

    /// A documented precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("operator `{op}` does not stabilize the algebra on `{poly}`")]
    Stability { op: String, poly: String },

    #[error("ad({s}) is not nilpotent on `{element}` within {bound} steps")]
    NotAdNilpotent {
        s: String,
        element: String,
        bound: usize,
    },

    #[error("order of `{element}` exceeds bound {bound}")]
    ExceedsBound { element: String, bound: usize },

    #[error("verification window mismatch: {0}")]
    VerificationWindow(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),
}

impl Error {
    /// Short machine-readable tag used in error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::BudgetExceeded { .. } => "budget",
            Error::Contract(_) => "contract",
            Error::Stability { .. } => "stability",
            Error::NotAdNilpotent { .. } => "not-ad-nilpotent",
            Error::ExceedsBound { .. } => "exceeds-bound",
            Error::VerificationWindow(_) => "verification-window",
            Error::Presentation(_) => "presentation",
        }
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
