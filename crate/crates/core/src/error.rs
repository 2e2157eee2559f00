use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value of semiring `{found}` used where `{expected}` was expected")]
    VariantMismatch { expected: String, found: String },

    #[error("polynomial kinds differ: {left} vs {right}")]
    KindMismatch { left: String, right: String },

    #[error("semiring `{0}` is not omega-continuous")]
    NotOmegaContinuous(String),

    #[error("semiring `{0}` is not fully omega-continuous (no top element for descending iteration)")]
    NotFullyOmegaContinuous(String),

    #[error("cannot project {from} onto {to}")]
    IllegalProjection { from: String, to: String },

    #[error("assignment maps both {0} and its complement to nonzero values")]
    DualityViolated(String),

    #[error("semiring `{0}` has no infinite powers for this value")]
    InfExponentUnsupported(String),

    #[error("token `{0}` has no assigned value")]
    UnassignedToken(String),

    #[error("malformed game: {0}")]
    MalformedGame(String),

    #[error("game graph has a cycle through `{0}`")]
    CyclicGame(String),

    #[error("strategy admits an infinite play")]
    NotWellFounded,

    #[error("strategy enumeration exceeded its budget ({0})")]
    BudgetExceeded(String),

    #[error("fixed-point iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("relation `{rel}` used with arity {found}, expected {expected}")]
    Arity { rel: String, expected: usize, found: usize },

    #[error("formula is not in positive least fixed-point logic: {0}")]
    NotPosLfp(String),

    #[error("formula is not in negation normal form")]
    NotNnf,

    #[error("formula is not first-order (contains a fixed-point operator)")]
    NotFirstOrder,

    #[error("`{0}` occurs free; expected a sentence")]
    NotSentence(String),

    #[error("fixed-point body of `{rel}` uses parameter `{var}`")]
    ParameterizedFixpoint { rel: String, var: String },

    #[error("interpretation is not model-defining at {0}")]
    NotModelDefining(String),

    #[error("tracked literal {0} is false in the structure")]
    TrackedFalseLiteral(String),

    #[error("unknown semiring `{0}`")]
    UnknownSemiring(String),

    #[error("invalid value `{text}` for semiring `{semiring}`: {reason}")]
    InvalidValue {
        semiring: String,
        text: String,
        reason: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Semantic,
    NoConvergence,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. }
            | Error::Arity { .. }
            | Error::Parse(_)
            | Error::InvalidValue { .. }
            | Error::UnknownSemiring(_) => ErrorClass::Parse,
            Error::NoConvergence { .. } => ErrorClass::NoConvergence,
            _ => ErrorClass::Semantic,
        }
    }

    pub(crate) fn invalid(semiring: &str, text: &str, reason: impl Into<String>) -> Self {
        Error::InvalidValue {
            semiring: semiring.to_string(),
            text: text.to_string(),
            reason: reason.into(),
        }
    }
}
