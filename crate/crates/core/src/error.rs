use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Axiom *violations* are not errors: checkers report them through
/// [`Verdict`](crate::Verdict). Errors are reserved for malformed input,
/// broken preconditions and refused computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signed subsets live on different ground sets")]
    GroundMismatch,

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("{0}")]
    Domain(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(
        "{check}: ground set has {size} elements, above the cap of {cap}; \
         raise the cap or use sampling mode (--sample N --seed S)"
    )]
    CapExceeded {
        check: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("circuit family is not a matroid: {0}")]
    NotAMatroid(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("signature lift is not unique on minor circuit {minor}: lifts {first} and {second} disagree (the pair violates orthogonality)")]
    LiftDependent {
        minor: String,
        first: String,
        second: String,
    },

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
