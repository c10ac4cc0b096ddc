use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("element set is not closed under the group law")]
    NotClosed,
    #[error("group is not presented as a product A+A")]
    NotAProduct,
    #[error("graded objects live in different sylleptic contexts")]
    ContextMismatch,
    #[error("subgroup is not contained in the degree-zero part")]
    NotInKernel,
    #[error("restriction of the form to the subgroup is degenerate")]
    DegenerateRestriction,
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("object is not s-invertible")]
    NotInvertible,
    #[error("no trivial power found up to {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("closure exceeded {cap} classes")]
    ClosureCapExceeded { cap: usize },
    #[error("invalid module action: {0}")]
    ActionInvalid(String),
    #[error("torus-coefficient answer changed between N={small} and N={large}")]
    StabilizationFailure { small: u64, large: u64 },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("pairing is not invariant under the group action")]
    PairingNotInvariant,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("action does not preserve the symplectic form: {0}")]
    NotSymplectic(String),
    #[error("degree {0} is not supported here")]
    Degree(usize),
    #[error("certificate rejected: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            message: message.into(),
            line: 1,
            column: 1,
        }
    }

    pub(crate) fn cap(what: &'static str, size: usize, cap: usize) -> Self {
        Error::CapExceeded { what, size, cap }
    }
}
