use thiserror::Error;

/// Errors across the crate.
///
/// `LemmaFalsified` is special: it is raised only when a runtime assertion
/// that mirrors a proved statement fails, and it should therefore never
/// occur. Callers (in particular the CLI) are expected to treat it as the
/// loudest possible failure, distinct from bad input or a resource bound.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic {0} is outside the supported set {{2, 3, 5}}")]
    UnsupportedCharacteristic(u64),

    #[error("invalid extension degree {0}; need k >= 1")]
    InvalidDegree(u64),

    #[error("polynomial {0} is not irreducible over F_{1}")]
    NotIrreducible(String, u8),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("division or inversion by zero")]
    DivisionByZero,

    #[error("degree {src} does not divide degree {dst}")]
    DegreeNotDivisible { src: usize, dst: usize },

    #[error("{what} ({requested}) exceeds the supported bound ({limit})")]
    BoundExceeded {
        what: &'static str,
        limit: u64,
        requested: u64,
    },

    #[error("tuple is F_p-linearly dependent")]
    DependentTuple,

    #[error("{0}")]
    InvalidInput(String),

    #[error("subspace is not contained in the claimed ambient chain")]
    NotSubspaceChain,

    #[error("subgroup index is not p")]
    IndexNotP,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("assertion mirroring \"{lemma}\" failed: {detail}")]
    LemmaFalsified { lemma: &'static str, detail: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn falsified(lemma: &'static str, detail: impl Into<String>) -> Self {
        Error::LemmaFalsified {
            lemma,
            detail: detail.into(),
        }
    }
}
