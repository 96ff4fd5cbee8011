use thiserror::Error;

/// Errors raised by library operations. Validation failures are not errors;
/// they are returned as [`crate::ValidationReport`] data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose {left} with {right}: target and source differ")]
    NonComposable { left: String, right: String },
    #[error("composite of {left} and {right} is missing from the composition table")]
    NotClosed { left: String, right: String },
    #[error("morphisms come from different backends")]
    BackendMismatch,
    #[error("objects come from different backends")]
    MixedBackends,
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("backend has no zero object")]
    NoZeroObject,
    #[error("no epi-inclusion factorization of {0}")]
    NoFactorization(String),
    #[error("{small} is not a subobject of {big}")]
    NotSubobjectPair { small: String, big: String },
    #[error("ambient group has more than {bound} elements (found at least {found})")]
    AmbientTooLarge { found: usize, bound: usize },
    #[error("shape mismatch: expected {expected} levels, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("homset map at level {level} is not full")]
    NotFull { level: String },
    #[error("vertex map at level {level} cannot be factorized: {reason}")]
    VertexNotFactorizable { level: usize, reason: String },
    #[error("no morphism map at level {level}: {reason}")]
    MissingHomsetMap { level: String, reason: String },
    #[error("backend has no product for {left} and {right}")]
    ProductsUnsupported { left: String, right: String },
    #[error("search space of {size} candidates exceeds bound {bound}")]
    SearchSpaceTooLarge { size: String, bound: u64 },
    #[error("not a groupoid: {0}")]
    NotAGroupoid(String),
    #[error("selector matches more than one morphism at level {level}")]
    AmbiguousChoice { level: usize },
    #[error("invalid choice at level {level}: {reason}")]
    InvalidChoice { level: usize, reason: String },
    #[error("homset {homset} at level {level} is infinite")]
    InfiniteHomset { level: usize, homset: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
