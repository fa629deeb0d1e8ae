use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    InvalidPrime(u64),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u64, u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid algebra parameters: {0}")]
    InvalidParameters(String),
    #[error("algebra invariant violated: {0}")]
    AlgebraInvariant(String),
    #[error("module invariant violated: {0}")]
    ModuleInvariant(String),
    #[error("not a module homomorphism: {0}")]
    NotAMorphism(String),
    #[error("modules live over different algebras or sides: {0}")]
    Incompatible(String),
    #[error("complex invariant violated: {0}")]
    ComplexInvariant(String),
    #[error("degree {degree} is not an interior degree of the window [{lo}, {hi}]")]
    NotInterior { degree: i64, lo: i64, hi: i64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
