use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("coefficient overflow: {0}")]
    Overflow(String),

    #[error("unsupported group descriptor `{0}`")]
    UnsupportedGroup(String),

    #[error("based F2-space of dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("group of order {order} (exponent {exponent}) does not match any catalog atom product")]
    Recognition { order: usize, exponent: usize },

    #[error("subgroup of order {lower} is not normal in subgroup of order {upper}")]
    NotNormal { lower: usize, upper: usize },

    #[error("pair function is not invariant under simultaneous conjugation at ({0}, {1})")]
    NonInvariant(usize, usize),

    #[error("map is not a surjective homomorphism: {0}")]
    BadHomomorphism(String),

    #[error("no quotient type for {0}")]
    QuotientType(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("enumeration cap exceeded: D = {d} > {cap}")]
    EnumerationCap { d: usize, cap: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("interval set is not a member of the required family: {0}")]
    NotInFamily(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("{0}")]
    Unsupported(String),
}
