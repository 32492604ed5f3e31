use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("N must be odd and ≥ 5 (got {0})")]
    InvalidOrder(u64),

    #[error("radicand {0} must be a positive non-square integer")]
    BadRadicand(BigInt),

    #[error("radicand mismatch: √{0} and √{1} live in different fields")]
    RadicandMismatch(BigInt, BigInt),

    #[error("a circulant graph needs at least 3 vertices (got {0})")]
    TooFewVertices(usize),

    #[error("jump set is empty")]
    EmptyJumps,

    #[error("jump {jump} out of range [1, {max}]")]
    JumpOutOfRange { jump: usize, max: usize },

    #[error("circulant graph on {n} vertices is disconnected (gcd of n and jumps is {gcd})")]
    Disconnected { n: usize, gcd: usize },

    #[error("distance {l} out of range [1, {max}]")]
    DistanceOutOfRange { l: u64, max: u64 },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("source and target must differ")]
    SameEndpoints,

    #[error("{0} must be at least 1")]
    NonPositive(&'static str),

    #[error("linear system of size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("identity check failed: {0}")]
    IdentityViolation(String),
}
