//! Exact calculus of homogeneous noncommutative potentials.
//!
//! The crate builds the graded algebra derived from a potential (the quotient
//! of the free algebra by the cyclic partial derivatives), assembles the
//! associated self-dual four-term bimodule complex degree by degree, and runs
//! the degreewise 3-Calabi-Yau checks: relation rank, overlap space, Hilbert
//! series against `(1 - n t + n t^N - t^(N+1))^{-1}`, and exactness of the
//! complex. All arithmetic is exact over the rationals.
//!
//! With the default `parallel` feature the degreewise loops and the
//! elimination inner loops run on rayon; results are bit-identical with the
//! feature disabled.

pub mod catalog;
pub mod complexes;
pub mod criterion;
pub mod exactla;
pub mod grading;
pub mod ncpoly;
pub(crate) mod par;
pub mod quadric;
pub mod word;

/// Exact rational scalar used everywhere.
pub type Rat = num::BigRational;

/// Rational from an integer.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(p.into())
}

/// Rational `p/q`. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient mismatch: expected dimension {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("degenerate quadric: coefficient matrix is singular")]
    SingularMatrix,
    #[error("polynomial is not homogeneous (degrees {0:?})")]
    NotHomogeneous(Vec<usize>),
    #[error("potential must be nonzero")]
    ZeroPotential,
    #[error("potential degree must be at least 3, got {0}")]
    DegreeTooSmall(usize),
    #[error("generator index {index} out of range for {n} generators")]
    BadGeneratorIndex { index: usize, n: usize },
    #[error("degree {degree} exceeds the computed bound {bound}")]
    DegreeOutOfRange { degree: usize, bound: usize },
    #[error("tensor power {n}^{d} is too large to enumerate")]
    AmbientTooLarge { n: usize, d: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
