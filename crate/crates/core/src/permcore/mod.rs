//! Permutations and the positroid labels built on them: decorated and
//! bounded affine permutations, Grassmann necklaces, and the TP-Schubert
//! permutations `π(J)`.
//!
//! Everything here is 1-indexed. A permutation on `n` letters is stored in
//! one-line notation `(w(1), …, w(n))`.

mod affine;
mod decorated;
mod necklace;
mod permutation;
mod subset;

pub use affine::BoundedAffinePermutation;
pub use decorated::{DecoratedPermutation, FixedPointColor};
pub use necklace::{necklace_of_matrix, GrassmannNecklace};
pub use permutation::{bruhat_leq, compose_seq, Permutation};
pub use subset::SubsetJ;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {values:?}")]
    NotAPermutation { n: usize, values: Vec<usize> },
    #[error("value {value} out of range 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("transposition ({a} {b}) is not a pair 1 <= a < b <= {n}")]
    BadTransposition { a: usize, b: usize, n: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("position {0} is not a fixed point and cannot carry a color")]
    ColorOnNonFixedPoint(usize),
    #[error("window entry {value} at position {position} outside [{position}, {position}+{n}]")]
    WindowBounds { position: usize, value: usize, n: usize },
    #[error("window entries are not distinct modulo {n}: {window:?}")]
    WindowNotPermutation { n: usize, window: Vec<usize> },
    #[error("invalid Grassmann necklace: {0}")]
    BadNecklace(String),
    #[error("matrix has rank {rank} < {k} rows")]
    RankDeficient { rank: usize, k: usize },
    #[error("malformed matrix: {0}")]
    BadMatrix(String),
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}
