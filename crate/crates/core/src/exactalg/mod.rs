//! Exact linear algebra over the rationals.

mod canonical;
mod chains;
mod factor;
mod matrix;
mod poly;
mod rational;

pub use canonical::{charpoly, rational_canonical, ElementaryDivisor};
pub use chains::{graded_jordan_chains, GradedChain};
pub use factor::{factor_poly, squarefree_decomposition};
pub use matrix::{solve_linear, AffineSolution, EchelonBasis, RatMatrix};
pub use poly::RatPoly;
pub use rational::{format_rational, parse_rational, rat, ratio, ParseRationalError, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("graded operator is not nilpotent")]
    NotNilpotent,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Exact rank, as a free function.
pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}
