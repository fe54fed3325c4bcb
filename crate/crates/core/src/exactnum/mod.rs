//! Exact scalars, sparse polynomials and exact linear algebra.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod quad;

use thiserror::Error;

pub use field::{fmt_rational, parse_rational, parse_rational_list, q, qf, Field, Rational, Ring};
pub use matrix::{signature, Matrix};
pub use poly::SparsePoly;
pub use quad::{Gaussian, JsonScalar, QuadBase, QuadScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("invalid radicand {0}: must be square-free, nonzero and not 1")]
    BadRadicand(i64),
    #[error("quadratic towers deeper than two levels are not supported")]
    TowerTooDeep,
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
