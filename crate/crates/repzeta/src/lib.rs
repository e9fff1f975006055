//! Representation zeta functions of arithmetic groups of type A2 (SL3/SU3)
//! and A1 (SL2) over the rationals and over rational function fields.
//!
//! The crate computes the non-Archimedean local factors exactly, expands
//! global Dirichlet coefficients by multiplicative convolution, continues the
//! Euler product past its abscissa of convergence via a cyclotomic clearing
//! recursion, and probes the natural boundary at Re s = 5/8 numerically
//! (approximate zeros, Newton refinement, rectangle scans, and a Kronecker
//! scan in the function-field case).

pub mod a1;
pub mod algebra;
pub mod boundary;
pub mod clearing;
pub mod dd;
pub mod dirichlet;
pub mod fit;
pub mod global;
pub mod lfun;
pub mod local;
pub mod primes;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("bad place: {0}")]
    BadPlace(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("internal consistency error: {0}")]
    Inconsistency(String),
    #[error("did not converge: {0}")]
    NoConvergence(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
