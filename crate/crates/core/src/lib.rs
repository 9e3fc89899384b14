//! Numerical toolkit for second moments of GL(3)xGL(2) L-functions at the
//! special points `1/2 + i t_j`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`], [`expsums`]: multiplicative functions, Kloosterman/Ramanujan sums,
//!   the `V_d` sums and their Poisson-dual identity.
//! * [`sieve`]: classical and oscillatory large sieve evaluators.
//! * [`weights`]: the weight `W_{A,B}`, its Fourier transform and decay.
//! * [`afe`]: gamma factors, the AFE weight `V`, Stirling asymptotics and AFE evaluation.
//! * [`coeffs`]: Hecke-Maass datasets and GL(3) coefficient models.
//! * [`spectral`]: harmonic weights, spectral large sieve sums and moment pipelines.
//! * [`voronoi`]: direct evaluation of the twisted sums `C(k,l,r,u,T)` and phase geometry.
//! * [`cli`]: batch front end emitting line-delimited check records.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod afe;
pub mod arith;
pub mod battery;
pub mod calib;
pub mod cli;
pub mod coeffs;
pub mod expsums;
pub mod quad;
pub mod report;
pub mod sieve;
pub mod special;
pub mod spectral;
pub mod voronoi;
pub mod weights;

pub use num_complex::Complex64;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{x} is not invertible modulo {c}")]
    NotInvertible { x: i64, c: u64 },
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),
    #[error("quadrature under-resolved: step {step} exceeds {limit}")]
    UnderResolved { step: f64, limit: f64 },
    #[error("truncation budget exceeded: {0}")]
    Truncation(String),
    #[error("coefficient range insufficient: need {need}, have {have}")]
    Range { need: u64, have: u64 },
    #[error("pole proximity at {0}")]
    Pole(String),
    #[error("dataset: {0}")]
    Dataset(String),
    #[error("spectral completeness: {0}")]
    Completeness(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
