use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the spectral routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("branch point: k(z) vanishes at z = {z}")]
    BranchPoint { z: Complex64 },

    #[error("spectral parameter {z} lies on the cut")]
    OnCut { z: Complex64 },

    #[error("matrix is singular (|det| = {det_abs:e} <= {tol:e})")]
    SingularMatrix { det_abs: f64, tol: f64 },

    #[error("coupling matrix is not hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("z = {z} is not in the resolvent set (|det| = {residual:e})")]
    NotInResolventSet { z: Complex64, residual: f64 },

    #[error("point spectrum is not a finite set (case {case})")]
    DegenerateCase { case: String },

    #[error("eigenvalue condition vanishes on the contour near {z}")]
    ContourOnZero { z: Complex64 },

    #[error("z = {z} is an eigenvalue of the Schrödinger operator (|denominator| = {denominator:e})")]
    EigenvalueHit { z: Complex64, denominator: f64 },

    #[error("Schrödinger eigenvalue condition holds identically")]
    DegenerateCondition,

    #[error("profile unresolved: scaled width {width:e} < 4h = {min:e}")]
    Resolution { width: f64, min: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("profile file: {0}")]
    ProfileFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
