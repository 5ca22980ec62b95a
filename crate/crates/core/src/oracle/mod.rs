//! Independent discretisations and residual checks used to validate the
//! closed-form results.

mod fd;
mod fourier;
mod residual;

pub use fd::{schrodinger_fd_matrix, SchrodingerFd};
pub use fourier::{fourier_dirac_matrix, FourierDirac};
pub use residual::{resolvent_residual, Interaction, ResidualOptions, ResidualReport};

use crate::error::{Error, Result};
use crate::spectral::C64;
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    FourierDirac,
    FiniteDiffSchrodinger,
}

/// A finite matrix realisation of one of the operators.
pub trait DiscretizedOperator {
    fn kind(&self) -> OperatorKind;
    fn grid(&self) -> &[f64];
    fn dense(&self) -> DMatrix<C64>;
}

/// All eigenvalues of a dense complex matrix via the Schur form.
pub fn dense_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<C64>> {
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::NoConvergence("Schur decomposition".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}
