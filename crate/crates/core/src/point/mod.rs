//! Dirac operator with a general point interaction at the origin.

mod resolvent;
mod spectrum;
mod structure;

pub use resolvent::{gamma_field_kernel, resolvent_kernel, weyl_function, PointKernel};
pub use spectrum::{
    classify_spectrum, eigenfunction, eigenvalue_residual, eigenvalue_residual_trace_form,
    point_spectrum, zeta_inverse, CaseLabel, EigenvalueRecord, PointSpectrumKind,
    SpectralClassification, EQUALITY_TOL, WARNING_BAND,
};
pub use structure::{
    adjoint_coupling, adjoint_transmission_check, boundary_triplet_residual, cayley_of,
    decoupling_check, hermitian_deviation, inverse_cayley, is_self_adjoint, lambda_matrix,
    tilde_lambda, transmission_residual, AdjointCheck, Decoupling,
};

use crate::error::{Error, Result};
use crate::spectral::{det2, is_finite, mat2, Mat2, C64};

/// The coupling matrix `[[α, β], [γ, δ]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingMatrix {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl CouplingMatrix {
    pub const fn new(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    /// Real-entried convenience constructor.
    pub fn real(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self::new(alpha.into(), beta.into(), gamma.into(), delta.into())
    }

    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn from_matrix(m: &Mat2) -> Self {
        Self::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
    }

    /// Checked constructor rejecting non-finite entries.
    pub fn try_from_matrix(m: &Mat2) -> Result<Self> {
        if !is_finite(m) {
            return Err(Error::InvalidParameter(
                "coupling matrix entries must be finite".into(),
            ));
        }
        Ok(Self::from_matrix(m))
    }

    pub fn matrix(&self) -> Mat2 {
        mat2(self.alpha, self.beta, self.gamma, self.delta)
    }

    pub fn det(&self) -> C64 {
        det2(&self.matrix())
    }

    pub fn trace(&self) -> C64 {
        self.alpha + self.delta
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.alpha.conj(),
            self.gamma.conj(),
            self.beta.conj(),
            self.delta.conj(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.matrix().iter().all(|v| *v == C64::default())
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }
}

impl From<Mat2> for CouplingMatrix {
    fn from(m: Mat2) -> Self {
        Self::from_matrix(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::c;

    #[test]
    fn det_trace_adjoint() {
        let a = CouplingMatrix::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, -3.0), c(4.0, 0.5));
        assert_eq!(a.det(), a.alpha * a.delta - a.beta * a.gamma);
        assert_eq!(a.trace(), c(5.0, 1.5));
        assert_eq!(a.adjoint().matrix(), a.matrix().adjoint());
        assert_eq!(a.adjoint().adjoint(), a);
        assert!(CouplingMatrix::try_from_matrix(&(a.matrix() * c(f64::NAN, 0.0))).is_err());
    }
}
