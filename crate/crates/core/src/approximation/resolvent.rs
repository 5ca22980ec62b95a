//! Approximating matrix, eigenvalue function and resolvent kernel of
//! `D₀ + A⊗|v_ε⟩⟨v_ε|`.

use super::{alpha1, alpha1_with_derivative, Profile};
use crate::error::{Error, Result};
use crate::kernel::{FreeKernel, KernelEvaluator, Side};
use crate::point::{CouplingMatrix, EQUALITY_TOL};
use crate::quadrature::{integrate, Adaptive};
use crate::spectral::{det2, dk_dz, dzeta_dz, inv2, sigma0, zeta_of, Mat2, C64, I};

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")))
    }
}

/// `σ₀ + (i/2) α₁(ε k(z)) A Z(z)`.
pub fn approx_matrix(
    a: &CouplingMatrix,
    m: f64,
    z: C64,
    eps: f64,
    profile: &Profile,
) -> Result<Mat2> {
    check_eps(eps)?;
    let free = FreeKernel::new(m, z)?;
    let form = alpha1(profile, eps * free.k);
    Ok(sigma0() + a.matrix() * free.z_matrix() * (I * 0.5 * form))
}

/// `η_ε(z) = det(σ₀ + (i/2)α₁(εk)AZ)`
/// `       = 1 + (i/2)α₁(αζ + δ/ζ) − α₁² det(A)/4`.
pub fn eta_epsilon(a: &CouplingMatrix, m: f64, z: C64, eps: f64, profile: &Profile) -> Result<C64> {
    Ok(eta_with_derivative(a, m, z, eps, profile)?.0)
}

/// `η_ε(z)` together with its analytic derivative in `z`.
pub fn eta_with_derivative(
    a: &CouplingMatrix,
    m: f64,
    z: C64,
    eps: f64,
    profile: &Profile,
) -> Result<(C64, C64)> {
    let k = crate::spectral::k_of(z, m);
    let zeta = zeta_of(z, m)?;
    let dk = dk_dz(z, m)?;
    let dzeta = dzeta_dz(z, m)?;
    let (form, dform) = alpha1_with_derivative(profile, eps * k);
    let trace = a.alpha * zeta + a.delta / zeta;
    let dtrace = (a.alpha - a.delta / (zeta * zeta)) * dzeta;
    let det = a.det();
    let dform_dz = dform * eps * dk;
    let value = 1.0 + I * 0.5 * form * trace - form * form * det / 4.0;
    let deriv = I * 0.5 * (dform_dz * trace + form * dtrace) - form * dform_dz * det / 2.0;
    Ok((value, deriv))
}

/// Resolvent kernel of the approximating operator.
#[derive(Debug, Clone)]
pub struct ApproxKernel {
    pub free: FreeKernel,
    pub profile: Profile,
    pub eps: f64,
    /// `T_ε·A` with `T_ε` the inverse of [`approx_matrix`].
    pub transfer: Mat2,
    pub quad: Adaptive,
}

impl ApproxKernel {
    fn profile_breaks(&self, extra: f64) -> Vec<f64> {
        let mut b = self.profile.breakpoints();
        b.push(extra);
        b
    }

    /// `F(x) = ∫ R(x, εs) v(s) ds`.
    pub fn left_factor(&self, x: f64, side: Side) -> Mat2 {
        let (lo, hi) = self.profile.support();
        integrate(
            |s| self.free.at_separation(x - self.eps * s, side) * C64::new(self.profile.evaluate(s), 0.0),
            lo,
            hi,
            &self.profile_breaks(x / self.eps),
            self.quad,
        )
    }

    /// `G(y) = ∫ v(t) R(εt, y) dt`.
    pub fn right_factor(&self, y: f64, side: Side) -> Mat2 {
        let (lo, hi) = self.profile.support();
        integrate(
            |t| self.free.at_separation(self.eps * t - y, side) * C64::new(self.profile.evaluate(t), 0.0),
            lo,
            hi,
            &self.profile_breaks(y / self.eps),
            self.quad,
        )
    }

    /// `F(x) T_ε A G(y)`.
    pub fn correction(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.left_factor(x, side) * self.transfer * self.right_factor(y, side)
    }

    /// `⟨v_ε, g⟩`-type pairing used by residual checks: `∫ v_ε(x) g(x) dx`.
    pub fn scaled_profile(&self, x: f64) -> f64 {
        self.profile.evaluate(x / self.eps) / self.eps
    }
}

impl KernelEvaluator for ApproxKernel {
    fn evaluate_sided(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.free.evaluate_sided(x, y, side) - self.correction(x, y, side)
    }
}

pub fn approx_resolvent_kernel(
    a: &CouplingMatrix,
    m: f64,
    z: C64,
    eps: f64,
    profile: &Profile,
) -> Result<ApproxKernel> {
    let mat = approx_matrix(a, m, z, eps, profile)?;
    let det = det2(&mat);
    if det.norm() <= EQUALITY_TOL {
        return Err(Error::NotInResolventSet {
            z,
            residual: det.norm(),
        });
    }
    Ok(ApproxKernel {
        free: FreeKernel::new(m, z)?,
        profile: profile.clone(),
        eps,
        transfer: inv2(&mat, 0.0)? * a.matrix(),
        quad: Adaptive::with_tol(1e-14, 1e-12),
    })
}
