//! Dirac operators with speed of light `c` and the coupling scaling that
//! produces a non-relativistic limit.

use crate::error::{Error, Result};
use crate::kernel::{FreeKernel, KernelEvaluator, Side};
use crate::point::{CouplingMatrix, PointKernel, EQUALITY_TOL};
use crate::spectral::{det2, inv2, sigma0, sqrt_upper, Mat2, C64, I};

/// `A_c = [[α/(2mc), β], [γ, 2mcδ]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledCoupling {
    pub base: CouplingMatrix,
    pub m: f64,
    pub c: f64,
    pub scaled: CouplingMatrix,
}

pub fn scale_coupling(a: &CouplingMatrix, m: f64, c: f64) -> Result<ScaledCoupling> {
    if !(m > 0.0 && m.is_finite() && c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("need m > 0 and c > 0, got m = {m}, c = {c}")));
    }
    let f = 2.0 * m * c;
    Ok(ScaledCoupling {
        base: *a,
        m,
        c,
        scaled: CouplingMatrix::new(a.alpha / f, a.beta, a.gamma, a.delta * f),
    })
}

/// Resolvent kernel of the interaction `A` for the Dirac operator with mass
/// `m` and speed of light `c`:
/// `R^c(x,y) − c R^c(x,0) (σ₀ + (i/2)AZ_c)⁻¹ A R^c(0,y)`.
#[derive(Debug, Clone)]
pub struct RelativisticKernel {
    /// The same kernel with the factor `1/c` removed.
    pub unscaled: PointKernel,
    pub c: f64,
}

impl RelativisticKernel {
    pub fn k(&self) -> C64 {
        self.unscaled.free.k
    }

    pub fn zeta(&self) -> C64 {
        self.unscaled.free.zeta
    }

    pub fn decay(&self) -> f64 {
        self.unscaled.free.decay()
    }

    /// Free part `R^c`.
    pub fn free(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.unscaled.free.evaluate_sided(x, y, side) / C64::new(self.c, 0.0)
    }

    /// `c R^c(x,0) T_c A R^c(0,y)`.
    pub fn correction(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.unscaled.correction(x, y, side) / C64::new(self.c, 0.0)
    }
}

impl KernelEvaluator for RelativisticKernel {
    fn evaluate_sided(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.unscaled.evaluate_sided(x, y, side) / C64::new(self.c, 0.0)
    }
}

/// Kernel at `z = e + mc²`; `e` is the energy measured from the rest mass,
/// which keeps `k_c = √((e/c)² + 2me)` free of cancellation for large `c`.
pub fn relativistic_kernel_shifted(
    a: &CouplingMatrix,
    m: f64,
    c: f64,
    e: C64,
) -> Result<RelativisticKernel> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let rest = m * c * c;
    let z = e + rest;
    let k = sqrt_upper(e * (e + 2.0 * rest)) / c;
    if k == C64::default() {
        return Err(Error::BranchPoint { z });
    }
    if k.im == 0.0 {
        return Err(Error::OnCut { z });
    }
    let zeta = if m == 0.0 { C64::new(z.im.signum(), 0.0) } else { (e + 2.0 * rest) / (c * k) };
    let free = FreeKernel::from_parts(m * c, z, k, zeta)?;
    let mat = sigma0() + a.matrix() * free.z_matrix() * (I * 0.5);
    let det = det2(&mat);
    if det.norm() <= EQUALITY_TOL {
        return Err(Error::NotInResolventSet { z, residual: det.norm() });
    }
    Ok(RelativisticKernel {
        unscaled: PointKernel {
            free,
            coupling: *a,
            transfer: inv2(&mat, 0.0)? * a.matrix(),
        },
        c,
    })
}

pub fn relativistic_kernel_c(a: &CouplingMatrix, m: f64, c: f64, z: C64) -> Result<RelativisticKernel> {
    relativistic_kernel_shifted(a, m, c, z - m * c * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::resolvent_kernel;
    use crate::spectral::c as cx;

    #[test]
    fn scaling_examples() {
        let a = CouplingMatrix::new(cx(1.0, 2.0), cx(0.5, 0.0), cx(0.0, -1.0), cx(3.0, 1.0));
        assert_eq!(scale_coupling(&a, 0.5, 1.0).unwrap().scaled, a);
        let s = scale_coupling(&CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0), 1.0, 10.0).unwrap();
        assert!((s.scaled.alpha - cx(-0.1, 0.0)).norm() < 1e-16);
        assert_eq!(s.scaled.delta, C64::default());
        for c in [0.3, 7.0, 1e3] {
            let s = scale_coupling(&a, 1.3, c).unwrap();
            assert!((s.scaled.det() - a.det()).norm() < 1e-12 * (1.0 + a.det().norm()));
        }
    }

    #[test]
    fn unit_speed_reduces_to_point_kernel() {
        let a = CouplingMatrix::new(cx(1.0, 0.5), cx(0.3, -1.0), cx(-0.2, 1.0), cx(-2.0, 0.1));
        let z = cx(0.3, 0.7);
        let rel = relativistic_kernel_c(&a, 1.0, 1.0, z).unwrap();
        let point = resolvent_kernel(&a, 1.0, z).unwrap();
        for (x, y) in [(0.4, -0.3), (-1.0, -2.0), (1.5, 0.2)] {
            assert!((rel.evaluate(x, y) - point.evaluate(x, y)).norm() < 1e-14);
        }
    }

    #[test]
    fn scaling_identity() {
        let a = CouplingMatrix::new(cx(1.0, 0.5), cx(0.3, -1.0), cx(-0.2, 1.0), cx(-2.0, 0.1));
        let (m, c) = (0.7, 3.0);
        let z = cx(0.4, 1.1);
        let rel = relativistic_kernel_c(&a, m, c, z).unwrap();
        let point = resolvent_kernel(&a, m * c, z / c).unwrap();
        for (x, y) in [(0.4, -0.3), (-1.0, -2.0), (1.5, 0.2)] {
            let lhs = rel.evaluate(x, y);
            let rhs = point.evaluate(x, y) / C64::new(c, 0.0);
            assert!((lhs - rhs).norm() < 1e-13, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn free_kernel_decays_at_rate_im_k() {
        let rel = relativistic_kernel_c(&CouplingMatrix::zero(), 1.0, 10.0, cx(99.0, 0.5)).unwrap();
        let kappa = rel.decay();
        let r1 = rel.evaluate(2.0, 0.0).norm();
        let r2 = rel.evaluate(4.0, 0.0).norm();
        assert!(((r1 / r2).ln() / 2.0 - kappa).abs() < 1e-10);
    }
}
