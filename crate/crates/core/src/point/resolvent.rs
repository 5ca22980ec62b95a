//! Resolvent kernel of the point interaction and the boundary-triplet data.

use super::{CouplingMatrix, EQUALITY_TOL};
use crate::error::{Error, Result};
use crate::kernel::{FreeKernel, KernelEvaluator, Side};
use crate::spectral::{det2, inv2, sigma0, sigma2, Mat2, C64, I};

/// `R(x,y) − R(x,0) T A R(0,y)` with `T = (σ₀ + (i/2)AZ)⁻¹`.
#[derive(Debug, Clone)]
pub struct PointKernel {
    pub free: FreeKernel,
    pub coupling: CouplingMatrix,
    /// `T·A`.
    pub transfer: Mat2,
}

impl PointKernel {
    /// The rank-two correction `R(x,0) T A R(0,y)`.
    #[inline]
    pub fn correction(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.free.to_origin(x, side) * self.transfer * self.free.from_origin(y, side)
    }

    pub fn m(&self) -> f64 {
        self.free.m
    }

    pub fn z(&self) -> C64 {
        self.free.z
    }
}

impl KernelEvaluator for PointKernel {
    fn evaluate_sided(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.free.evaluate_sided(x, y, side) - self.correction(x, y, side)
    }
}

pub fn resolvent_kernel(a: &CouplingMatrix, m: f64, z: C64) -> Result<PointKernel> {
    let free = FreeKernel::new(m, z)?;
    let mat = sigma0() + a.matrix() * free.z_matrix() * (I * 0.5);
    let det = det2(&mat);
    if det.norm() <= EQUALITY_TOL {
        return Err(Error::NotInResolventSet {
            z,
            residual: det.norm(),
        });
    }
    let t = inv2(&mat, 0.0)?;
    Ok(PointKernel {
        free,
        coupling: *a,
        transfer: t * a.matrix(),
    })
}

/// `M(z) = (i/2)σ₂Z(z)σ₂`.
pub fn weyl_function(m: f64, z: C64) -> Result<Mat2> {
    let free = FreeKernel::new(m, z)?;
    Ok(sigma2() * free.z_matrix() * sigma2() * (I * 0.5))
}

/// `x ↦ iR_z(x,0)σ₂`.
pub fn gamma_field_kernel(m: f64, z: C64, x: f64, side: Side) -> Result<Mat2> {
    let free = FreeKernel::new(m, z)?;
    Ok(free.to_origin(x, side) * sigma2() * I)
}
