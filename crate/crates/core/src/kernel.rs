//! Pointwise-evaluable integral kernels and the free Dirac resolvent.

use crate::error::{Error, Result};
use crate::spectral::{k_of, on_cut, z_matrix, Mat2, C64, I};

/// Which one-sided limit to take when an argument difference vanishes.
///
/// `Plus` means the first argument approaches from the right, so every
/// `sgn(0)` that arises is read as `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    Minus,
    #[default]
    Plus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Minus => -1.0,
            Side::Plus => 1.0,
        }
    }
}

/// `sgn(d)` with the tie broken by `side`.
#[inline]
pub fn sgn(d: f64, side: Side) -> f64 {
    if d > 0.0 {
        1.0
    } else if d < 0.0 {
        -1.0
    } else {
        side.sign()
    }
}

/// A 2×2 matrix-valued integral kernel.
pub trait KernelEvaluator: Send + Sync {
    fn evaluate_sided(&self, x: f64, y: f64, side: Side) -> Mat2;

    /// Value at `(x, y)`; on the diagonal the right-hand limit is returned.
    fn evaluate(&self, x: f64, y: f64) -> Mat2 {
        self.evaluate_sided(x, y, Side::Plus)
    }
}

/// Free resolvent kernel `(i/2)(Z + sgn(x−y)σ₁) e^{ik|x−y|}`.
#[derive(Debug, Clone)]
pub struct FreeKernel {
    pub m: f64,
    pub z: C64,
    pub k: C64,
    pub zeta: C64,
    zmat: Mat2,
}

impl FreeKernel {
    pub fn new(m: f64, z: C64) -> Result<Self> {
        let k = k_of(z, m);
        if k == C64::default() {
            return Err(Error::BranchPoint { z });
        }
        if on_cut(z, m) {
            return Err(Error::OnCut { z });
        }
        let zmat = z_matrix(z, m)?;
        Ok(Self {
            m,
            z,
            k,
            zeta: zmat[(0, 0)],
            zmat,
        })
    }

    /// Kernel with prescribed `k` and `ζ`, for rescaled models whose branch
    /// data is computed elsewhere.
    pub fn from_parts(m: f64, z: C64, k: C64, zeta: C64) -> Result<Self> {
        if k == C64::default() || zeta == C64::default() {
            return Err(Error::BranchPoint { z });
        }
        Ok(Self {
            m,
            z,
            k,
            zeta,
            zmat: crate::spectral::diag(zeta, zeta.inv()),
        })
    }

    pub fn z_matrix(&self) -> Mat2 {
        self.zmat
    }

    /// Decay rate `Im k(z)`.
    pub fn decay(&self) -> f64 {
        self.k.im
    }

    /// Kernel as a function of the signed separation `d = x − y`.
    #[inline]
    pub fn at_separation(&self, d: f64, side: Side) -> Mat2 {
        let s = sgn(d, side);
        let phase = (I * self.k * d.abs()).exp();
        let half = I * 0.5 * phase;
        let zeta = self.zeta;
        let zi = self.zmat[(1, 1)];
        Mat2::new(half * zeta, half * s, half * s, half * zi)
    }

    /// `R_z(x, 0)`.
    #[inline]
    pub fn to_origin(&self, x: f64, side: Side) -> Mat2 {
        self.at_separation(x, side)
    }

    /// `R_z(0, y)`; at `y = 0` the sign of `0 − y` follows `side`.
    #[inline]
    pub fn from_origin(&self, y: f64, side: Side) -> Mat2 {
        self.at_separation(-y, side)
    }

    /// One-sided traces `R_z(0±, 0)`.
    pub fn traces_at_origin(&self) -> (Mat2, Mat2) {
        (
            self.at_separation(0.0, Side::Minus),
            self.at_separation(0.0, Side::Plus),
        )
    }

    pub fn sigma1_jump(&self) -> Mat2 {
        let (minus, plus) = self.traces_at_origin();
        minus - plus
    }
}

impl KernelEvaluator for FreeKernel {
    fn evaluate_sided(&self, x: f64, y: f64, side: Side) -> Mat2 {
        self.at_separation(x - y, side)
    }
}

/// Kernel backed by a closure.
pub struct FnKernel<F>(pub F);

impl<F> KernelEvaluator for FnKernel<F>
where
    F: Fn(f64, f64, Side) -> Mat2 + Send + Sync,
{
    fn evaluate_sided(&self, x: f64, y: f64, side: Side) -> Mat2 {
        (self.0)(x, y, side)
    }
}
