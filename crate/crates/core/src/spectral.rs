//! Branch-cut-aware spectral functions and 2×2 complex linear algebra.
//!
//! Everything here works with the square-root branch whose imaginary part is
//! strictly positive off `[0, +∞)`. On the cut itself the nonnegative real
//! root is returned.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Vec2 = Vector2<C64>;

/// Default relative rank tolerance for [`kernel_basis`].
pub const RANK_TOL: f64 = 1e-10;

pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn mat2(a: C64, b: C64, g: C64, d: C64) -> Mat2 {
    Mat2::new(a, b, g, d)
}

pub fn diag(a: C64, d: C64) -> Mat2 {
    Mat2::new(a, C64::default(), C64::default(), d)
}

pub fn vec2(a: C64, b: C64) -> Vec2 {
    Vec2::new(a, b)
}

/// Identity, σ₀.
pub fn sigma0() -> Mat2 {
    Mat2::identity()
}

pub fn sigma1() -> Mat2 {
    mat2(cr(0.0), cr(1.0), cr(1.0), cr(0.0))
}

pub fn sigma2() -> Mat2 {
    mat2(cr(0.0), -I, I, cr(0.0))
}

pub fn sigma3() -> Mat2 {
    mat2(cr(1.0), cr(0.0), cr(0.0), cr(-1.0))
}

/// Mass and speed of light.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub m: f64,
    pub c: f64,
}

impl ModelParams {
    pub fn new(m: f64, c: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidParameter(format!("mass must be finite, got {m}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "speed of light must be positive, got {c}"
            )));
        }
        Ok(Self { m, c })
    }

    pub fn with_mass(m: f64) -> Result<Self> {
        Self::new(m, 1.0)
    }
}

/// Square root with `Im √w > 0` off `[0, +∞)` and the nonnegative root on it.
pub fn sqrt_upper(w: C64) -> C64 {
    if w.im == 0.0 {
        return if w.re >= 0.0 {
            cr(w.re.sqrt())
        } else {
            c(0.0, (-w.re).sqrt())
        };
    }
    let s = w.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// `k(z) = √(z² − m²)`, evaluated as `√((z − m)(z + m))`.
pub fn k_of(z: C64, m: f64) -> C64 {
    sqrt_upper((z - m) * (z + m))
}

/// `d k / d z = z / k`.
pub fn dk_dz(z: C64, m: f64) -> Result<C64> {
    let k = k_of(z, m);
    if k == C64::default() {
        return Err(Error::BranchPoint { z });
    }
    Ok(z / k)
}

/// `ζ(z) = (z + m) / k(z)`; for `m = 0` off the real axis this is `sgn(Im z)`.
pub fn zeta_of(z: C64, m: f64) -> Result<C64> {
    if m == 0.0 && z.im != 0.0 {
        return Ok(cr(z.im.signum()));
    }
    let k = k_of(z, m);
    if k == C64::default() {
        return Err(Error::BranchPoint { z });
    }
    Ok((z + m) / k)
}

/// `dζ/dz = −m (z + m) / k³`.
pub fn dzeta_dz(z: C64, m: f64) -> Result<C64> {
    if m == 0.0 && z.im != 0.0 {
        return Ok(C64::default());
    }
    let k = k_of(z, m);
    if k == C64::default() {
        return Err(Error::BranchPoint { z });
    }
    Ok(-m * (z + m) / (k * k * k))
}

/// `Z(z) = diag(ζ, 1/ζ)`.
pub fn z_matrix(z: C64, m: f64) -> Result<Mat2> {
    let zeta = zeta_of(z, m)?;
    if zeta == C64::default() {
        return Err(Error::BranchPoint { z });
    }
    Ok(diag(zeta, zeta.inv()))
}

/// Whether `z` lies on `(−∞, −|m|] ∪ [|m|, +∞)`.
pub fn on_cut(z: C64, m: f64) -> bool {
    z.im == 0.0 && z.re.abs() >= m.abs()
}

pub fn det2(m: &Mat2) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// Inverse of a 2×2 matrix, refusing when `|det| <= tol`.
pub fn inv2(m: &Mat2, tol: f64) -> Result<Mat2> {
    let det = det2(m);
    if det.norm().is_nan() || det.norm() <= tol {
        return Err(Error::SingularMatrix {
            det_abs: det.norm(),
            tol,
        });
    }
    Ok(mat2(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det)
}

/// Orthonormal basis of the numerical null space. Singular values below
/// `tol · max(σ_max, 1)` count as zero, so a matrix that is zero up to
/// rounding has a two-dimensional kernel.
pub fn kernel_basis(m: &Mat2, tol: f64) -> Vec<Vec2> {
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv = svd.singular_values;
    let smax = sv[0].max(sv[1]);
    if smax == 0.0 {
        return vec![vec2(cr(1.0), cr(0.0)), vec2(cr(0.0), cr(1.0))];
    }
    let cutoff = tol * smax.max(1.0);
    (0..2)
        .filter(|&i| sv[i] <= cutoff)
        .map(|i| v_t.row(i).adjoint())
        .collect()
}

/// Largest singular value.
pub fn spectral_norm(m: &Mat2) -> f64 {
    let sv = m.singular_values();
    sv[0].max(sv[1])
}

pub fn is_finite(m: &Mat2) -> bool {
    m.iter().all(|v| v.re.is_finite() && v.im.is_finite())
}
