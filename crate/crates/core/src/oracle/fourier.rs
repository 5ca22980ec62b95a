//! Periodic Fourier discretisation of `D₀ + A⊗|v_ε⟩⟨v_ε|` on `[−L, L)`.
//!
//! In the unitary grid basis `u_j = √h ψ(x_j)` the operator is
//! `D₀ + U A Uᴴ` with `U = [w⊗e₁, w⊗e₂]`, `w_j = √h v̄_ε(x_j)` and `v̄_ε` the cell
//! average of `v_ε`. The free part is diagonal in Fourier space with blocks
//! `B_n = ξ_n σ₁ + m σ₃`, so by the determinant lemma the eigenvalues off
//! `σ(D₀)` are the zeros of `det(σ₀ + A S(z))`,
//! `S(z) = Σ_n |ŵ_n|² (B_n − z)⁻¹`.

use super::{DiscretizedOperator, OperatorKind};
use crate::approximation::Profile;
use crate::contour::{Rect, RootFinder};
use crate::error::{Error, Result};
use crate::point::CouplingMatrix;
use crate::quadrature::{integrate, Adaptive};
use crate::spectral::{det2, mat2, sigma0, Mat2, C64};
use nalgebra::DMatrix;
use rustfft::FftPlanner;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct FourierDirac {
    pub coupling: CouplingMatrix,
    pub m: f64,
    pub eps: f64,
    pub half_width: f64,
    pub grid: Vec<f64>,
    /// Angular frequencies `ξ_n` in FFT order; the unpaired Nyquist mode is
    /// given frequency zero so that the derivative stays skew-hermitian.
    pub freqs: Vec<f64>,
    /// Real grid weights `w_j`.
    pub weights: Vec<f64>,
    /// `|ŵ_n|²` under the unitary transform.
    pub spectrum: Vec<f64>,
}

/// Cell averages `(1/h)∫ v_ε` over `[x_j − h/2, x_j + h/2]`.
fn cell_averages(profile: &Profile, eps: f64, grid: &[f64], h: f64) -> Vec<f64> {
    let (lo, hi) = profile.support();
    let breaks = profile.breakpoints();
    let opts = Adaptive::with_tol(1e-15, 1e-13);
    grid.iter()
        .map(|&x| {
            let a = ((x - 0.5 * h) / eps).max(lo);
            let b = ((x + 0.5 * h) / eps).min(hi);
            if a >= b {
                0.0
            } else {
                integrate(|s| profile.evaluate(s), a, b, &breaks, opts) / h
            }
        })
        .collect()
}

impl FourierDirac {
    pub fn new(
        a: &CouplingMatrix,
        m: f64,
        eps: f64,
        profile: &Profile,
        half_width: f64,
        n: usize,
    ) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("grid size must be even and >= 4, got {n}")));
        }
        if !(eps > 0.0 && half_width > 0.0) {
            return Err(Error::InvalidParameter("epsilon and L must be positive".into()));
        }
        let h = 2.0 * half_width / n as f64;
        if eps < 4.0 * h {
            return Err(Error::Resolution { width: eps, min: 4.0 * h });
        }
        if eps * profile.support_radius() >= half_width {
            return Err(Error::InvalidParameter("scaled profile does not fit in the box".into()));
        }
        let grid: Vec<f64> = (0..n).map(|j| -half_width + j as f64 * h).collect();
        let weights: Vec<f64> = cell_averages(profile, eps, &grid, h)
            .into_iter()
            .map(|v| v * h.sqrt())
            .collect();
        let freqs: Vec<f64> = (0..n)
            .map(|j| {
                let k = match j.cmp(&(n / 2)) {
                    std::cmp::Ordering::Less => j as f64,
                    std::cmp::Ordering::Equal => 0.0,
                    std::cmp::Ordering::Greater => j as f64 - n as f64,
                };
                PI * k / half_width
            })
            .collect();
        let mut buf: Vec<C64> = weights.iter().map(|&w| C64::new(w, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let spectrum = buf.iter().map(|c| c.norm_sqr() / n as f64).collect();
        Ok(Self {
            coupling: *a,
            m,
            eps,
            half_width,
            grid,
            freqs,
            weights,
            spectrum,
        })
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / self.grid.len() as f64
    }

    /// `S(z)` and `S'(z)`.
    pub fn coupling_block(&self, z: C64) -> (Mat2, Mat2) {
        let mut s = Mat2::zeros();
        let mut ds = Mat2::zeros();
        for (&xi, &weight) in self.freqs.iter().zip(&self.spectrum) {
            if weight == 0.0 {
                continue;
            }
            let den = xi * xi + self.m * self.m - z * z;
            let num = mat2(self.m + z, C64::new(xi, 0.0), C64::new(xi, 0.0), z - self.m);
            let inv = num / den;
            s += inv * C64::new(weight, 0.0);
            ds += inv * inv * C64::new(weight, 0.0);
        }
        (s, ds)
    }

    /// `det(σ₀ + A S(z))` and its derivative.
    pub fn secular(&self, z: C64) -> (C64, C64) {
        let a = self.coupling.matrix();
        let (s, ds) = self.coupling_block(z);
        let mat = sigma0() + a * s;
        let dmat = a * ds;
        let adj = mat2(mat[(1, 1)], -mat[(0, 1)], -mat[(1, 0)], mat[(0, 0)]);
        (det2(&mat), (adj * dmat).trace())
    }

    /// Eigenvalues of the discretised operator inside `region`, which must
    /// avoid the free spectrum `|Re z| ≥ m` on the real axis.
    pub fn eigenvalues_in(&self, region: &Rect) -> Result<Vec<C64>> {
        let finder = RootFinder::default();
        let roots = finder.roots(region, |z| Ok(self.secular(z)))?;
        Ok(roots
            .into_iter()
            .flat_map(|r| std::iter::repeat_n(r.z, r.winding.max(1) as usize))
            .collect())
    }
}

impl DiscretizedOperator for FourierDirac {
    fn kind(&self) -> OperatorKind {
        OperatorKind::FourierDirac
    }

    fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Dense `2N × 2N` matrix in the unitary grid basis, components stacked.
    fn dense(&self) -> DMatrix<C64> {
        let n = self.grid.len();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        // derivative matrix, column by column
        let mut deriv = DMatrix::<C64>::zeros(n, n);
        for j in 0..n {
            let mut col = vec![C64::default(); n];
            col[j] = C64::new(1.0, 0.0);
            fwd.process(&mut col);
            for (c, &xi) in col.iter_mut().zip(&self.freqs) {
                *c *= C64::new(0.0, xi) / n as f64;
            }
            inv.process(&mut col);
            for i in 0..n {
                deriv[(i, j)] = col[i];
            }
        }
        let a = self.coupling.matrix();
        let mut out = DMatrix::<C64>::zeros(2 * n, 2 * n);
        let minus_i = C64::new(0.0, -1.0);
        for i in 0..n {
            out[(i, i)] += self.m;
            out[(n + i, n + i)] -= self.m;
            for j in 0..n {
                let d = minus_i * deriv[(i, j)];
                out[(i, n + j)] += d;
                out[(n + i, j)] += d;
                let ww = self.weights[i] * self.weights[j];
                if ww != 0.0 {
                    out[(i, j)] += a[(0, 0)] * ww;
                    out[(i, n + j)] += a[(0, 1)] * ww;
                    out[(n + i, j)] += a[(1, 0)] * ww;
                    out[(n + i, n + j)] += a[(1, 1)] * ww;
                }
            }
        }
        out
    }
}

pub fn fourier_dirac_matrix(
    a: &CouplingMatrix,
    m: f64,
    eps: f64,
    profile: &Profile,
    half_width: f64,
    n: usize,
) -> Result<FourierDirac> {
    FourierDirac::new(a, m, eps, profile, half_width, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_eigenvalues;
    use crate::spectral::c;

    #[test]
    fn free_spectrum_is_relativistic_dispersion() {
        let op = FourierDirac::new(&CouplingMatrix::zero(), 1.0, 2.5, &Profile::boxcar(), 4.0, 16).unwrap();
        let ev = dense_eigenvalues(&op.dense()).unwrap();
        let mut want: Vec<f64> = op
            .freqs
            .iter()
            .flat_map(|&xi| {
                let e = (xi * xi + 1.0).sqrt();
                [e, -e]
            })
            .collect();
        want.sort_by(f64::total_cmp);
        let mut got: Vec<f64> = ev.iter().map(|z| z.re).collect();
        got.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10, "{g} vs {w}");
        }
    }

    #[test]
    fn hermitian_coupling_gives_hermitian_matrix() {
        let a = CouplingMatrix::new(c(1.0, 0.0), c(0.5, -2.0), c(0.5, 2.0), c(-0.7, 0.0));
        let op = FourierDirac::new(&a, 1.0, 1.5, &Profile::triangle(), 4.0, 32).unwrap();
        let d = op.dense();
        assert!((&d - d.adjoint()).iter().all(|e| e.norm() < 1e-12));
    }

    #[test]
    fn secular_roots_match_dense_eigenvalues() {
        let a = CouplingMatrix::new(c(2.0, 0.3), c(0.5, 0.0), c(0.0, -0.4), c(1.5, 0.0));
        let op = FourierDirac::new(&a, 1.0, 1.0, &Profile::boxcar(), 5.0, 64).unwrap();
        let region = Rect::new(-0.9, 0.9, -1.0, 1.0).unwrap();
        let roots = op.eigenvalues_in(&region).unwrap();
        assert!(!roots.is_empty());
        let dense = dense_eigenvalues(&op.dense()).unwrap();
        let inside: Vec<&C64> = dense.iter().filter(|z| region.contains(**z)).collect();
        assert_eq!(inside.len(), roots.len());
        for r in &roots {
            let best = dense.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9, "root {r} off by {best}");
        }
    }

    #[test]
    fn unresolved_profile_is_rejected() {
        let a = CouplingMatrix::real(2.0, 0.0, 0.0, 2.0);
        let err = FourierDirac::new(&a, 1.0, 0.1, &Profile::boxcar(), 30.0, 2048).unwrap_err();
        assert!(matches!(err, Error::Resolution { .. }));
    }
}
