//! Second-order finite differences for the Schrödinger point interaction on
//! `[−L, L]` with Dirichlet ends.
//!
//! Unknowns are the interior nodes of the two half-grids. The four interface
//! values `ψ(0±)` enter only through one-sided second-order derivative
//! stencils and are eliminated with the transmission condition.

use super::{DiscretizedOperator, OperatorKind};
use crate::error::{Error, Result};
use crate::nonrelativistic::boundary_coupling;
use crate::point::CouplingMatrix;
use crate::spectral::{det2, inv2, Mat2, C64};
use nalgebra::{DMatrix, DVector, Matrix2x4};

#[derive(Debug, Clone)]
pub struct SchrodingerFd {
    pub coupling: CouplingMatrix,
    pub m: f64,
    pub half_width: f64,
    pub step: f64,
    /// Interior nodes, left half first.
    pub grid: Vec<f64>,
    /// `(ψ(0+), ψ(0−))` as a linear map of `(ψ(−h), ψ(−2h), ψ(h), ψ(2h))`.
    pub interface: Matrix2x4<C64>,
    matrix: DMatrix<C64>,
}

/// Coefficients of `(p, q, l₁, l₂, r₁, r₂)` in a linear expression.
type Row = [C64; 6];

fn lin(coeffs: [f64; 6]) -> Row {
    coeffs.map(|c| C64::new(c, 0.0))
}

fn comb(a: C64, x: &Row, b: C64, y: &Row) -> Row {
    std::array::from_fn(|i| a * x[i] + b * y[i])
}

fn interface_map(a: &CouplingMatrix, h: f64) -> Result<Matrix2x4<C64>> {
    let (one, s) = (C64::new(1.0, 0.0), 1.0 / (2.0 * h));
    let p = lin([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let q = lin([0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    let slope_plus = lin([-3.0 * s, 0.0, 0.0, 0.0, 4.0 * s, -s]);
    let slope_minus = lin([0.0, 3.0 * s, -4.0 * s, s, 0.0, 0.0]);
    let half = C64::new(0.5, 0.0);
    let jumps = [comb(one, &slope_plus, -one, &slope_minus), comb(one, &p, -one, &q)];
    let means = [comb(half, &p, half, &q), comb(-half, &slope_plus, -half, &slope_minus)];
    let b = boundary_coupling(a);
    let rows: Vec<Row> = (0..2)
        .map(|i| {
            let bm = comb(b[(i, 0)], &means[0], b[(i, 1)], &means[1]);
            comb(one, &jumps[i], -one, &bm)
        })
        .collect();
    let e = Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
    let d = det2(&e).norm();
    if d <= 1e-14 * e.norm().powi(2) {
        return Err(Error::SingularMatrix { det_abs: d, tol: 1e-14 });
    }
    let g = Matrix2x4::from_fn(|i, j| rows[i][j + 2]);
    Ok(-(inv2(&e, 0.0)? * g))
}

impl SchrodingerFd {
    /// `n` is the number of intervals on `[−L, L]`; it must be even.
    pub fn new(a: &CouplingMatrix, m: f64, half_width: f64, n: usize) -> Result<Self> {
        if n < 64 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("need an even N >= 64, got {n}")));
        }
        if !(m > 0.0 && half_width > 0.0) {
            return Err(Error::InvalidParameter("mass and L must be positive".into()));
        }
        let half = n / 2;
        let h = half_width / half as f64;
        let side = half - 1;
        let dim = 2 * side;
        let grid: Vec<f64> = (1..=side)
            .map(|j| -half_width + j as f64 * h)
            .chain((1..=side).map(|j| j as f64 * h))
            .collect();
        let interface = interface_map(a, h)?;
        // indices of ψ(−h), ψ(−2h), ψ(h), ψ(2h)
        let near = [side - 1, side - 2, side, side + 1];
        let scale = -1.0 / (2.0 * m * h * h);
        let mut mat = DMatrix::<C64>::zeros(dim, dim);
        for i in 0..dim {
            mat[(i, i)] += -2.0 * scale;
            let left_end = i == 0 || i == side;
            let right_end = i == side - 1 || i == dim - 1;
            if !left_end {
                mat[(i, i - 1)] += scale;
            }
            if !right_end {
                mat[(i, i + 1)] += scale;
            }
        }
        // ψ(−h) sees ψ(0−) on its right, ψ(h) sees ψ(0+) on its left
        for (row, which) in [(side - 1, 1), (side, 0)] {
            for (col, &idx) in near.iter().enumerate() {
                mat[(row, idx)] += interface[(which, col)] * scale;
            }
        }
        Ok(Self {
            coupling: *a,
            m,
            half_width,
            step: h,
            grid,
            interface,
            matrix: mat,
        })
    }

    /// Eigenvalue closest to `shift`, by inverse iteration.
    pub fn eigenvalue_near(&self, shift: C64) -> Result<C64> {
        let dim = self.matrix.nrows();
        let shifted = &self.matrix - DMatrix::<C64>::identity(dim, dim) * shift;
        let lu = shifted.lu();
        let mut x = DVector::<C64>::from_fn(dim, |i, _| C64::new(1.0 + (i % 7) as f64 * 0.1, 0.0));
        x /= C64::new(x.norm(), 0.0);
        let mut estimate = shift;
        for _ in 0..500 {
            let y = lu.solve(&x).ok_or(Error::SingularMatrix { det_abs: 0.0, tol: 0.0 })?;
            let mu = x.dotc(&y);
            let next = shift + 1.0 / mu;
            let norm = y.norm();
            x = y / C64::new(norm, 0.0);
            if (next - estimate).norm() <= 1e-14 * (1.0 + next.norm()) {
                return Ok(next);
            }
            estimate = next;
        }
        Err(Error::NoConvergence(format!("inverse iteration near {shift}")))
    }
}

impl DiscretizedOperator for SchrodingerFd {
    fn kind(&self) -> OperatorKind {
        OperatorKind::FiniteDiffSchrodinger
    }

    fn grid(&self) -> &[f64] {
        &self.grid
    }

    fn dense(&self) -> DMatrix<C64> {
        self.matrix.clone()
    }
}

pub fn schrodinger_fd_matrix(a: &CouplingMatrix, m: f64, half_width: f64, n: usize) -> Result<SchrodingerFd> {
    SchrodingerFd::new(a, m, half_width, n)
}
