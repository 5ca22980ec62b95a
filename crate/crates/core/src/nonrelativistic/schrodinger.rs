//! The Schrödinger operator `−(1/2m) d²/dx²` with a general point interaction.

use crate::error::{Error, Result};
use crate::kernel::{sgn, Side};
use crate::point::{CouplingMatrix, EQUALITY_TOL};
use crate::spectral::{c, det2, diag, inv2, mat2, sigma0, sqrt_upper, vec2, Mat2, Vec2, C64, I};

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mass must be positive, got {m}")))
    }
}

/// `μ(z) = √(2mz)` with `Im μ > 0`.
pub fn mu_of(z: C64, m: f64) -> Result<C64> {
    check_mass(m)?;
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(Error::OnCut { z });
    }
    Ok(sqrt_upper(2.0 * m * z))
}

/// `4 − det A + 2iα/μ + 2iμδ`.
pub fn resolvent_condition(a: &CouplingMatrix, mu: C64) -> C64 {
    4.0 - a.det() + 2.0 * I * a.alpha / mu + 2.0 * I * mu * a.delta
}

/// `V A V*` with `V = diag(i, 1)`.
pub fn boundary_coupling(a: &CouplingMatrix) -> Mat2 {
    mat2(a.alpha, I * a.beta, -I * a.gamma, a.delta)
}

#[allow(non_snake_case)]
pub fn K_A_matrix(a: &CouplingMatrix, m: f64, z: C64) -> Result<Mat2> {
    let mu = mu_of(z, m)?;
    k_matrix_at(a, m, z, mu)
}

fn k_matrix_at(a: &CouplingMatrix, m: f64, z: C64, mu: C64) -> Result<Mat2> {
    let den = resolvent_condition(a, mu);
    if den.norm() <= EQUALITY_TOL {
        return Err(Error::EigenvalueHit { z, denominator: den.norm() });
    }
    let det = a.det();
    let num = mat2(
        mu * det - 2.0 * I * a.alpha,
        2.0 * a.beta,
        -2.0 * a.gamma,
        det / mu - 2.0 * I * a.delta,
    );
    Ok(num * (I * m / den))
}

/// `‖𝒜(σ₀ − M̂𝒜)⁻¹ + (2/m)K_A‖_F` with `𝒜 = −VAV*` and `M̂ = (i/2)diag(1/μ, μ)`.
pub fn krein_identity_check(a: &CouplingMatrix, m: f64, z: C64) -> Result<f64> {
    let mu = mu_of(z, m)?;
    let cal_a = -boundary_coupling(a);
    let weyl = diag(1.0 / mu, mu) * (I * 0.5);
    let inner = sigma0() - weyl * cal_a;
    let d = det2(&inner).norm();
    if d <= EQUALITY_TOL {
        return Err(Error::SingularMatrix { det_abs: d, tol: EQUALITY_TOL });
    }
    let lhs = cal_a * inv2(&inner, 0.0)?;
    let k = k_matrix_at(a, m, z, mu)?;
    Ok((lhs + k * c(2.0 / m, 0.0)).norm())
}

/// Resolvent kernel of the Schrödinger point interaction.
#[derive(Debug, Clone)]
pub struct SchrodingerKernel {
    pub m: f64,
    pub z: C64,
    pub mu: C64,
    pub k_matrix: Mat2,
}

impl SchrodingerKernel {
    /// `(f_z(x)/(iμ), g_z(x))`.
    pub fn basis(&self, x: f64, side: Side) -> Vec2 {
        let f = (I * self.mu * x.abs()).exp();
        vec2(f / (I * self.mu), sgn(x, side) * f)
    }

    pub fn free(&self, x: f64, y: f64) -> C64 {
        I * self.m / self.mu * (I * self.mu * (x - y).abs()).exp()
    }

    pub fn correction(&self, x: f64, y: f64, side: Side) -> C64 {
        let l = self.basis(x, side);
        let r = self.basis(y, side);
        (l.transpose() * self.k_matrix * r)[(0, 0)]
    }

    pub fn evaluate_sided(&self, x: f64, y: f64, side: Side) -> C64 {
        self.free(x, y) - self.correction(x, y, side)
    }

    pub fn evaluate(&self, x: f64, y: f64) -> C64 {
        self.evaluate_sided(x, y, Side::Plus)
    }

    pub fn decay(&self) -> f64 {
        self.mu.im
    }
}

pub fn schrodinger_resolvent_kernel(a: &CouplingMatrix, m: f64, z: C64) -> Result<SchrodingerKernel> {
    let mu = mu_of(z, m)?;
    Ok(SchrodingerKernel { m, z, mu, k_matrix: k_matrix_at(a, m, z, mu)? })
}

/// Eigenvalues off `[0, +∞)`: `z = μ²/(2m)` for the roots of
/// `2iδμ² + (4 − det A)μ + 2iα = 0` with `Im μ > 0`.
pub fn schrodinger_eigenvalues(a: &CouplingMatrix, m: f64) -> Result<Vec<C64>> {
    check_mass(m)?;
    let qa = 2.0 * I * a.delta;
    let qb = 4.0 - a.det();
    let qc = 2.0 * I * a.alpha;
    let small = |w: C64| w.norm() <= EQUALITY_TOL;
    let roots: Vec<C64> = if small(qa) {
        if small(qb) {
            if small(qc) {
                return Err(Error::DegenerateCondition);
            }
            Vec::new()
        } else {
            vec![-qc / qb]
        }
    } else {
        let disc = (qb * qb - 4.0 * qa * qc).sqrt();
        let q = if (qb.conj() * disc).re >= 0.0 { -0.5 * (qb + disc) } else { -0.5 * (qb - disc) };
        if small(q) {
            vec![C64::default(); 2]
        } else {
            vec![q / qa, qc / q]
        }
    };
    let mut out: Vec<C64> = roots
        .into_iter()
        .filter(|mu| mu.im > EQUALITY_TOL)
        .map(|mu| mu * mu / (2.0 * m))
        .collect();
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    out.dedup_by(|x, y| (*x - *y).norm() <= EQUALITY_TOL);
    Ok(out)
}

/// Boundary values `(ψ(0−), ψ(0+), ψ'(0−), ψ'(0+))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Traces {
    pub value_minus: C64,
    pub value_plus: C64,
    pub slope_minus: C64,
    pub slope_plus: C64,
}

impl Traces {
    /// `Γ̃₁ψ = (ψ'(0+) − ψ'(0−), ψ(0+) − ψ(0−))`.
    pub fn jumps(&self) -> Vec2 {
        vec2(self.slope_plus - self.slope_minus, self.value_plus - self.value_minus)
    }

    /// `Γ̃₂ψ = ½(ψ(0+) + ψ(0−), −ψ'(0+) − ψ'(0−))`.
    pub fn means(&self) -> Vec2 {
        vec2(self.value_plus + self.value_minus, -self.slope_plus - self.slope_minus) * c(0.5, 0.0)
    }
}

/// `Γ̃₁ψ − VAV*Γ̃₂ψ`.
pub fn h_transmission_residual(a: &CouplingMatrix, traces: &Traces) -> Vec2 {
    traces.jumps() - boundary_coupling(a) * traces.means()
}
