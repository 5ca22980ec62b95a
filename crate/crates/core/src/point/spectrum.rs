//! Point spectrum: classification, eigenvalues and eigenfunctions.

use std::fmt;

use super::CouplingMatrix;
use crate::error::{Error, Result};
use crate::kernel::{sgn, Side};
use crate::spectral::{
    det2, diag, k_of, kernel_basis, sigma0, zeta_of, Mat2, Vec2, C64, I, RANK_TOL,
};

/// Absolute tolerance for the equalities that separate classification cases.
pub const EQUALITY_TOL: f64 = 1e-12;
/// Quantities this close to zero (but above [`EQUALITY_TOL`]) trigger a warning.
pub const WARNING_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    C1a,
    C1b,
    C1cPlus,
    C1cMinus,
    C1d,
    C2a,
    C2b,
    C2c,
    C2d,
    C2e,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::C1a => "1a",
            CaseLabel::C1b => "1b",
            CaseLabel::C1cPlus => "1c_plus",
            CaseLabel::C1cMinus => "1c_minus",
            CaseLabel::C1d => "1d",
            CaseLabel::C2a => "2a",
            CaseLabel::C2b => "2b",
            CaseLabel::C2c => "2c",
            CaseLabel::C2d => "2d",
            CaseLabel::C2e => "2e",
        }
    }

    pub fn kind(self) -> PointSpectrumKind {
        use PointSpectrumKind::*;
        match self {
            CaseLabel::C1a => NonRealPlane,
            CaseLabel::C1cPlus => UpperHalfPlane,
            CaseLabel::C1cMinus => LowerHalfPlane,
            CaseLabel::C2a => WholeGap,
            CaseLabel::C1b | CaseLabel::C1d | CaseLabel::C2b | CaseLabel::C2c => Empty,
            CaseLabel::C2d | CaseLabel::C2e => FiniteSet,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointSpectrumKind {
    Empty,
    FiniteSet,
    UpperHalfPlane,
    LowerHalfPlane,
    NonRealPlane,
    WholeGap,
}

impl PointSpectrumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointSpectrumKind::Empty => "Empty",
            PointSpectrumKind::FiniteSet => "FiniteSet",
            PointSpectrumKind::UpperHalfPlane => "UpperHalfPlane",
            PointSpectrumKind::LowerHalfPlane => "LowerHalfPlane",
            PointSpectrumKind::NonRealPlane => "NonRealPlane",
            PointSpectrumKind::WholeGap => "WholeGap",
        }
    }

    /// Whether the point spectrum is a finite (possibly empty) set.
    pub fn is_discrete(self) -> bool {
        matches!(self, PointSpectrumKind::Empty | PointSpectrumKind::FiniteSet)
    }
}

impl fmt::Display for PointSpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An eigenvalue together with its eigenspace data.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueRecord {
    pub z: C64,
    pub zeta: C64,
    pub k: C64,
    pub geometric_multiplicity: usize,
    /// `(a, ã)` for each eigenvector, normalised so that `a = 1` (or `ã = 1` when `a = 0`).
    pub coefficients: Vec<(C64, C64)>,
    /// `|det(σ₀ + (i/2)AZ(z))|`.
    pub residual: f64,
}

impl EigenvalueRecord {
    /// Eigenfunction number `mode` evaluated at `x`; `side` picks the trace at `x = 0`.
    pub fn eigenfunction(&self, mode: usize, x: f64, side: Side) -> Vec2 {
        let (a, at) = self.coefficients[mode];
        let zi = self.zeta.inv();
        if sgn(x, side) > 0.0 {
            Vec2::new(C64::new(1.0, 0.0), zi) * (a * (I * self.k * x).exp())
        } else {
            Vec2::new(C64::new(1.0, 0.0), -zi) * (at * (-I * self.k * x).exp())
        }
    }
}

/// Evaluate the first eigenfunction of `record` at `x`.
pub fn eigenfunction(record: &EigenvalueRecord, x: f64, side: Side) -> Vec2 {
    record.eigenfunction(0, x, side)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralClassification {
    pub case: CaseLabel,
    pub kind: PointSpectrumKind,
    pub eigenvalues: Vec<EigenvalueRecord>,
    /// True when a deciding quantity sits inside the warning band.
    pub near_transition: bool,
    pub warnings: Vec<String>,
}

struct Tester {
    warnings: Vec<String>,
}

impl Tester {
    fn is_zero(&mut self, name: &str, v: C64) -> bool {
        let a = v.norm();
        if a > EQUALITY_TOL && a <= WARNING_BAND {
            self.warnings.push(format!(
                "{name} = {a:.3e} is within the near-transition band; classification may flip"
            ));
        }
        a <= EQUALITY_TOL
    }
}

/// Which of the cases 1a–2e applies, plus the eigenvalues in the finite cases.
pub fn classify_spectrum(a: &CouplingMatrix, m: f64) -> SpectralClassification {
    let mut t = Tester {
        warnings: Vec::new(),
    };
    let det = a.det();
    let det4 = det - 4.0;
    let case = if m == 0.0 {
        let tr = a.trace();
        if t.is_zero("Tr A", tr) {
            if t.is_zero("det A - 4", det4) {
                CaseLabel::C1a
            } else {
                CaseLabel::C1b
            }
        } else if t.is_zero("det A - 4 - 2i Tr A", det4 - 2.0 * I * tr) {
            CaseLabel::C1cPlus
        } else if t.is_zero("det A - 4 + 2i Tr A", det4 + 2.0 * I * tr) {
            CaseLabel::C1cMinus
        } else {
            CaseLabel::C1d
        }
    } else {
        let alpha_zero = t.is_zero("alpha", a.alpha);
        let delta_zero = t.is_zero("delta", a.delta);
        let det_is_4 = t.is_zero("det A - 4", det4);
        match (alpha_zero, delta_zero, det_is_4) {
            (true, true, true) => CaseLabel::C2a,
            (true, true, false) => CaseLabel::C2b,
            (true, false, true) => CaseLabel::C2c,
            (true, false, false) => CaseLabel::C2d,
            (false, _, _) => CaseLabel::C2e,
        }
    };
    let eigenvalues = match case {
        CaseLabel::C2d | CaseLabel::C2e => finite_eigenvalues(a, m, case),
        _ => Vec::new(),
    };
    SpectralClassification {
        case,
        kind: case.kind(),
        eigenvalues,
        near_transition: !t.warnings.is_empty(),
        warnings: t.warnings,
    }
}

/// All eigenvalues when the point spectrum is finite.
pub fn point_spectrum(a: &CouplingMatrix, m: f64) -> Result<Vec<EigenvalueRecord>> {
    let cls = classify_spectrum(a, m);
    if !cls.kind.is_discrete() {
        return Err(Error::DegenerateCase {
            case: cls.case.as_str().to_string(),
        });
    }
    Ok(cls.eigenvalues)
}

fn finite_eigenvalues(a: &CouplingMatrix, m: f64, case: CaseLabel) -> Vec<EigenvalueRecord> {
    let det4 = a.det() - 4.0;
    let roots: Vec<C64> = match case {
        CaseLabel::C2d => vec![2.0 * I * a.delta / det4],
        _ => quadratic_roots(a.alpha, I * det4 * 0.5, a.delta),
    };
    let mut records: Vec<EigenvalueRecord> = Vec::new();
    for eta in roots {
        let Some(z) = zeta_inverse(eta, m) else {
            continue;
        };
        if records.iter().any(|r| (r.z - z).norm() <= 1e-10 * (1.0 + z.norm())) {
            continue;
        }
        records.push(build_record(a, m, z, eta));
    }
    records.sort_by(|p, q| p.z.re.total_cmp(&q.z.re).then(p.z.im.total_cmp(&q.z.im)));
    records
}

/// Numerically stable roots of `a t² + b t + c`.
fn quadratic_roots(a: C64, b: C64, c: C64) -> Vec<C64> {
    let d = b * b - 4.0 * a * c;
    if d.norm() <= 1e-12 * (b.norm_sqr() + 4.0 * (a * c).norm()) {
        let double = -b / (2.0 * a);
        return vec![double, double];
    }
    let disc = d.sqrt();
    let plus = b + disc;
    let minus = b - disc;
    let q = if plus.norm() >= minus.norm() {
        -0.5 * plus
    } else {
        -0.5 * minus
    };
    if q == C64::default() {
        return vec![C64::default(), C64::default()];
    }
    vec![q / a, c / q]
}

fn eigen_matrix(a: &CouplingMatrix, zeta: C64) -> Mat2 {
    sigma0() + a.matrix() * diag(zeta, zeta.inv()) * (I * 0.5)
}

fn build_record(a: &CouplingMatrix, m: f64, z: C64, eta: C64) -> EigenvalueRecord {
    let mat = eigen_matrix(a, eta);
    let mut basis = kernel_basis(&mat, RANK_TOL);
    if basis.is_empty() {
        let svd = mat.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let idx = if svd.singular_values[0] <= svd.singular_values[1] {
            0
        } else {
            1
        };
        basis.push(v_t.row(idx).adjoint());
    }
    let coefficients = basis
        .iter()
        .map(|u| {
            let a_coef = (eta * u[0] + u[1]) * 0.5;
            let at_coef = (eta * u[0] - u[1]) * 0.5;
            if a_coef.norm() > 1e-14 {
                (C64::new(1.0, 0.0), at_coef / a_coef)
            } else {
                (C64::default(), C64::new(1.0, 0.0))
            }
        })
        .collect();
    EigenvalueRecord {
        z,
        zeta: eta,
        k: k_of(z, m),
        geometric_multiplicity: basis.len(),
        coefficients,
        residual: det2(&mat).norm(),
    }
}

/// The unique `z` off the cut with `ζ(z) = η`, if any.
pub fn zeta_inverse(eta: C64, m: f64) -> Option<C64> {
    if m == 0.0 || !eta.is_finite() {
        return None;
    }
    if eta.im.abs() <= EQUALITY_TOL * (1.0 + eta.norm()) {
        return None;
    }
    let eta2 = eta * eta;
    let denom = eta2 - 1.0;
    if denom == C64::default() {
        return None;
    }
    let q = (eta / denom).im;
    if q == 0.0 || q.signum() != m.signum() {
        return None;
    }
    Some(m * (eta2 + 1.0) / denom)
}

/// `det(σ₀ + (i/2)A Z(z))`.
pub fn eigenvalue_residual(a: &CouplingMatrix, m: f64, z: C64) -> Result<C64> {
    let zeta = zeta_of(z, m)?;
    if zeta == C64::default() {
        return Err(Error::BranchPoint { z });
    }
    Ok(det2(&eigen_matrix(a, zeta)))
}

/// `(4 − det A + 2i Tr(A Z(z))) / 4`, algebraically equal to [`eigenvalue_residual`].
pub fn eigenvalue_residual_trace_form(a: &CouplingMatrix, m: f64, z: C64) -> Result<C64> {
    let zeta = zeta_of(z, m)?;
    if zeta == C64::default() {
        return Err(Error::BranchPoint { z });
    }
    let tr = a.alpha * zeta + a.delta / zeta;
    Ok((4.0 - a.det() + 2.0 * I * tr) / 4.0)
}
