//! Eigenvalues of the approximating operators and their localisation.

use super::{alpha1, eta_with_derivative, Profile};
use crate::contour::{Rect, RootFinder};
use crate::error::{Error, Result};
use crate::point::{CouplingMatrix, EQUALITY_TOL};
use crate::spectral::{k_of, spectral_norm, C64};
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxEigenvalue {
    pub z: C64,
    pub epsilon: f64,
    /// `|η_ε(z)|` at the polished root.
    pub residual: f64,
    /// Argument-principle count of the isolating cell.
    pub winding: i64,
}

fn check_region(region: &Rect, m: f64) -> Result<()> {
    let m = m.abs();
    let crosses_axis = region.im.0 <= 0.0 && region.im.1 >= 0.0;
    let touches_cut = region.re.0 <= -m || region.re.1 >= m;
    if crosses_axis && touches_cut {
        let x = if region.re.1 >= m { region.re.1.max(m) } else { region.re.0.min(-m) };
        return Err(Error::OnCut { z: C64::new(x, 0.0) });
    }
    Ok(())
}

/// Zeros of `η_ε(z) = det(σ₀ + (i/2)α₁(εk)AZ)` in `region`.
pub fn approx_eigenvalues(
    a: &CouplingMatrix,
    m: f64,
    eps: f64,
    profile: &Profile,
    region: &Rect,
) -> Result<Vec<ApproxEigenvalue>> {
    approx_eigenvalues_with(a, m, eps, profile, region, &RootFinder::default())
}

pub fn approx_eigenvalues_with(
    a: &CouplingMatrix,
    m: f64,
    eps: f64,
    profile: &Profile,
    region: &Rect,
    finder: &RootFinder,
) -> Result<Vec<ApproxEigenvalue>> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    check_region(region, m)?;
    let roots = finder.roots(region, |z| eta_with_derivative(a, m, z, eps, profile))?;
    Ok(roots
        .into_iter()
        .map(|r| ApproxEigenvalue {
            z: r.z,
            epsilon: eps,
            residual: r.residual,
            winding: r.winding,
        })
        .collect())
}

/// `‖A‖₂ ‖v‖² / ε`, a bound on `|Im z|` over the spectrum.
pub fn spectral_enclosure(a: &CouplingMatrix, eps: f64, profile: &Profile) -> f64 {
    spectral_norm(&a.matrix()) * profile.l2_norm_sq() / eps
}

/// Zeros of `α₁(w)² − 1` inside `|w| < r`, by the argument principle.
fn form_factor_count(profile: &Profile, r: f64, finder: &RootFinder) -> Result<i64> {
    finder.winding(
        |s| C64::from_polar(r, TAU * s),
        |w| {
            let f = alpha1(profile, w);
            Ok(f * f - 1.0)
        },
    )
}

/// Radius of the largest disc about the origin in which `α₁² = 1` holds only
/// at `w = 0`.
pub fn form_factor_radius(profile: &Profile) -> Result<f64> {
    let finder = RootFinder::default();
    let count = |r: f64| form_factor_count(profile, r, &finder);
    let mut lo = 1e-3 / profile.width();
    if count(lo)? != 1 {
        return Err(Error::NoConvergence("form factor count at small radius is not 1".into()));
    }
    let mut hi = lo;
    loop {
        hi *= 1.5;
        if hi > 1e4 {
            return Ok(f64::INFINITY);
        }
        match count(hi) {
            Ok(1) => lo = hi,
            Ok(_) | Err(Error::ContourOnZero { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    for _ in 0..60 {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match count(mid) {
            Ok(1) => lo = mid,
            Ok(_) | Err(Error::ContourOnZero { .. }) => hi = mid,
            Err(e) => return Err(e),
        }
    }
    Ok(lo)
}

/// Largest `ε` below which `region` provably holds no eigenvalue of the
/// approximation of a whole-gap coupling `A = [[0, β], [γ, 0]]`, `βγ = −4`.
///
/// There `η_ε = 1 − α₁(εk)²`, so no root exists while `ε|k(z)|` stays inside
/// [`form_factor_radius`]; `|k|` attains its maximum over the region on the
/// boundary.
pub fn non_expansion_threshold(
    a: &CouplingMatrix,
    m: f64,
    profile: &Profile,
    region: &Rect,
) -> Result<f64> {
    let whole_gap = a.alpha.norm() <= EQUALITY_TOL
        && a.delta.norm() <= EQUALITY_TOL
        && (a.det() - 4.0).norm() <= EQUALITY_TOL;
    if !whole_gap {
        return Err(Error::InvalidParameter(
            "threshold needs A = [[0, β], [γ, 0]] with βγ = −4".into(),
        ));
    }
    check_region(region, m)?;
    let samples = 4096;
    let kmax = (0..samples)
        .map(|j| k_of(region.boundary_point(j as f64 / samples as f64), m).norm())
        .fold(0.0, f64::max);
    let radius = form_factor_radius(profile)?;
    // sampled maximum of a smooth |k|; shave off its discretisation error
    Ok(radius / kmax * (1.0 - 1e-6))
}
