//! The scalar form factor `α₁(w) = ∫∫ v(x) e^{iw|x−y|} v(y) dx dy`.

use super::Profile;
use crate::quadrature::{integrate, Adaptive, AxisRule};
use crate::spectral::{C64, I};

fn form_opts() -> Adaptive {
    Adaptive::with_tol(1e-15, 1e-14)
}

/// `α₁(w) = 2∫₀^{width} ρ(t) e^{iwt} dt`.
pub fn alpha1(profile: &Profile, w: C64) -> C64 {
    2.0 * integrate(
        |t| profile.autocorrelation(t) * (I * w * t).exp(),
        0.0,
        profile.width(),
        &profile.autocorrelation_breakpoints(),
        form_opts(),
    )
}

/// `α₁'(w) = 2i∫₀^{width} t ρ(t) e^{iwt} dt`.
pub fn alpha1_derivative(profile: &Profile, w: C64) -> C64 {
    2.0 * I
        * integrate(
            |t| t * profile.autocorrelation(t) * (I * w * t).exp(),
            0.0,
            profile.width(),
            &profile.autocorrelation_breakpoints(),
            form_opts(),
        )
}

/// `α₁` and `α₁'` in one pass.
pub fn alpha1_with_derivative(profile: &Profile, w: C64) -> (C64, C64) {
    let pair = integrate(
        |t| {
            let e = profile.autocorrelation(t) * (I * w * t).exp();
            crate::spectral::vec2(e, e * t)
        },
        0.0,
        profile.width(),
        &profile.autocorrelation_breakpoints(),
        form_opts(),
    );
    (2.0 * pair[0], 2.0 * I * pair[1])
}

/// `β = ∫∫ sgn(x−y) v(x) e^{iw|x−y|} v(y) dx dy` by tensor Gauss–Legendre
/// quadrature over the support; zero up to rounding because the integrand is
/// antisymmetric.
pub fn beta_epsilon_check(profile: &Profile, w: C64) -> C64 {
    let (lo, hi) = profile.support();
    let mut edges = profile.breakpoints();
    edges.push(lo);
    edges.push(hi);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let panels_per_piece = 8;
    let mut panels = Vec::new();
    for w2 in edges.windows(2) {
        let step = (w2[1] - w2[0]) / panels_per_piece as f64;
        for j in 0..panels_per_piece {
            panels.push((w2[0] + j as f64 * step, w2[0] + (j + 1) as f64 * step));
        }
    }
    let rule = AxisRule::from_panels(&panels, 12);
    let vals: Vec<f64> = rule.nodes.iter().map(|&x| profile.evaluate(x)).collect();
    let mut acc = C64::default();
    for i in 0..rule.len() {
        for j in 0..rule.len() {
            let d = rule.nodes[i] - rule.nodes[j];
            if d == 0.0 {
                continue;
            }
            let f = rule.weights[i] * rule.weights[j] * vals[i] * vals[j];
            acc += d.signum() * f * (I * w * d.abs()).exp();
        }
    }
    acc
}
