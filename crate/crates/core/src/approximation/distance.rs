//! Hilbert–Schmidt distance between the approximate and the limit resolvent.

use super::{approx_resolvent_kernel, Profile};
use crate::error::Result;
use crate::exec::Execution;
use crate::kernel::Side;
use crate::point::{resolvent_kernel, CouplingMatrix};
use crate::quadrature::{decaying_axis_panels, AxisRule};
use crate::spectral::{Mat2, C64};

/// Gauss–Legendre order on every panel of the tensor grid.
pub const PANEL_ORDER: usize = 8;
pub const DEFAULT_GRID: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsDistance {
    /// Quadrature value of the Hilbert–Schmidt norm over `[−L, L]²`.
    pub value: f64,
    /// Bound on the norm of the kernel outside `[−L, L]²`.
    pub tail_bound: f64,
    pub truncation: f64,
    /// Quadrature nodes per axis.
    pub nodes: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct HsOptions {
    /// Half-width `L`; chosen from the decay of the kernel when `None`.
    pub truncation: Option<f64>,
    pub grid: usize,
    pub exec: Execution,
}

impl Default for HsOptions {
    fn default() -> Self {
        HsOptions {
            truncation: None,
            grid: DEFAULT_GRID,
            exec: Execution::default(),
        }
    }
}

fn frob_sq(m: &Mat2) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum()
}

/// `‖R^{A,ε}_z − R^A_z‖_HS`.
///
/// The free parts cancel, leaving `R(x,0)·T·A·R(0,y) − F(x)·T_ε·A·G(y)`; both
/// factors are tabulated once per axis node and combined on the tensor grid.
pub fn hs_distance(
    a: &CouplingMatrix,
    m: f64,
    z: C64,
    eps: f64,
    profile: &Profile,
    opts: HsOptions,
) -> Result<HsDistance> {
    let exact = resolvent_kernel(a, m, z)?;
    let approx = approx_resolvent_kernel(a, m, z, eps, profile)?;
    let free = &exact.free;
    let kappa = free.decay();
    let (lo, hi) = profile.support();
    let reach = eps * profile.support_radius();
    let half_width = opts.truncation.unwrap_or(reach + 16.0 / kappa);

    let mut breaks = vec![eps * lo, 0.0, eps * hi];
    breaks.extend(profile.breakpoints().into_iter().map(|b| eps * b));
    let panels = decaying_axis_panels(half_width, &breaks, kappa, opts.grid.div_ceil(PANEL_ORDER));
    let rule = AxisRule::from_panels(&panels, PANEL_ORDER);

    let side = Side::Plus;
    let left: Vec<(Mat2, Mat2)> = opts.exec.map(&rule.nodes, |&x| {
        (free.to_origin(x, side) * exact.transfer, approx.left_factor(x, side) * approx.transfer)
    });
    let right: Vec<(Mat2, Mat2)> = opts
        .exec
        .map(&rule.nodes, |&y| (free.from_origin(y, side), approx.right_factor(y, side)));

    let rows = opts.exec.map_range(rule.len(), |i| {
        let (p, f) = &left[i];
        rule.weights
            .iter()
            .zip(&right)
            .map(|(w, (q, g))| w * frob_sq(&(p * q - f * g)))
            .sum::<f64>()
    });
    let total: f64 = rows.iter().zip(&rule.weights).map(|(r, w)| r * w).sum();

    let zeta_f = free.z_matrix().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let r0 = 0.5 * (zeta_f + std::f64::consts::SQRT_2);
    let spread = (2.0 * kappa * reach).exp() * profile.l1_norm().powi(2);
    let envelope = r0 * r0 * (frob_sq(&exact.transfer).sqrt() + frob_sq(&approx.transfer).sqrt() * spread);
    let full = 1.0 / kappa;
    let kept = (1.0 - (-2.0 * kappa * half_width).exp()) / kappa;
    let tail_sq = envelope * envelope * (full * full - kept * kept);

    Ok(HsDistance {
        value: total.max(0.0).sqrt(),
        tail_bound: tail_sq.max(0.0).sqrt(),
        truncation: half_width,
        nodes: rule.len(),
    })
}
