//! Distance between the shifted relativistic resolvent and the embedded
//! Schrödinger resolvent.

use super::{relativistic_kernel_shifted, scale_coupling, schrodinger_resolvent_kernel};
use crate::error::Result;
use crate::exec::Execution;
use crate::kernel::{KernelEvaluator, Side};
use crate::point::CouplingMatrix;
use crate::quadrature::{decaying_axis_panels, AxisRule};
use crate::spectral::{Mat2, C64};

const PANEL_ORDER: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct LimitOptions {
    /// Half-width `L` of the square `[−L, L]²`; `16/κ` when `None`.
    pub truncation: Option<f64>,
    /// Quadrature nodes per axis.
    pub grid: usize,
    pub exec: Execution,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions { truncation: None, grid: 400, exec: Execution::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDistance {
    pub value: f64,
    pub truncation: f64,
    /// Decay rate `min(Im k_c, Im μ)` used to place the nodes.
    pub decay: f64,
}

/// `‖R^{A_c,c}_{z+mc²} − diag(1,0)⊗(H_A − z)⁻¹‖` in Hilbert–Schmidt norm over
/// `[−L, L]²`.
///
/// The free parts do not cancel, so each row is integrated on its own panels
/// with breakpoints at `y = 0` and at the diagonal `y = x`.
pub fn nonrel_limit_distance(
    a: &CouplingMatrix,
    m: f64,
    c: f64,
    z: C64,
    opts: LimitOptions,
) -> Result<LimitDistance> {
    let scaled = scale_coupling(a, m, c)?;
    let rel = relativistic_kernel_shifted(&scaled.scaled, m, c, z)?;
    let nonrel = schrodinger_resolvent_kernel(a, m, z)?;
    let decay = rel.decay().min(nonrel.decay());
    let half_width = opts.truncation.unwrap_or(16.0 / decay);
    let panels = opts.grid.div_ceil(PANEL_ORDER);
    let outer = AxisRule::from_panels(&decaying_axis_panels(half_width, &[0.0], decay, panels), PANEL_ORDER);

    let side = Side::Plus;
    let rows = opts.exec.map(&outer.nodes, |&x| {
        let inner = AxisRule::from_panels(&decaying_axis_panels(half_width, &[0.0, x], decay, panels), PANEL_ORDER);
        inner.integrate(|y| {
            let mut d: Mat2 = rel.evaluate_sided(x, y, side);
            d[(0, 0)] -= nonrel.evaluate_sided(x, y, side);
            d.iter().map(C64::norm_sqr).sum::<f64>()
        })
    });
    let total: f64 = rows.iter().zip(&outer.weights).map(|(r, w)| r * w).sum();
    Ok(LimitDistance { value: total.max(0.0).sqrt(), truncation: half_width, decay })
}
