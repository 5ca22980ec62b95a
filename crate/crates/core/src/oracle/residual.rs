//! Residual checks for resolvent kernels: apply the kernel to a smooth test
//! function by quadrature, differentiate the image by finite differences and
//! compare with the test function.

use crate::approximation::Profile;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::kernel::{KernelEvaluator, Side};
use crate::point::{transmission_residual, CouplingMatrix};
use crate::quadrature::{integrate, Adaptive};
use crate::spectral::{sigma1, sigma3, Vec2, C64, I};

/// Extra check points inside the support of a non-local perturbation.
const SUPPORT_CHECKS: usize = 8;

/// The interaction the kernel is supposed to invert.
#[derive(Debug, Clone)]
pub enum Interaction {
    /// Transmission condition at the origin.
    Point(CouplingMatrix),
    /// Bounded perturbation `A⊗|v_ε⟩⟨v_ε|`; functions in the domain are
    /// continuous at the origin.
    NonLocal { coupling: CouplingMatrix, eps: f64, profile: Profile },
}

#[derive(Debug, Clone)]
pub struct ResidualOptions {
    /// Finite-difference step.
    pub step: f64,
    /// Check points are spread over `[−window, window]`.
    pub window: f64,
    pub checks: usize,
    /// The kernel is integrated over `[−support, support]`.
    pub support: f64,
    /// Extra points where the image may have a kink.
    pub kinks: Vec<f64>,
    pub quad: Adaptive,
    pub exec: Execution,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        ResidualOptions {
            step: 1e-3,
            window: 3.0,
            checks: 61,
            support: 12.0,
            kinks: Vec::new(),
            quad: Adaptive::with_tol(1e-15, 1e-13),
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `max |(𝒟 − z)g − ψ|` over the check points.
    pub differential: f64,
    /// Norm of the transmission residual of `g` at the origin.
    pub transmission: f64,
}

/// `g(x) = ∫ K(x, y) ψ(y) dy`.
fn apply<K, P>(kernel: &K, psi: &P, x: f64, side: Side, breaks: &[f64], opts: &ResidualOptions) -> Vec2
where
    K: KernelEvaluator + ?Sized,
    P: Fn(f64) -> Vec2 + Sync,
{
    let mut b = breaks.to_vec();
    b.push(x);
    integrate(|y| kernel.evaluate_sided(x, y, side) * psi(y), -opts.support, opts.support, &b, opts.quad)
}

/// Residual of `g = K ψ` against `(𝒟 − z)g = ψ` with
/// `𝒟 = −iσ₁ d/dx + mσ₃` (+ `A⊗W_ε` for non-local interactions), using the
/// fourth-order central difference at check points away from the kinks.
pub fn resolvent_residual<K, P>(
    kernel: &K,
    interaction: &Interaction,
    m: f64,
    z: C64,
    psi: P,
    opts: &ResidualOptions,
) -> Result<ResidualReport>
where
    K: KernelEvaluator + ?Sized,
    P: Fn(f64) -> Vec2 + Sync,
{
    if !(opts.step > 0.0 && opts.window > 0.0 && opts.checks >= 2) {
        return Err(Error::InvalidParameter("residual grid is degenerate".into()));
    }
    let mut kinks = opts.kinks.clone();
    kinks.push(0.0);
    if let Interaction::NonLocal { eps, profile, .. } = interaction {
        kinks.extend(profile.breakpoints().into_iter().map(|b| eps * b));
        let (lo, hi) = profile.support();
        kinks.extend([eps * lo, eps * hi]);
    }
    let h = opts.step;
    let guard = 3.0 * h;
    let mut points: Vec<f64> = (0..opts.checks)
        .map(|j| -opts.window + 2.0 * opts.window * j as f64 / (opts.checks - 1) as f64)
        .collect();
    // the perturbation only acts on the support of v_ε, which the coarse grid may miss
    if let Interaction::NonLocal { eps, profile, .. } = interaction {
        let (lo, hi) = profile.support();
        points.extend((1..=SUPPORT_CHECKS).map(|j| eps * (lo + (hi - lo) * j as f64 / (SUPPORT_CHECKS + 1) as f64)));
    }
    points.retain(|x| kinks.iter().all(|k| (x - k).abs() > guard));

    // ⟨v_ε, g⟩ enters the equation for non-local interactions
    let projection = match interaction {
        Interaction::NonLocal { coupling, eps, profile } => {
            let (lo, hi) = profile.support();
            let pairing = integrate(
                |s| apply(kernel, &psi, eps * s, Side::Plus, &kinks, opts) * C64::new(profile.evaluate(s), 0.0),
                lo,
                hi,
                &profile.breakpoints(),
                opts.quad,
            );
            Some((coupling.matrix() * pairing, *eps, profile))
        }
        Interaction::Point(_) => None,
    };

    let residuals = opts.exec.map(&points, |&x| {
        let g: Vec<Vec2> = [-2.0, -1.0, 0.0, 1.0, 2.0]
            .iter()
            .map(|o| apply(kernel, &psi, x + o * h, Side::Plus, &kinks, opts))
            .collect();
        let dg = (g[0] - g[1] * C64::new(8.0, 0.0) + g[3] * C64::new(8.0, 0.0) - g[4]) / C64::new(12.0 * h, 0.0);
        let mut lhs = sigma1() * dg * (-I) + sigma3() * g[2] * C64::new(m, 0.0) - g[2] * z;
        if let Some((ag, eps, profile)) = &projection {
            lhs += ag * C64::new(profile.evaluate(x / eps) / eps, 0.0);
        }
        (lhs - psi(x)).norm()
    });
    let differential = residuals.into_iter().fold(0.0, f64::max);

    let plus = apply(kernel, &psi, 0.0, Side::Plus, &kinks, opts);
    let minus = apply(kernel, &psi, 0.0, Side::Minus, &kinks, opts);
    let transmission = match interaction {
        Interaction::Point(a) => transmission_residual(a, &minus, &plus).norm(),
        Interaction::NonLocal { .. } => (plus - minus).norm(),
    };
    Ok(ResidualReport { differential, transmission })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximation::approx_resolvent_kernel;
    use crate::kernel::FreeKernel;
    use crate::point::resolvent_kernel;
    use crate::spectral::{c, vec2};

    fn psi(y: f64) -> Vec2 {
        vec2(C64::new((-(y - 0.7) * (y - 0.7)).exp(), 0.0), c(0.0, 0.5) * (-2.0 * (y + 0.4) * (y + 0.4)).exp())
    }

    #[test]
    fn free_kernel_inverts_free_operator() {
        let k = FreeKernel::new(1.0, c(0.3, 0.8)).unwrap();
        let r = resolvent_residual(&k, &Interaction::Point(CouplingMatrix::zero()), 1.0, c(0.3, 0.8), psi, &ResidualOptions::default())
            .unwrap();
        assert!(r.differential < 1e-6, "{r:?}");
        assert!(r.transmission < 1e-10, "{r:?}");
    }

    #[test]
    fn wrong_coupling_is_detected() {
        let a = CouplingMatrix::real(2.0, 0.0, 0.0, 2.0);
        let wrong = CouplingMatrix::real(3.0, 0.0, 0.0, 3.0);
        let k = resolvent_kernel(&wrong, 1.0, I).unwrap();
        let r = resolvent_residual(&k, &Interaction::Point(a), 1.0, I, psi, &ResidualOptions::default()).unwrap();
        assert!(r.transmission > 1e-3, "{r:?}");
    }

    #[test]
    fn approximate_kernel_inverts_nonlocal_operator() {
        let a = CouplingMatrix::real(2.0, 0.0, 0.0, 2.0);
        let p = Profile::boxcar();
        let k = approx_resolvent_kernel(&a, 1.0, I, 0.2, &p).unwrap();
        let opts = ResidualOptions { checks: 21, ..Default::default() };
        let r = resolvent_residual(&k, &Interaction::NonLocal { coupling: a, eps: 0.2, profile: p }, 1.0, I, psi, &opts)
            .unwrap();
        assert!(r.differential < 1e-6, "{r:?}");
        assert!(r.transmission < 1e-10, "{r:?}");
    }
}
