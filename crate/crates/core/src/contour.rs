//! Zeros of analytic functions inside rectangles: argument-principle
//! counting by phase continuation, quadtree subdivision and Newton polishing.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::spectral::C64;
use std::f64::consts::{PI, TAU};

/// Axis-aligned rectangle `[re.0, re.1] × [im.0, im.1]` in ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl Rect {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Result<Self> {
        let ok = [re_lo, re_hi, im_lo, im_hi].iter().all(|v| v.is_finite())
            && re_lo < re_hi
            && im_lo < im_hi;
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "degenerate rectangle [{re_lo},{re_hi}]x[{im_lo},{im_hi}]"
            )));
        }
        Ok(Rect {
            re: (re_lo, re_hi),
            im: (im_lo, im_hi),
        })
    }

    pub fn width(&self) -> f64 {
        self.re.1 - self.re.0
    }

    pub fn height(&self) -> f64 {
        self.im.1 - self.im.0
    }

    pub fn center(&self) -> C64 {
        C64::new(0.5 * (self.re.0 + self.re.1), 0.5 * (self.im.0 + self.im.1))
    }

    pub fn contains(&self, z: C64) -> bool {
        z.re >= self.re.0 && z.re <= self.re.1 && z.im >= self.im.0 && z.im <= self.im.1
    }

    /// Counter-clockwise corners starting at the lower-left one.
    pub fn corners(&self) -> [C64; 4] {
        [
            C64::new(self.re.0, self.im.0),
            C64::new(self.re.1, self.im.0),
            C64::new(self.re.1, self.im.1),
            C64::new(self.re.0, self.im.1),
        ]
    }

    /// Four children split at the fractional position `t` along both axes.
    pub fn split(&self, t: f64) -> [Rect; 4] {
        let xm = self.re.0 + t * self.width();
        let ym = self.im.0 + t * self.height();
        [
            Rect { re: (self.re.0, xm), im: (self.im.0, ym) },
            Rect { re: (xm, self.re.1), im: (self.im.0, ym) },
            Rect { re: (self.re.0, xm), im: (ym, self.im.1) },
            Rect { re: (xm, self.re.1), im: (ym, self.im.1) },
        ]
    }

    /// Point at arclength fraction `s ∈ [0, 1)` of the boundary.
    pub fn boundary_point(&self, s: f64) -> C64 {
        let (w, h) = (self.width(), self.height());
        let per = 2.0 * (w + h);
        let mut d = s.rem_euclid(1.0) * per;
        let c = self.corners();
        if d < w {
            return c[0] + C64::new(d, 0.0);
        }
        d -= w;
        if d < h {
            return c[1] + C64::new(0.0, d);
        }
        d -= h;
        if d < w {
            return c[2] - C64::new(d, 0.0);
        }
        d -= w;
        c[3] - C64::new(0.0, d)
    }
}

/// A root together with the winding number of the cell that isolated it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub z: C64,
    pub residual: f64,
    /// Argument-principle count of the cell; above 1 for a multiple root.
    pub winding: i64,
}

#[derive(Debug, Clone, Copy)]
pub struct RootFinder {
    /// Initial samples per unit parameter along a closed contour.
    pub samples: usize,
    /// Bisection depth allowed when continuing the phase between samples.
    pub max_refine: u32,
    /// `|f|` below this on a contour is reported as a zero on the contour.
    pub zero_tol: f64,
    /// Cells whose longer side drops below this stop subdividing.
    pub min_cell: f64,
    pub newton_tol: f64,
    pub newton_max: usize,
    pub exec: Execution,
}

impl Default for RootFinder {
    fn default() -> Self {
        RootFinder {
            samples: 128,
            max_refine: 24,
            zero_tol: 1e-12,
            min_cell: 1e-7,
            newton_tol: 1e-14,
            newton_max: 60,
            exec: Execution::default(),
        }
    }
}

/// Offsets tried for the quadtree split point; never exactly one half so that
/// symmetric configurations do not put roots on the new edges.
const SPLITS: [f64; 4] = [0.5 + 0.0137, 0.5 - 0.0291, 0.5 + 0.0433, 0.5 - 0.0517];

/// Zeros closer than this (relative) are reported as one multiple zero.
const CLUSTER_RADIUS: f64 = 1e-6;

fn phase_step(a: C64, b: C64) -> f64 {
    (b / a).arg()
}

impl RootFinder {
    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    /// Winding number of `f` along the closed curve `path: [0,1) → ℂ`.
    ///
    /// The phase is continued sample by sample; a step whose increment
    /// reaches π/2 is bisected until it does not, and every accepted step is
    /// checked once more at its midpoint.
    pub fn winding<P, F>(&self, path: P, f: F) -> Result<i64>
    where
        P: Fn(f64) -> C64 + Sync,
        F: Fn(C64) -> Result<C64> + Sync,
    {
        let n = self.samples.max(8);
        let params: Vec<f64> = (0..=n).map(|j| j as f64 / n as f64).collect();
        let values = self.exec.map(&params, |&s| {
            let z = path(s);
            f(z).map(|v| (z, v))
        });
        let mut pts = Vec::with_capacity(values.len());
        for v in values {
            let (z, fz) = v?;
            if fz.norm().is_nan() || fz.norm() <= self.zero_tol {
                return Err(Error::ContourOnZero { z });
            }
            pts.push(fz);
        }
        let total: Result<Vec<f64>> = self.exec.map_range(n, |j| {
            self.continue_phase(&path, &f, params[j], params[j + 1], pts[j], pts[j + 1], 0)
        })
        .into_iter()
        .collect();
        let total: f64 = total?.iter().sum();
        Ok((total / TAU).round() as i64)
    }

    #[allow(clippy::too_many_arguments)]
    fn continue_phase<P, F>(
        &self,
        path: &P,
        f: &F,
        s0: f64,
        s1: f64,
        f0: C64,
        f1: C64,
        depth: u32,
    ) -> Result<f64>
    where
        P: Fn(f64) -> C64,
        F: Fn(C64) -> Result<C64>,
    {
        let sm = 0.5 * (s0 + s1);
        let zm = path(sm);
        let fm = f(zm)?;
        if fm.norm().is_nan() || fm.norm() <= self.zero_tol {
            return Err(Error::ContourOnZero { z: zm });
        }
        let whole = phase_step(f0, f1);
        let halves = phase_step(f0, fm) + phase_step(fm, f1);
        if whole.abs() < PI / 2.0 && (whole - halves).abs() < 1e-9 {
            return Ok(whole);
        }
        if depth >= self.max_refine {
            return Err(Error::ContourOnZero { z: zm });
        }
        Ok(self.continue_phase(path, f, s0, sm, f0, fm, depth + 1)?
            + self.continue_phase(path, f, sm, s1, fm, f1, depth + 1)?)
    }

    pub fn winding_rect<F>(&self, rect: &Rect, f: F) -> Result<i64>
    where
        F: Fn(C64) -> Result<C64> + Sync,
    {
        self.winding(|s| rect.boundary_point(s), f)
    }

    /// Newton iteration from `z0`; `None` if it stalls or leaves `keep`.
    pub fn newton<F>(&self, z0: C64, f: &F, keep: impl Fn(C64) -> bool) -> Option<(C64, f64)>
    where
        F: Fn(C64) -> Result<(C64, C64)>,
    {
        let mut z = z0;
        for _ in 0..self.newton_max {
            let (v, d) = f(z).ok()?;
            if v == C64::default() {
                return Some((z, 0.0));
            }
            if d.norm().is_nan() || d.norm() == 0.0 {
                return None;
            }
            let step = v / d;
            z -= step;
            if !z.re.is_finite() || !z.im.is_finite() || !keep(z) {
                return None;
            }
            if step.norm() <= self.newton_tol * (1.0 + z.norm()) {
                let (v, _) = f(z).ok()?;
                return Some((z, v.norm()));
            }
        }
        None
    }

    /// A zero of multiplicity `count` inside `rect`: Newton with the
    /// multiplicity factor, accepted only if a small circle around the limit
    /// winds `count` times.
    fn cluster<F>(&self, rect: &Rect, count: i64, f: &F) -> Option<Root>
    where
        F: Fn(C64) -> Result<(C64, C64)> + Sync,
    {
        let scaled = |z: C64| f(z).map(|(v, d)| (v, d / count as f64));
        let (z, residual) = self.newton(rect.center(), &scaled, |z| rect.contains(z))?;
        let radius = CLUSTER_RADIUS * (1.0 + z.norm());
        let circle = |s: f64| z + radius * C64::from_polar(1.0, TAU * s);
        let around = self.winding(circle, |w| f(w).map(|(v, _)| v)).ok()?;
        (around == count).then_some(Root { z, residual, winding: count })
    }

    /// All zeros of `f` inside `rect`. `f` returns the value and derivative.
    pub fn roots<F>(&self, rect: &Rect, f: F) -> Result<Vec<Root>>
    where
        F: Fn(C64) -> Result<(C64, C64)> + Sync,
    {
        let value = |z: C64| f(z).map(|(v, _)| v);
        let count = self.winding_rect(rect, value)?;
        let mut out = Vec::new();
        self.descend(rect, count, &f, &mut out)?;
        out.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
        Ok(out)
    }

    fn descend<F>(&self, rect: &Rect, count: i64, f: &F, out: &mut Vec<Root>) -> Result<()>
    where
        F: Fn(C64) -> Result<(C64, C64)> + Sync,
    {
        if count <= 0 {
            return Ok(());
        }
        if count == 1 {
            if let Some((z, residual)) = self.newton(rect.center(), f, |z| rect.contains(z)) {
                out.push(Root { z, residual, winding: 1 });
                return Ok(());
            }
        }
        if count > 1 {
            if let Some(root) = self.cluster(rect, count, f) {
                out.push(root);
                return Ok(());
            }
        }
        if rect.width().max(rect.height()) < self.min_cell {
            let (z, residual) = self
                .newton(rect.center(), f, |_| true)
                .filter(|(z, _)| (z - rect.center()).norm() < 10.0 * self.min_cell)
                .unwrap_or_else(|| {
                    let c = rect.center();
                    (c, f(c).map(|(v, _)| v.norm()).unwrap_or(f64::NAN))
                });
            out.push(Root { z, residual, winding: count });
            return Ok(());
        }
        let value = |z: C64| f(z).map(|(v, _)| v);
        let mut last_err = None;
        for t in SPLITS {
            let cells = rect.split(t);
            let counts: Result<Vec<i64>> =
                cells.iter().map(|cell| self.winding_rect(cell, value)).collect();
            match counts {
                Ok(counts) => {
                    if counts.iter().sum::<i64>() != count {
                        last_err = Some(Error::NoConvergence(format!(
                            "subcell counts {counts:?} do not add up to {count}"
                        )));
                        continue;
                    }
                    for (cell, n) in cells.iter().zip(counts) {
                        self.descend(cell, n, f, out)?;
                    }
                    return Ok(());
                }
                Err(e @ Error::ContourOnZero { .. }) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last_err.unwrap_or_else(|| Error::NoConvergence("subdivision failed".into())))
    }
}
