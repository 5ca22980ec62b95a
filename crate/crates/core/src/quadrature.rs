//! Gauss–Legendre rules, adaptive panel splitting and composite axis rules.

use std::f64::consts::PI;
use std::ops::{Add, Sub};
use std::sync::OnceLock;

use crate::spectral::{Mat2, Vec2, C64};

/// Values that can be integrated: a vector space over ℝ with a magnitude.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> {
    fn zero() -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for C64 {
    fn zero() -> Self {
        C64::default()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl QuadValue for Mat2 {
    fn zero() -> Self {
        Mat2::zeros()
    }
    fn scale(self, s: f64) -> Self {
        self * C64::new(s, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl QuadValue for Vec2 {
    fn zero() -> Self {
        Vec2::zeros()
    }
    fn scale(self, s: f64) -> Self {
        self * C64::new(s, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the Legendre recurrence.
    fn compute(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Fixed-rule integral over `[a, b]`.
    pub fn integrate<T: QuadValue>(&self, a: f64, b: f64, f: impl Fn(f64) -> T) -> T {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x).scale(w * half);
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const MAX_CACHED: usize = 64;
static RULES: [OnceLock<GaussLegendre>; MAX_CACHED + 1] = [const { OnceLock::new() }; MAX_CACHED + 1];

/// Cached rule of order `n` (computed fresh above 64).
pub fn gauss_legendre(n: usize) -> std::borrow::Cow<'static, GaussLegendre> {
    if n <= MAX_CACHED {
        std::borrow::Cow::Borrowed(RULES[n].get_or_init(|| GaussLegendre::compute(n)))
    } else {
        std::borrow::Cow::Owned(GaussLegendre::compute(n))
    }
}

/// Settings for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Adaptive {
    pub order: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for Adaptive {
    fn default() -> Self {
        Self {
            order: 16,
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            max_depth: 30,
        }
    }
}

impl Adaptive {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

/// Adaptive Gauss–Legendre integration over `[a, b]`, splitting first at every
/// breakpoint strictly inside the interval. A panel is accepted when its
/// estimate agrees with the sum over its two halves.
pub fn integrate<T: QuadValue>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: Adaptive,
) -> T {
    if a == b {
        return T::zero();
    }
    if a > b {
        return T::zero() - integrate(f, b, a, breakpoints, opts);
    }
    let rule = gauss_legendre(opts.order);
    let edges = segment_edges(a, b, breakpoints);
    let mut acc = T::zero();
    for win in edges.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        let whole = rule.integrate(lo, hi, &f);
        acc = acc + refine(&f, &rule, lo, hi, whole, opts, 0);
    }
    acc
}

fn refine<T: QuadValue>(
    f: &impl Fn(f64) -> T,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: T,
    opts: Adaptive,
    depth: u32,
) -> T {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, f);
    let right = rule.integrate(mid, b, f);
    let halves = left + right;
    let err = (whole - halves).magnitude();
    if err <= opts.abs_tol.max(opts.rel_tol * halves.magnitude()) || depth >= opts.max_depth {
        return halves;
    }
    let sub = Adaptive {
        abs_tol: 0.5 * opts.abs_tol,
        ..opts
    };
    refine(f, rule, a, mid, left, sub, depth + 1) + refine(f, rule, mid, b, right, sub, depth + 1)
}

/// Sorted, de-duplicated `[a, b]` edges including interior breakpoints.
pub fn segment_edges(a: f64, b: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut edges = Vec::with_capacity(breakpoints.len() + 2);
    edges.push(a);
    edges.extend(breakpoints.iter().copied().filter(|&p| p > a && p < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + y.abs()));
    edges
}

/// Composite rule: nodes and weights of `order`-point panels over each listed panel.
#[derive(Debug, Clone, Default)]
pub struct AxisRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl AxisRule {
    pub fn from_panels(panels: &[(f64, f64)], order: usize) -> Self {
        let rule = gauss_legendre(order);
        let mut nodes = Vec::with_capacity(panels.len() * order);
        let mut weights = Vec::with_capacity(panels.len() * order);
        for &(a, b) in panels {
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                nodes.push(mid + half * x);
                weights.push(w * half);
            }
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<T: QuadValue>(&self, f: impl Fn(f64) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + f(x).scale(w))
    }
}

/// Panels of `[-half_width, half_width]` for integrands that are smooth
/// between `breakpoints` and decay like `exp(-decay·|x|)` away from the
/// breakpoint hull. Inside the hull panels are uniform; outside they are
/// equally spaced in `1 − exp(−decay·distance)`, so each carries a similar
/// share of the mass.
pub fn decaying_axis_panels(
    half_width: f64,
    breakpoints: &[f64],
    decay: f64,
    panel_count: usize,
) -> Vec<(f64, f64)> {
    let edges = segment_edges(-half_width, half_width, breakpoints);
    let inner_lo = edges.iter().copied().filter(|&e| e > -half_width).fold(half_width, f64::min);
    let inner_hi = edges.iter().copied().filter(|&e| e < half_width).fold(-half_width, f64::max);
    let (inner_lo, inner_hi) = if inner_lo <= inner_hi {
        (inner_lo, inner_hi)
    } else {
        (0.0, 0.0)
    };
    let inner_segments: Vec<(f64, f64)> = edges
        .windows(2)
        .map(|w| (w[0], w[1]))
        .filter(|&(a, b)| a >= inner_lo && b <= inner_hi && b > a)
        .collect();

    let panel_count = panel_count.max(2 * inner_segments.len() + 2);
    let inner_share = if inner_segments.is_empty() {
        0
    } else {
        (panel_count / 5).max(inner_segments.len())
    };
    let outer_each = ((panel_count - inner_share) / 2).max(1);

    let mut panels = Vec::with_capacity(panel_count + 2);
    // left tail, from -half_width up to inner_lo
    let left = graded(inner_lo, inner_lo + half_width, decay, outer_each);
    for &(a, b) in left.iter().rev() {
        panels.push((2.0 * inner_lo - b, 2.0 * inner_lo - a));
    }
    if !inner_segments.is_empty() {
        let total: f64 = inner_segments.iter().map(|(a, b)| b - a).sum();
        let mut remaining = inner_share;
        for (idx, &(a, b)) in inner_segments.iter().enumerate() {
            let n = if idx + 1 == inner_segments.len() {
                remaining.max(1)
            } else {
                (((b - a) / total) * inner_share as f64).round().max(1.0) as usize
            };
            remaining = remaining.saturating_sub(n);
            let step = (b - a) / n as f64;
            for j in 0..n {
                let lo = a + j as f64 * step;
                let hi = if j + 1 == n { b } else { a + (j + 1) as f64 * step };
                panels.push((lo, hi));
            }
        }
    }
    panels.extend(graded(inner_hi, half_width - inner_hi, decay, outer_each));
    panels.retain(|(a, b)| b > a);
    panels
}

/// Panels covering `[start, start + length]`, equally spaced in `1 − exp(−decay·s)`
/// and then split so that none is longer than `2/decay`.
fn graded(start: f64, length: f64, decay: f64, n: usize) -> Vec<(f64, f64)> {
    if length <= 0.0 {
        return Vec::new();
    }
    let decay = decay.max(1e-12);
    let u_max = -(-decay * length).exp_m1();
    let position = |u: f64| -> f64 {
        if u >= u_max {
            length
        } else {
            -(-u).ln_1p() / decay
        }
    };
    let max_len = 2.0 / decay;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let a = start + position(u_max * j as f64 / n as f64);
        let b = start + position(u_max * (j + 1) as f64 / n as f64);
        let pieces = ((b - a) / max_len).ceil().max(1.0) as usize;
        let step = (b - a) / pieces as f64;
        for p in 0..pieces {
            let lo = a + p as f64 * step;
            let hi = if p + 1 == pieces { b } else { a + (p + 1) as f64 * step };
            out.push((lo, hi));
        }
    }
    out
}
