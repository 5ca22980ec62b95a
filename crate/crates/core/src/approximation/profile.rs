//! Approximating profiles `v` with unit integral.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Adaptive};

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// `v = 1` on `[−1/2, 1/2]`.
    Box,
    /// `v = 1 − |x|` on `[−1, 1]`.
    Triangle,
    /// Gaussian of width `sigma` truncated to `[−4σ, 4σ]` and renormalised.
    TruncatedGaussian { sigma: f64 },
    /// Piecewise-linear interpolation of tabulated values.
    Sampled(SampledProfile),
}

/// Tabulated profile; values are rescaled at load time so that the trapezoid
/// integral equals one.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub xs: Vec<f64>,
    pub vs: Vec<f64>,
    /// Factor the raw values were multiplied by.
    pub normalization_factor: f64,
}

impl SampledProfile {
    pub fn new(xs: Vec<f64>, raw: Vec<f64>) -> Result<Self> {
        if xs.len() != raw.len() {
            return Err(Error::ProfileFile("x and v columns differ in length".into()));
        }
        if xs.len() < 2 {
            return Err(Error::ProfileFile("need at least two samples".into()));
        }
        if xs.iter().chain(&raw).any(|v| !v.is_finite()) {
            return Err(Error::ProfileFile("non-finite sample".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::ProfileFile("x must be strictly increasing".into()));
        }
        let total: f64 = xs
            .windows(2)
            .zip(raw.windows(2))
            .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1]))
            .sum();
        if total.is_nan() || total.abs() <= 1e-300 {
            return Err(Error::ProfileFile("profile integrates to zero".into()));
        }
        let factor = 1.0 / total;
        Ok(Self {
            xs,
            vs: raw.iter().map(|v| v * factor).collect(),
            normalization_factor: factor,
        })
    }

    /// Parse two whitespace- or comma-separated columns; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if cols.len() != 2 {
                return Err(Error::ProfileFile(format!(
                    "line {}: expected two columns, found {}",
                    lineno + 1,
                    cols.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|e| {
                    Error::ProfileFile(format!("line {}: {e}: {s:?}", lineno + 1))
                })
            };
            xs.push(parse(cols[0])?);
            vs.push(parse(cols[1])?);
        }
        Self::new(xs, vs)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ProfileFile(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x < self.xs[0] || x > self.xs[n - 1] {
            return 0.0;
        }
        let j = self.xs.partition_point(|&p| p <= x);
        if j == 0 {
            return self.vs[0];
        }
        if j >= n {
            return self.vs[n - 1];
        }
        let (x0, x1) = (self.xs[j - 1], self.xs[j]);
        let t = (x - x0) / (x1 - x0);
        self.vs[j - 1] * (1.0 - t) + self.vs[j] * t
    }

    /// Exact autocorrelation of the piecewise-linear interpolant: the product
    /// of two linear pieces is quadratic, so two Gauss points per merged cell
    /// suffice.
    fn autocorrelation(&self, t: f64) -> f64 {
        let n = self.xs.len();
        let lo = self.xs[0].max(self.xs[0] - t);
        let hi = self.xs[n - 1].min(self.xs[n - 1] - t);
        if hi <= lo {
            return 0.0;
        }
        let mut cuts: Vec<f64> = self
            .xs
            .iter()
            .flat_map(|&x| [x, x - t])
            .filter(|&p| p > lo && p < hi)
            .collect();
        cuts.push(lo);
        cuts.push(hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let g = 0.5 / 3f64.sqrt();
        cuts.windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let mid = 0.5 * (a + b);
                let h = b - a;
                let p = mid - g * h;
                let q = mid + g * h;
                0.5 * h * (self.eval(p) * self.eval(p + t) + self.eval(q) * self.eval(q + t))
            })
            .sum()
    }
}

/// An approximating bump `v` with `∫v = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub kind: ProfileKind,
    gauss_norm: f64,
}

impl Profile {
    pub fn boxcar() -> Self {
        Self::from_kind(ProfileKind::Box)
    }

    pub fn triangle() -> Self {
        Self::from_kind(ProfileKind::Triangle)
    }

    pub fn truncated_gaussian(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Gaussian width must be positive, got {sigma}"
            )));
        }
        Ok(Self::from_kind(ProfileKind::TruncatedGaussian { sigma }))
    }

    /// The default truncated Gaussian, `σ = 1/4`, supported on `[−1, 1]`.
    pub fn gaussian() -> Self {
        Self::from_kind(ProfileKind::TruncatedGaussian { sigma: 0.25 })
    }

    pub fn sampled(s: SampledProfile) -> Self {
        Self::from_kind(ProfileKind::Sampled(s))
    }

    pub fn from_kind(kind: ProfileKind) -> Self {
        let gauss_norm = match kind {
            ProfileKind::TruncatedGaussian { sigma } => {
                1.0 / (sigma * (2.0 * PI).sqrt() * libm::erf(4.0 / 2f64.sqrt()))
            }
            _ => 0.0,
        };
        Self { kind, gauss_norm }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ProfileKind::Box => "box",
            ProfileKind::Triangle => "triangle",
            ProfileKind::TruncatedGaussian { .. } => "gauss",
            ProfileKind::Sampled(_) => "sampled",
        }
    }

    /// Support `[lo, hi]`.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            ProfileKind::Box => (-0.5, 0.5),
            ProfileKind::Triangle => (-1.0, 1.0),
            ProfileKind::TruncatedGaussian { sigma } => (-4.0 * sigma, 4.0 * sigma),
            ProfileKind::Sampled(s) => (s.xs[0], s.xs[s.xs.len() - 1]),
        }
    }

    /// `S` with `supp v ⊂ [−S, S]`.
    pub fn support_radius(&self) -> f64 {
        let (lo, hi) = self.support();
        lo.abs().max(hi.abs())
    }

    /// Length of the support; `ρ` vanishes beyond it.
    pub fn width(&self) -> f64 {
        let (lo, hi) = self.support();
        hi - lo
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match &self.kind {
            ProfileKind::Box => {
                if x.abs() <= 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            ProfileKind::Triangle => (1.0 - x.abs()).max(0.0),
            ProfileKind::TruncatedGaussian { sigma } => {
                if x.abs() <= 4.0 * sigma {
                    self.gauss_norm * (-x * x / (2.0 * sigma * sigma)).exp()
                } else {
                    0.0
                }
            }
            ProfileKind::Sampled(s) => s.eval(x),
        }
    }

    /// Points where `v` is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            ProfileKind::Triangle => vec![-1.0, 0.0, 1.0],
            ProfileKind::Sampled(s) => s.xs.clone(),
            _ => {
                let (lo, hi) = self.support();
                vec![lo, hi]
            }
        }
    }

    /// `ρ(t) = ∫v(x)v(x+t)dx`.
    pub fn autocorrelation(&self, t: f64) -> f64 {
        let t = t.abs();
        match &self.kind {
            ProfileKind::Box => (1.0 - t).max(0.0),
            ProfileKind::Triangle => {
                if t <= 1.0 {
                    2.0 / 3.0 - t * t + 0.5 * t * t * t
                } else if t <= 2.0 {
                    (2.0 - t).powi(3) / 6.0
                } else {
                    0.0
                }
            }
            ProfileKind::TruncatedGaussian { sigma } => {
                if t >= 8.0 * sigma {
                    return 0.0;
                }
                let n = self.gauss_norm;
                n * n * sigma * PI.sqrt()
                    * (-t * t / (4.0 * sigma * sigma)).exp()
                    * libm::erf(4.0 - t / (2.0 * sigma))
            }
            ProfileKind::Sampled(s) => s.autocorrelation(t),
        }
    }

    /// Points in `[0, width]` where `ρ` is not smooth.
    pub fn autocorrelation_breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            ProfileKind::Triangle => vec![1.0],
            ProfileKind::Sampled(s) => {
                let mut d: Vec<f64> = s
                    .xs
                    .iter()
                    .flat_map(|a| s.xs.iter().map(move |b| (a - b).abs()))
                    .filter(|&t| t > 0.0)
                    .collect();
                d.sort_by(f64::total_cmp);
                d.dedup_by(|p, q| (*p - *q).abs() <= 1e-14 * (1.0 + q.abs()));
                if d.len() > 2000 {
                    Vec::new()
                } else {
                    d
                }
            }
            _ => Vec::new(),
        }
    }

    /// `‖v‖²`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.autocorrelation(0.0)
    }

    /// `‖v‖₁`.
    pub fn l1_norm(&self) -> f64 {
        match &self.kind {
            ProfileKind::Sampled(_) => {
                let (lo, hi) = self.support();
                integrate(
                    |x| self.evaluate(x).abs(),
                    lo,
                    hi,
                    &self.breakpoints(),
                    Adaptive::default(),
                )
            }
            _ => 1.0,
        }
    }

    /// `∫v`, computed by quadrature.
    pub fn integral(&self) -> f64 {
        let (lo, hi) = self.support();
        integrate(|x| self.evaluate(x), lo, hi, &self.breakpoints(), Adaptive::default())
    }

    /// Parse `box`, `triangle`, `gauss` or `file:<path>`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        match spec {
            "box" => Ok(Self::boxcar()),
            "triangle" => Ok(Self::triangle()),
            "gauss" | "gaussian" => Ok(Self::gaussian()),
            _ => match spec.strip_prefix("file:") {
                Some(path) => Ok(Self::sampled(SampledProfile::load(Path::new(path))?)),
                None => Err(Error::InvalidParameter(format!(
                    "unknown profile {spec:?}; expected box, triangle, gauss or file:<path>"
                ))),
            },
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ProfileKind::TruncatedGaussian { sigma } => write!(f, "gauss(sigma={sigma})"),
            ProfileKind::Sampled(s) => write!(f, "sampled({} points)", s.xs.len()),
            _ => f.write_str(self.name()),
        }
    }
}
