//! One function per command; each returns the `result` part of the document.

use crate::config::{pair, CommandKind, ConfigError, JobConfig};
use dirac_point::approximation::{approx_eigenvalues_with, hs_distance, spectral_enclosure, HsOptions, DEFAULT_GRID};
use dirac_point::contour::RootFinder;
use dirac_point::nonrelativistic::{nonrel_limit_distance, LimitOptions};
use dirac_point::oracle::fourier_dirac_matrix;
use dirac_point::point::{classify_spectrum, point_spectrum, resolvent_kernel, EigenvalueRecord};
use dirac_point::spectral::Mat2;
use dirac_point::{Error, KernelEvaluator, Side, C64};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;

pub const RESOLVENT_SAMPLES: usize = 5;
pub const RESOLVENT_WINDOW: f64 = 2.0;
pub const ORACLE_HALF_WIDTH: f64 = 30.0;
pub const ORACLE_GRID: usize = 8192;
pub const ORACLE_TOL: f64 = 1e-3;

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Numerical(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "configuration error: {e}"),
            RunError::Numerical(e) => write!(f, "numerical error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::ProfileFile(_)
            | Error::OnCut { .. }
            | Error::BranchPoint { .. }
            | Error::Resolution { .. } => RunError::Config(ConfigError(e.to_string())),
            other => RunError::Numerical(other),
        }
    }
}

/// A finished run: the JSON result plus, for tables, the CSV rendering.
pub struct Outcome {
    pub result: Value,
    pub csv: Option<Vec<u8>>,
}

fn matrix(m: &Mat2) -> [[[f64; 2]; 2]; 2] {
    [[pair(m[(0, 0)]), pair(m[(0, 1)])], [pair(m[(1, 0)]), pair(m[(1, 1)])]]
}

fn record(r: &EigenvalueRecord) -> Value {
    json!({
        "z": pair(r.z),
        "multiplicity": r.geometric_multiplicity,
        "residual": r.residual,
        "zeta": pair(r.zeta),
        "k": pair(r.k),
    })
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, RunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| RunError::Config(ConfigError(format!("csv: {e}"))))?;
    }
    w.into_inner().map_err(|e| RunError::Config(ConfigError(format!("csv: {e}"))))
}

fn finder(cfg: &JobConfig) -> RootFinder {
    let mut f = RootFinder::default();
    if let Some(tol) = cfg.tol {
        f.newton_tol = tol;
    }
    f
}

pub fn run(cfg: &JobConfig) -> Result<Outcome, RunError> {
    cfg.validate()?;
    match cfg.command {
        CommandKind::Classify => classify(cfg),
        CommandKind::Spectrum => spectrum(cfg),
        CommandKind::Resolvent => resolvent(cfg),
        CommandKind::ApproxSpectrum => approx_spectrum(cfg),
        CommandKind::ApproxConverge => approx_converge(cfg),
        CommandKind::NonrelConverge => nonrel_converge(cfg),
        CommandKind::OracleVerify => oracle_verify(cfg),
    }
}

fn classify(cfg: &JobConfig) -> Result<Outcome, RunError> {
    let cls = classify_spectrum(&cfg.coupling(), cfg.m);
    let result = json!({
        "case": cls.case.as_str(),
        "point_spectrum": cls.kind.as_str(),
        "near_transition": cls.near_transition,
        "warnings": cls.warnings,
        "eigenvalues": cls.eigenvalues.iter().map(record).collect::<Vec<_>>(),
    });
    Ok(Outcome { result, csv: None })
}

fn spectrum(cfg: &JobConfig) -> Result<Outcome, RunError> {
    let a = cfg.coupling();
    let ev = point_spectrum(&a, cfg.m)?;
    let result = json!({
        "case": classify_spectrum(&a, cfg.m).case.as_str(),
        "eigenvalues": ev.iter().map(record).collect::<Vec<_>>(),
    });
    Ok(Outcome { result, csv: None })
}

fn resolvent(cfg: &JobConfig) -> Result<Outcome, RunError> {
    let kernel = resolvent_kernel(&cfg.coupling(), cfg.m, cfg.z())?;
    let n = cfg.grid.unwrap_or(RESOLVENT_SAMPLES);
    let l = cfg.half_width.unwrap_or(RESOLVENT_WINDOW);
    let axis: Vec<f64> = if n == 1 {
        vec![0.0]
    } else {
        (0..n).map(|j| -l + 2.0 * l * j as f64 / (n - 1) as f64).collect()
    };
    let samples: Vec<Value> = axis
        .iter()
        .flat_map(|&x| axis.iter().map(move |&y| (x, y)))
        .map(|(x, y)| json!({ "x": x, "y": y, "kernel": matrix(&kernel.evaluate_sided(x, y, Side::Plus)) }))
        .collect();
    let result = json!({
        "k": pair(kernel.free.k),
        "zeta": pair(kernel.free.zeta),
        "transfer": matrix(&kernel.transfer),
        "side_at_zero": "plus",
        "samples": samples,
    });
    Ok(Outcome { result, csv: None })
}

fn approx_spectrum(cfg: &JobConfig) -> Result<Outcome, RunError> {
    let (a, profile, region, finder) = (cfg.coupling(), cfg.profile()?, cfg.rect()?, finder(cfg));
    let mut blocks = Vec::new();
    for &eps in &cfg.eps {
        let roots = approx_eigenvalues_with(&a, cfg.m, eps, &profile, &region, &finder)?;
        blocks.push(json!({
            "epsilon": eps,
            "enclosure": spectral_enclosure(&a, eps, &profile),
            "eigenvalues": roots
                .iter()
                .map(|r| json!({ "z": pair(r.z), "multiplicity": r.winding, "residual": r.residual }))
                .collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome { result: json!({ "profile": profile.to_string(), "runs": blocks }), csv: None })
}

#[derive(Serialize)]
struct HsRow {
    epsilon: f64,
    hs_distance: f64,
    tail_bound: f64,
    truncation: f64,
    nodes: usize,
}

fn approx_converge(cfg: &JobConfig) -> Result<Outcome, RunError> {
    let (a, profile) = (cfg.coupling(), cfg.profile()?);
    let opts = HsOptions { truncation: cfg.half_width, grid: cfg.grid.unwrap_or(DEFAULT_GRID), ..Default::default() };
    let mut rows = Vec::new();
    for &eps in &cfg.eps {
        let d = hs_distance(&a, cfg.m, cfg.z(), eps, &profile, opts)?;
        rows.push(HsRow { epsilon: eps, hs_distance: d.value, tail_bound: d.tail_bound, truncation: d.truncation, nodes: d.nodes });
    }
    let decreasing = rows.windows(2).all(|w| w[1].hs_distance < w[0].hs_distance);
    let csv = csv_bytes(&rows)?;
    Ok(Outcome {
        result: json!({ "profile": profile.to_string(), "rows": rows, "strictly_decreasing": decreasing }),
        csv: Some(csv),
    })
}

#[derive(Serialize)]
struct LimitRow {
    c: f64,
    distance: f64,
    truncation: f64,
}

fn nonrel_converge(cfg: &JobConfig) -> Result<Outcome, RunError> {
    let a = cfg.coupling();
    let mut opts = LimitOptions { truncation: cfg.half_width, ..Default::default() };
    if let Some(n) = cfg.grid {
        opts.grid = n;
    }
    let mut rows = Vec::new();
    for &c in &cfg.c {
        let d = nonrel_limit_distance(&a, cfg.m, c, cfg.z(), opts)?;
        rows.push(LimitRow { c, distance: d.value, truncation: d.truncation });
    }
    let ratios: Vec<f64> = rows.windows(2).map(|w| w[0].distance / w[1].distance).collect();
    let csv = csv_bytes(&rows)?;
    Ok(Outcome { result: json!({ "rows": rows, "ratios": ratios }), csv: Some(csv) })
}

#[derive(Serialize)]
struct OracleRow {
    epsilon: f64,
    approx_re: f64,
    approx_im: f64,
    oracle_re: f64,
    oracle_im: f64,
    difference: f64,
}

fn oracle_verify(cfg: &JobConfig) -> Result<Outcome, RunError> {
    let (a, profile, region) = (cfg.coupling(), cfg.profile()?, cfg.rect()?);
    let l = cfg.half_width.unwrap_or(ORACLE_HALF_WIDTH);
    let n = cfg.grid.unwrap_or(ORACLE_GRID);
    let tol = cfg.tol.unwrap_or(ORACLE_TOL);
    let mut rows = Vec::new();
    let mut runs = Vec::new();
    let mut agree = true;
    for &eps in &cfg.eps {
        let approx = approx_eigenvalues_with(&a, cfg.m, eps, &profile, &region, &RootFinder::default())?;
        let op = fourier_dirac_matrix(&a, cfg.m, eps, &profile, l, n)?;
        let oracle = op.eigenvalues_in(&region)?;
        let expected: usize = approx.iter().map(|r| r.winding.max(1) as usize).sum();
        agree &= expected == oracle.len();
        let mut matches = Vec::new();
        for r in &approx {
            let nearest = oracle
                .iter()
                .copied()
                .min_by(|p, q| (p - r.z).norm().total_cmp(&(q - r.z).norm()))
                .unwrap_or(C64::new(f64::NAN, f64::NAN));
            let diff = (nearest - r.z).norm();
            agree &= diff < tol;
            matches.push(json!({ "approx": pair(r.z), "oracle": pair(nearest), "difference": diff }));
            rows.push(OracleRow {
                epsilon: eps,
                approx_re: r.z.re,
                approx_im: r.z.im,
                oracle_re: nearest.re,
                oracle_im: nearest.im,
                difference: diff,
            });
        }
        runs.push(json!({
            "epsilon": eps,
            "step": op.step(),
            "oracle_count": oracle.len(),
            "approx_count": expected,
            "matches": matches,
        }));
    }
    let csv = csv_bytes(&rows)?;
    Ok(Outcome {
        result: json!({ "L": l, "N": n, "tolerance": tol, "runs": runs, "agree": agree }),
        csv: Some(csv),
    })
}
