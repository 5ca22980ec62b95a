//! Job configuration: parsing of the flag strings and validation.

use clap::ValueEnum;
use dirac_point::approximation::Profile;
use dirac_point::contour::Rect;
use dirac_point::{CouplingMatrix, C64};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A configuration problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Classify,
    Spectrum,
    Resolvent,
    ApproxSpectrum,
    ApproxConverge,
    NonrelConverge,
    OracleVerify,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Classify => "classify",
            CommandKind::Spectrum => "spectrum",
            CommandKind::Resolvent => "resolvent",
            CommandKind::ApproxSpectrum => "approx-spectrum",
            CommandKind::ApproxConverge => "approx-converge",
            CommandKind::NonrelConverge => "nonrel-converge",
            CommandKind::OracleVerify => "oracle-verify",
        }
    }

    /// Commands whose result is a table and may be written as CSV.
    pub fn is_table(self) -> bool {
        matches!(self, CommandKind::ApproxConverge | CommandKind::NonrelConverge | CommandKind::OracleVerify)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything a run depends on. Complex numbers are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: CommandKind,
    /// `[α, β, γ, δ]`.
    #[serde(rename = "A")]
    pub a: [[f64; 2]; 4],
    pub m: f64,
    pub c: Vec<f64>,
    pub z: [f64; 2],
    pub eps: Vec<f64>,
    pub profile: String,
    /// `[x0, x1, y0, y1]`.
    pub region: [f64; 4],
    #[serde(rename = "L")]
    pub half_width: Option<f64>,
    #[serde(rename = "N")]
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub format: Format,
}

pub fn parse_list(name: &str, text: &str) -> Result<Vec<f64>, ConfigError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("--{name}: cannot parse {t:?} as a number")))
        })
        .collect()
}

pub fn parse_fixed<const N: usize>(name: &str, text: &str) -> Result<[f64; N], ConfigError> {
    let v = parse_list(name, text)?;
    v.as_slice()
        .try_into()
        .map_err(|_| bad(format!("--{name}: expected {N} comma-separated numbers, got {}", v.len())))
}

/// `[re, im]`, with negative zeros folded into `0.0`.
pub fn pair(z: C64) -> [f64; 2] {
    [z.re + 0.0, z.im + 0.0]
}

impl JobConfig {
    pub fn coupling(&self) -> CouplingMatrix {
        let [a, b, g, d] = self.a.map(|[re, im]| C64::new(re, im));
        CouplingMatrix::new(a, b, g, d)
    }

    pub fn z(&self) -> C64 {
        C64::new(self.z[0], self.z[1])
    }

    pub fn profile(&self) -> Result<Profile, ConfigError> {
        Profile::from_spec(&self.profile).map_err(|e| bad(format!("--profile: {e}")))
    }

    pub fn rect(&self) -> Result<Rect, ConfigError> {
        let [x0, x1, y0, y1] = self.region;
        Rect::new(x0, x1, y0, y1).map_err(|e| bad(format!("--region: {e}")))
    }

    /// Checks every physical parameter the command uses.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(bad(format!("--{name} must be finite")))
            }
        };
        for entry in self.a.iter().flatten() {
            finite("A", *entry)?;
        }
        finite("m", self.m)?;
        finite("z", self.z[0])?;
        finite("z", self.z[1])?;
        if self.format == Format::Csv && !self.command.is_table() {
            return Err(bad(format!("--format csv is only available for convergence tables, not {}", self.command.name())));
        }
        if let Some(l) = self.half_width {
            if !(l.is_finite() && l > 0.0) {
                return Err(bad("--L must be positive"));
            }
        }
        if let Some(tol) = self.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(bad("--tol must be positive"));
            }
        }
        if self.grid == Some(0) {
            return Err(bad("--N must be positive"));
        }
        use CommandKind::*;
        if matches!(self.command, ApproxSpectrum | ApproxConverge | OracleVerify) {
            if self.eps.is_empty() || self.eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
                return Err(bad("--eps must be a non-empty list of positive numbers"));
            }
            self.profile()?;
        }
        if matches!(self.command, ApproxSpectrum | OracleVerify) {
            self.rect()?;
        }
        if self.command == NonrelConverge {
            if self.m <= 0.0 {
                return Err(bad("--m must be positive for the non-relativistic limit"));
            }
            if self.c.is_empty() || self.c.iter().any(|c| !(c.is_finite() && *c > 0.0)) {
                return Err(bad("--c must be a non-empty list of positive numbers"));
            }
        }
        Ok(())
    }
}
