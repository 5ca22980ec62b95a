use clap::Parser;
use dirac_point_cli::config::{parse_fixed, parse_list};
use dirac_point_cli::{render, run, CommandKind, ConfigError, Format, JobConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Spectra, resolvents and approximations of Dirac operators with a general
/// point interaction at the origin.
#[derive(Parser, Debug)]
#[command(name = "dirac-point", version)]
struct Cli {
    #[arg(value_enum)]
    command: CommandKind,

    /// Coupling matrix entries α, β, γ, δ as re,im pairs.
    #[arg(long = "A", value_name = "a_re,a_im,b_re,b_im,g_re,g_im,d_re,d_im", default_value = "2,0,0,0,0,0,2,0", allow_hyphen_values = true)]
    a: String,

    /// Mass.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    m: f64,

    /// Speeds of light for nonrel-converge.
    #[arg(long, default_value = "10,20,40")]
    c: String,

    /// Spectral parameter; defaults to i, or −1 for nonrel-converge.
    #[arg(long, value_name = "re,im", allow_hyphen_values = true)]
    z: Option<String>,

    /// Profile widths ε.
    #[arg(long, default_value = "0.2,0.1,0.05")]
    eps: String,

    /// box, triangle, gauss or file:<path>.
    #[arg(long, default_value = "box")]
    profile: String,

    /// Search rectangle for eigenvalues.
    #[arg(long, value_name = "x0,x1,y0,y1", default_value = "-0.9,0.9,-1,1", allow_hyphen_values = true)]
    region: String,

    /// Truncation half-width (converge commands), box half-width (oracle-verify, default 30)
    /// or sampling window (resolvent, default 2).
    #[arg(long = "L")]
    half_width: Option<f64>,

    /// Quadrature nodes per axis (converge commands, default 400), Fourier grid size
    /// (oracle-verify, default 8192) or samples per axis (resolvent, default 5).
    #[arg(long = "N")]
    grid: Option<usize>,

    /// Newton tolerance for root polishing (default 1e-14); agreement tolerance for
    /// oracle-verify (default 1e-3).
    #[arg(long)]
    tol: Option<f64>,

    /// Write the document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Cli {
    fn job(&self) -> Result<JobConfig, ConfigError> {
        let raw: [f64; 8] = parse_fixed("A", &self.a)?;
        let default_z = if self.command == CommandKind::NonrelConverge { "-1,0" } else { "0,1" };
        Ok(JobConfig {
            command: self.command,
            a: [[raw[0], raw[1]], [raw[2], raw[3]], [raw[4], raw[5]], [raw[6], raw[7]]],
            m: self.m,
            c: parse_list("c", &self.c)?,
            z: parse_fixed("z", self.z.as_deref().unwrap_or(default_z))?,
            eps: parse_list("eps", &self.eps)?,
            profile: self.profile.clone(),
            region: parse_fixed("region", &self.region)?,
            half_width: self.half_width,
            grid: self.grid,
            tol: self.tol,
            format: self.format,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match cli.job() {
        Ok(job) => job,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match run(&job) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let bytes = render(&job, &outcome);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::Write::write_all(&mut std::io::stdout().lock(), &bytes),
    };
    if let Err(e) = written {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
