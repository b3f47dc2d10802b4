//! Command-line front end for `iontrap-core`: parameter solving,
//! verification reports, time-series simulation and surface sampling,
//! with CSV and JSON-lines output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod error;
pub mod grid;

pub use config::{FamilyChoice, ResolvedRun, RunConfig};
pub use error::{exit, CliError, CliResult};
pub use grid::GridSpec;

#[derive(Debug, Parser)]
#[command(
    name = "iontrap",
    version,
    about = "Trapped-ion eigenstate solver and simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List parameter solutions for (nu, omega) or the intersection points for M.
    Solve(SolveArgs),
    /// Check conditions, eigen-residuals, orthogonality and normalization.
    Verify(RunArgs),
    /// Write closed-form and numeric observables to CSV and print a summary.
    Simulate(RunArgs),
    /// Sample the condition surface, the parametric curve or the points.
    Surface(SurfaceArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long, required_unless_present = "m", conflicts_with = "m")]
    pub omega: Option<f64>,
    /// Imaginary part of the ratio d1/d0.
    #[arg(long = "M", id = "m")]
    pub m: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    /// key=value configuration file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Print the effective configuration and exit.
    #[arg(long)]
    pub dump_config: bool,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
}

#[derive(Debug, Default, Args)]
pub struct ConfigOverrides {
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// A+, A-, B+, B- or explicit.
    #[arg(long)]
    pub family: Option<FamilyChoice>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long = "M", id = "m")]
    pub m: Option<f64>,
    #[arg(long)]
    pub d0_re: Option<f64>,
    #[arg(long)]
    pub d0_im: Option<f64>,
    #[arg(long)]
    pub d1_re: Option<f64>,
    #[arg(long)]
    pub d1_im: Option<f64>,
    #[arg(long)]
    pub c1_re: Option<f64>,
    #[arg(long)]
    pub c1_im: Option<f64>,
    #[arg(long)]
    pub c2_re: Option<f64>,
    #[arg(long)]
    pub c2_im: Option<f64>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long = "output", alias = "output-path")]
    pub output_path: Option<String>,
}

impl ConfigOverrides {
    pub fn apply(&self, cfg: &mut RunConfig) {
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field { cfg.$field = v; }
            )*};
        }
        macro_rules! take_opt {
            ($($field:ident),*) => {$(
                if self.$field.is_some() { cfg.$field = self.$field; }
            )*};
        }
        take!(
            nu, omega, family, d0_re, d0_im, c1_re, c1_im, c2_re, c2_im, n_max, t_start, t_end,
            steps
        );
        take_opt!(eta, delta, m, d1_re, d1_im);
        if let Some(path) = &self.output_path {
            cfg.output_path = path.clone();
        }
    }
}

impl RunArgs {
    /// Defaults, then the config file, then flags.
    pub fn load(&self) -> CliResult<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(path.display().to_string(), e))?;
            cfg.apply_text(&text)?;
        }
        self.overrides.apply(&mut cfg);
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["psi0", "curve", "points"]))]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    /// Condition surface of the ground-family eigenstate over (omega, eta).
    #[arg(long)]
    pub psi0: bool,
    /// Parametric curve of the excited-family eigenstate for fixed M.
    #[arg(long, requires = "m")]
    pub curve: bool,
    /// Intersection points for fixed M.
    #[arg(long, requires = "m")]
    pub points: bool,
    /// start:end:count
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<GridSpec>,
    /// start:end:count
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<GridSpec>,
    #[arg(long = "M", id = "m")]
    pub m: Option<f64>,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parse `args` (including the program name) and execute. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    exit::OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    exit::USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => commands::solve::run(a, out),
        Command::Verify(a) => commands::verify::run(a, out),
        Command::Simulate(a) => commands::simulate::run(a, out),
        Command::Surface(a) => commands::surface::run(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
