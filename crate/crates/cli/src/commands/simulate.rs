use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufWriter, Write};

use iontrap_core::dynamics::{dominant_frequency, prepare, time_series, FrequencyEstimate};
use iontrap_core::{Error, TimeSeries};
use serde::Serialize;

use super::emit_json;
use crate::error::{exit, CliError, CliResult};
use crate::RunArgs;

pub const CSV_HEADER: &str = "t,sigma_z_closed,sigma_z_numeric,n_closed,n_numeric";

#[derive(Debug, Serialize)]
pub struct SimulationSummary {
    pub output: String,
    pub rows: usize,
    pub max_sigma_z_deviation: f64,
    pub max_n_deviation: f64,
    pub degenerate: bool,
    pub constant_signals: bool,
    /// Zero-crossing estimate from the closed-form atomic inversion.
    pub frequency: Option<f64>,
    pub frequency_fourier: Option<f64>,
    /// Zero-crossing estimate from the closed-form mean phonon number.
    pub frequency_n: Option<f64>,
    pub predicted_frequency: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_note: Option<String>,
}

/// Rows of the series in the CSV layout, LF-terminated, header first.
pub fn write_csv(ts: &TimeSeries, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for k in 0..ts.len() {
        writeln!(
            w,
            "{},{},{},{},{}",
            ts.times[k],
            ts.sigma_z_closed[k],
            ts.sigma_z_numeric[k],
            ts.n_closed[k],
            ts.n_numeric[k]
        )?;
    }
    w.flush()
}

pub fn run(args: &RunArgs, out: &mut dyn Write) -> CliResult<u8> {
    let cfg = args.load()?;
    if args.dump_config {
        write!(out, "{cfg}").map_err(|e| CliError::io("<stdout>", e))?;
        return Ok(exit::OK);
    }
    if cfg.steps < 2 {
        return Err(CliError::Usage(format!(
            "steps must be at least 2, got {}",
            cfg.steps
        )));
    }
    if cfg.t_end.partial_cmp(&cfg.t_start) != Some(Ordering::Greater) {
        return Err(CliError::Usage("t_end must exceed t_start".into()));
    }
    let run = cfg.resolve()?;
    let sys = prepare(run.trap, run.coeffs, run.sup, run.trunc)?;
    let ts = time_series(&sys, cfg.t_start, cfg.t_end, cfg.steps)?;

    let file = File::create(&cfg.output_path).map_err(|e| CliError::io(&cfg.output_path, e))?;
    write_csv(&ts, &mut BufWriter::new(file)).map_err(|e| CliError::io(&cfg.output_path, e))?;

    let sz = dominant_frequency(&ts.sigma_z_closed, &ts.times);
    let n = dominant_frequency(&ts.n_closed, &ts.times);
    let note = match (&sz, &n) {
        (Err(e), _) | (_, Err(e)) if *e != Error::NoOscillation => Some(e.to_string()),
        _ => None,
    };
    let ok = |r: &Result<FrequencyEstimate, Error>| r.as_ref().ok().copied();
    let summary = SimulationSummary {
        output: cfg.output_path.clone(),
        rows: ts.len(),
        max_sigma_z_deviation: ts.max_sigma_z_deviation,
        max_n_deviation: ts.max_n_deviation,
        degenerate: sys.is_degenerate(),
        constant_signals: sz == Err(Error::NoOscillation) && n == Err(Error::NoOscillation),
        frequency: ok(&sz).map(|f| f.zero_crossing),
        frequency_fourier: ok(&sz).map(|f| f.fourier),
        frequency_n: ok(&n).map(|f| f.zero_crossing),
        predicted_frequency: (run.trap.delta() - run.trap.nu()).abs(),
        frequency_note: note,
    };
    emit_json(out, &summary)?;
    Ok(exit::OK)
}
