use std::fs::File;
use std::io::{BufWriter, Write};

use iontrap_core::params::{parameter_points, psi0_surface, psi1_curve};
use iontrap_core::Error;

use crate::error::{exit, CliError, CliResult};
use crate::SurfaceArgs;

fn required<T: Copy>(value: Option<T>, flag: &str, mode: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{mode} requires {flag}")))
}

/// CSV text for the selected mode and the exit code it implies.
pub fn render(args: &SurfaceArgs) -> CliResult<(String, u8)> {
    let mut csv = String::new();
    let mut code = exit::OK;
    if args.psi0 {
        let omega = required(args.omega, "--omega start:end:count", "--psi0")?;
        let eta = required(args.eta, "--eta start:end:count", "--psi0")?;
        csv.push_str("omega,eta,delta\n");
        for s in psi0_surface(args.nu, omega.0, eta.0)? {
            csv.push_str(&format!("{},{},{}\n", s.omega, s.eta, s.delta));
        }
    } else if args.curve {
        let omega = required(args.omega, "--omega start:end:count", "--curve")?;
        let m = required(args.m, "--M", "--curve")?;
        let samples: Vec<f64> = omega.0.values().collect();
        csv.push_str("omega,eta,delta\n");
        for s in psi1_curve(args.nu, m, &samples)? {
            csv.push_str(&format!("{},{},{}\n", s.omega, s.eta, s.delta));
        }
    } else {
        let m = required(args.m, "--M", "--points")?;
        let set = parameter_points(args.nu, m)?;
        csv.push_str("omega,eta,delta,label\n");
        for p in &set.points {
            let t = &p.solution.trap;
            csv.push_str(&format!(
                "{},{},{},{}\n",
                t.omega(),
                t.eta(),
                t.delta(),
                p.label.label()
            ));
        }
        if set.points.is_empty() {
            code = exit::NO_SOLUTION;
        }
    }
    Ok((csv, code))
}

pub fn run(args: &SurfaceArgs, out: &mut dyn Write) -> CliResult<u8> {
    let (csv, code) = render(args).map_err(|e| match e {
        CliError::Core(Error::InvalidParams(msg)) => CliError::Usage(msg.into()),
        other => other,
    })?;
    match &args.output {
        Some(path) => {
            let name = path.display().to_string();
            let file = File::create(path).map_err(|e| CliError::io(&name, e))?;
            let mut w = BufWriter::new(file);
            w.write_all(csv.as_bytes())
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io(&name, e))?;
        }
        None => out
            .write_all(csv.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e))?,
    }
    Ok(code)
}
