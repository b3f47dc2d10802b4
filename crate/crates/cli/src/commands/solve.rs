use std::io::Write;

use iontrap_core::params::{
    parameter_points, solve_family_a, solve_family_b, validate_intervals, IntervalReport,
};
use iontrap_core::ParameterSolution;
use serde::Serialize;

use super::emit_json;
use crate::error::{exit, CliResult};
use crate::SolveArgs;

#[derive(Debug, Serialize)]
pub struct IntervalVerdicts {
    pub omega_below_nu: bool,
    pub delta_in_range: bool,
    pub eta_in_range: bool,
    pub m_in_range: bool,
    pub signs_consistent: bool,
    pub all_pass: bool,
}

impl From<IntervalReport> for IntervalVerdicts {
    fn from(r: IntervalReport) -> Self {
        IntervalVerdicts {
            omega_below_nu: r.omega_below_nu,
            delta_in_range: r.delta_in_range,
            eta_in_range: r.eta_in_range,
            m_in_range: r.m_in_range,
            signs_consistent: r.signs_consistent,
            all_pass: r.all_pass(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolutionRecord {
    pub status: &'static str,
    pub family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<&'static str>,
    pub nu: f64,
    pub omega: f64,
    pub delta: f64,
    pub eta: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub e0_plus: f64,
    pub e1_minus: f64,
    pub degenerate: bool,
    /// `null` outside family A, where the intervals do not apply.
    pub intervals: Option<IntervalVerdicts>,
}

impl SolutionRecord {
    pub fn new(sol: &ParameterSolution, label: Option<&'static str>) -> Self {
        SolutionRecord {
            status: "ok",
            family: sol.family.label(),
            label,
            nu: sol.trap.nu(),
            omega: sol.trap.omega(),
            delta: sol.trap.delta(),
            eta: sol.trap.eta(),
            m: sol.m,
            e0_plus: sol.energies.psi0_plus,
            e1_minus: sol.energies.psi1_minus,
            degenerate: sol.degenerate,
            intervals: validate_intervals(sol).ok().map(Into::into),
        }
    }
}

#[derive(Debug, Serialize)]
struct Skipped<'a> {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'static str>,
    reason: &'a str,
}

pub fn run(args: &SolveArgs, out: &mut dyn Write) -> CliResult<u8> {
    let mut found: Vec<ParameterSolution> = Vec::new();
    if let Some(omega) = args.omega {
        for (family, result) in [
            ("A", solve_family_a(args.nu, omega)),
            ("B", solve_family_b(args.nu, omega)),
        ] {
            match result {
                Ok(pair) => {
                    for sol in &pair {
                        emit_json(out, &SolutionRecord::new(sol, None))?;
                    }
                    found.extend(pair);
                }
                Err(e) => emit_json(
                    out,
                    &Skipped {
                        status: "error",
                        family: Some(family),
                        label: None,
                        reason: &e.to_string(),
                    },
                )?,
            }
        }
    } else if let Some(m) = args.m {
        let set = parameter_points(args.nu, m)?;
        for p in &set.points {
            emit_json(
                out,
                &SolutionRecord::new(&p.solution, Some(p.label.label())),
            )?;
            found.push(p.solution);
        }
        for o in &set.omitted {
            emit_json(
                out,
                &Skipped {
                    status: "omitted",
                    family: None,
                    label: Some(o.label.label()),
                    reason: o.reason,
                },
            )?;
        }
    }

    Ok(if found.iter().any(|s| !s.degenerate) {
        exit::OK
    } else if found.is_empty() {
        exit::NO_SOLUTION
    } else {
        exit::DEGENERATE_ONLY
    })
}
