use std::io::Write;

use iontrap_core::dynamics::prepare;
use iontrap_core::fockspace::inner_product;
use iontrap_core::model::{
    build_hamiltonian, check_condition_psi0, check_conditions_psi1_coeffs, eigen_residual,
    psi0_plus, psi1_minus, CONDITION_TOL, EIGEN_RESIDUAL_TOL,
};
use iontrap_core::Truncation;
use serde::Serialize;

use super::emit_json;
use crate::config::ResolvedRun;
use crate::error::{exit, CliError, CliResult};
use crate::RunArgs;

/// `|N_closed − N_direct|` tolerance and orthogonality tolerance.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            // NaN fails
            passed: value <= tolerance,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EigenResiduals {
    pub n_max: usize,
    pub psi0_plus: f64,
    pub psi1_minus: f64,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub family: &'static str,
    pub nu: f64,
    pub omega: f64,
    pub delta: f64,
    pub eta: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub psi0_condition: f64,
    pub psi1_condition_1: f64,
    pub psi1_condition_2: f64,
    pub eigen_residuals: Vec<EigenResiduals>,
    pub orthogonality: f64,
    pub norm_closed: Option<f64>,
    pub norm_direct: Option<f64>,
    pub degenerate: bool,
    pub passed: bool,
    pub failures: Vec<Check>,
}

fn eigen_residuals(run: &ResolvedRun, trunc: Truncation) -> CliResult<EigenResiduals> {
    let h = build_hamiltonian(&run.trap, trunc)?;
    let c0 = psi0_plus(&run.trap, trunc)?;
    let c1 = psi1_minus(&run.trap, &run.coeffs, trunc)?;
    Ok(EigenResiduals {
        n_max: trunc.n_max(),
        psi0_plus: eigen_residual(&h.matrix, &c0)?,
        psi1_minus: eigen_residual(&h.matrix, &c1)?,
    })
}

/// Build the report for a resolved run without deciding the exit code.
pub fn report(run: &ResolvedRun) -> CliResult<VerifyReport> {
    let trap = &run.trap;
    let r0 = check_condition_psi0(trap).max_residual();
    let r1 = check_conditions_psi1_coeffs(trap, &run.coeffs)?;
    let (r1a, r1b) = (r1.residuals[0].norm(), r1.residuals[1].norm());

    let mut checks = vec![
        Check::new("psi0_condition", r0, CONDITION_TOL),
        Check::new("psi1_condition_1", r1a, CONDITION_TOL),
        Check::new("psi1_condition_2", r1b, CONDITION_TOL),
    ];

    let eigen = vec![
        eigen_residuals(run, run.trunc)?,
        eigen_residuals(run, run.trunc.doubled())?,
    ];
    for e in &eigen {
        checks.push(Check::new(
            format!("eigen_residual_psi0_plus@{}", e.n_max),
            e.psi0_plus,
            EIGEN_RESIDUAL_TOL,
        ));
        checks.push(Check::new(
            format!("eigen_residual_psi1_minus@{}", e.n_max),
            e.psi1_minus,
            EIGEN_RESIDUAL_TOL,
        ));
    }

    let degenerate =
        (trap.energy_psi0_plus() - trap.energy_psi1_minus()).abs() <= 1e-12 * trap.nu();
    let orthogonality = inner_product(
        &psi0_plus(trap, run.trunc)?.state,
        &psi1_minus(trap, &run.coeffs, run.trunc)?.state,
    )?
    .norm();
    if !degenerate {
        checks.push(Check::new("orthogonality", orthogonality, NORM_TOL));
    }

    let conditions_hold = checks[..3].iter().all(|c| c.passed);
    let (norm_closed, norm_direct) = if conditions_hold {
        let sys = prepare(run.trap, run.coeffs, run.sup, run.trunc)?;
        checks.push(Check::new(
            "norm_closed_vs_direct",
            (sys.norm_closed() - sys.norm_direct()).abs(),
            NORM_TOL,
        ));
        (Some(sys.norm_closed()), Some(sys.norm_direct()))
    } else {
        (None, None)
    };

    let failures: Vec<Check> = checks.into_iter().filter(|c| !c.passed).collect();
    Ok(VerifyReport {
        family: run.family.label(),
        nu: trap.nu(),
        omega: trap.omega(),
        delta: trap.delta(),
        eta: trap.eta(),
        m: run.m,
        psi0_condition: r0,
        psi1_condition_1: r1a,
        psi1_condition_2: r1b,
        eigen_residuals: eigen,
        orthogonality,
        norm_closed,
        norm_direct,
        degenerate,
        passed: failures.is_empty(),
        failures,
    })
}

pub fn run(args: &RunArgs, out: &mut dyn Write) -> CliResult<u8> {
    let cfg = args.load()?;
    if args.dump_config {
        write!(out, "{cfg}").map_err(|e| CliError::io("<stdout>", e))?;
        return Ok(exit::OK);
    }
    let rep = report(&cfg.resolve()?)?;
    emit_json(out, &rep)?;
    match rep.failures.first() {
        None => Ok(exit::OK),
        Some(c) => Err(CliError::Verification {
            name: c.name.clone(),
            value: c.value,
            tolerance: c.tolerance,
        }),
    }
}
