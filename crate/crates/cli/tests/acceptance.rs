//! Acceptance suite. One line per criterion; exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::Instant;

use iontrap_core::dynamics::{dominant_frequency, prepare, time_series};
use iontrap_core::fockspace::{
    coherent_state, displacement_matrix, inner_product, protected_block, DisplacementMethod,
};
use iontrap_core::model::{
    build_hamiltonian, eigen_residual, psi0_plus, psi0_residual, psi1_minus, psi1_residuals,
};
use iontrap_core::params::{parameter_points, solve_family_a, solve_family_b, validate_intervals};
use iontrap_core::{
    Complex64, ComplexMatrix, ParameterSolution, PreparedSystem, SuperpositionCoeffs, TrapParams,
    Truncation,
};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

// Reference point: ν = 1, Ω = −0.5 on the η < 0 branch of family A.
const NU: f64 = 1.0;
const OMEGA: f64 = -0.5;
const ETA: f64 = -0.75;
const DELTA: f64 = -0.1875;
const M: f64 = -2.0;

// Independent dense-vector oracle at the reference point, c₁ = c₂ = 1/√2.
const ORACLE_SIGMA_Z_0: f64 = -0.4377777386108533;
const ORACLE_N_0: f64 = 1.5133144561358012;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reference_trap() -> TrapParams {
    TrapParams::new(NU, OMEGA, DELTA, ETA).unwrap()
}

fn reference_solution() -> ParameterSolution {
    let [_, sol] = solve_family_a(NU, OMEGA).unwrap();
    sol
}

fn system(sol: &ParameterSolution, n_max: usize) -> Result<PreparedSystem, String> {
    prepare(
        sol.trap,
        sol.eigen_coeffs(),
        SuperpositionCoeffs::balanced(),
        Truncation::new(n_max).unwrap(),
    )
    .map_err(|e| e.to_string())
}

fn variance(xs: &[f64]) -> f64 {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64
}

fn parameter_reproduction() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_iontrap"))
        .args(["solve", "--nu", "1", "--omega", "-0.5"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}", out.status.code())
    })?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let line = stdout
        .lines()
        .filter_map(|l| serde_json::from_str::<Value>(l).ok())
        .find(|v| v["family"] == "A-")
        .ok_or("no A- line")?;
    let get = |k: &str| line[k].as_f64().ok_or_else(|| format!("missing {k}"));
    let (eta, delta, m) = (get("eta")?, get("delta")?, get("M")?);
    let err = (eta - ETA)
        .abs()
        .max((delta - DELTA).abs())
        .max((m - M).abs());
    ensure(err < 1e-12, || format!("(η, δ, M) = ({eta}, {delta}, {m})"))?;
    Ok(format!(
        "(η, δ, M) = ({eta}, {delta}, {m}), max error {err:e}"
    ))
}

fn condition_satisfaction() -> Outcome {
    let r0 = psi0_residual(NU, OMEGA, DELTA, ETA).abs();
    let [r1, r2] = psi1_residuals(NU, OMEGA, DELTA, ETA, Complex64::new(0.0, M));
    let worst = r0.max(r1.norm()).max(r2.norm());
    ensure(worst < 1e-12, || {
        format!("residuals {r0:e} {:e} {:e}", r1.norm(), r2.norm())
    })?;
    Ok(format!("max residual {worst:e}"))
}

fn eigenpair_soundness() -> Outcome {
    let p = reference_trap();
    let c = reference_solution().eigen_coeffs();
    let mut report = Vec::new();
    for n_max in [64, 128] {
        let t = Truncation::new(n_max).unwrap();
        let h = build_hamiltonian(&p, t).map_err(|e| e.to_string())?;
        let r0 = eigen_residual(&h.matrix, &psi0_plus(&p, t).unwrap()).unwrap();
        let r1 = eigen_residual(&h.matrix, &psi1_minus(&p, &c, t).unwrap()).unwrap();
        ensure(r0 < 1e-10 && r1 < 1e-10, || {
            format!("n_max={n_max}: {r0:e}, {r1:e}")
        })?;
        report.push(format!("n_max={n_max}: {r0:.1e}/{r1:.1e}"));
    }
    Ok(report.join(", "))
}

fn orthogonality_normalization() -> Outcome {
    let (nu, om, eta) = (NU, OMEGA, ETA);
    let d0 = Complex64::new(1.0, 0.0);
    let d1 = Complex64::new(0.0, M);
    let first = d0 * (3.0 * om / (2.0 * nu) + nu * eta * eta / om);
    let second =
        Complex64::new(0.0, eta) * d1 * (2.0 * om / nu + 2.0 * nu * eta * eta / om - nu / om);
    let sys = system(&reference_solution(), 64)?;
    let overlap = inner_product(&sys.psi0_plus().state, &sys.psi1_minus().state)
        .unwrap()
        .norm();
    ensure(overlap < 1e-10, || format!("overlap {overlap:e}"))?;
    ensure((sys.norm_closed() - 1.0).abs() < 1e-10, || {
        format!("N = {}", sys.norm_closed())
    })?;
    ensure((first + second).norm() < 1e-14, || {
        format!("brackets {first} + {second}")
    })?;
    Ok(format!(
        "|<ψ0|ψ1>| = {overlap:.1e}, N = {}, brackets {} + {}",
        sys.norm_closed(),
        first.re,
        second.re
    ))
}

fn closed_form_vs_oracle() -> Outcome {
    let sys = system(&reference_solution(), 64)?;
    let ts = time_series(&sys, 0.0, 50.0, 2001).map_err(|e| e.to_string())?;
    ensure(ts.max_sigma_z_deviation < 1e-8, || {
        format!("σz dev {:e}", ts.max_sigma_z_deviation)
    })?;
    ensure(ts.max_n_deviation < 1e-8, || {
        format!("n dev {:e}", ts.max_n_deviation)
    })?;
    let (sz0, n0) = (ts.sigma_z_closed[0], ts.n_closed[0]);
    ensure(
        (sz0 - ORACLE_SIGMA_Z_0).abs() < 1e-4 && (sz0 + 0.43775).abs() < 1e-4,
        || format!("σz(0) = {sz0}"),
    )?;
    ensure(
        (n0 - ORACLE_N_0).abs() < 1e-4 && (n0 - 1.51330).abs() < 1e-4,
        || format!("n(0) = {n0}"),
    )?;
    Ok(format!(
        "max dev σz {:.1e}, n {:.1e}; σz(0) = {sz0:.6}, n(0) = {n0:.6}",
        ts.max_sigma_z_deviation, ts.max_n_deviation
    ))
}

fn frequency_of(sol: &ParameterSolution) -> Result<(f64, f64, f64), String> {
    let sys = system(sol, 64)?;
    let ts = time_series(&sys, 0.0, 50.0, 2001).map_err(|e| e.to_string())?;
    let fz = dominant_frequency(&ts.sigma_z_closed, &ts.times).map_err(|e| e.to_string())?;
    let fn_ = dominant_frequency(&ts.n_closed, &ts.times).map_err(|e| e.to_string())?;
    Ok((
        (sol.trap.delta() - sol.trap.nu()).abs(),
        fz.zero_crossing,
        fn_.zero_crossing,
    ))
}

fn rabi_frequency_law() -> Outcome {
    let (expected, fz, fn_) = frequency_of(&reference_solution())?;
    ensure((expected - 1.1875).abs() < 1e-15, || {
        format!("|δ−ν| = {expected}")
    })?;
    ensure(
        (fz - expected).abs() < 1e-3 && (fn_ - expected).abs() < 1e-3,
        || format!("reference: σz {fz}, n {fn_}"),
    )?;
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let omega = -0.95 + 0.9 * k as f64 / 19.0;
        let [_, sol] = solve_family_a(1.0, omega).map_err(|e| e.to_string())?;
        let (expected, fz, fn_) = frequency_of(&sol)?;
        let err = (fz - expected).abs().max((fn_ - expected).abs());
        ensure(err < 1e-3, || {
            format!("Ω = {omega}: |δ−ν| = {expected}, σz {fz}, n {fn_}")
        })?;
        worst = worst.max(err);
    }
    Ok(format!(
        "reference σz {fz:.6}, n {fn_:.6}; 20-point sweep worst error {worst:.1e}"
    ))
}

fn low_intensity_limit() -> Outcome {
    let [plus, minus] = solve_family_a(1.0, -0.01).map_err(|e| e.to_string())?;
    for sol in [&plus, &minus] {
        ensure((sol.trap.delta() + 0.25).abs() < 1e-4, || {
            format!("δ = {}", sol.trap.delta())
        })?;
        ensure((sol.trap.eta().abs() - 0.866).abs() < 1e-3, || {
            format!("η = {}", sol.trap.eta())
        })?;
    }
    let (_, fz, _) = frequency_of(&minus)?;
    ensure((fz - 1.25).abs() < 1e-3, || format!("frequency {fz}"))?;
    Ok(format!(
        "δ = {:.6}, η = ±{:.6}, frequency {fz:.6}",
        minus.trap.delta(),
        plus.trap.eta()
    ))
}

fn degeneracy() -> Outcome {
    let mut sols: Vec<ParameterSolution> = solve_family_b(1.0, -0.5).unwrap().into();
    sols.extend(
        parameter_points(1.0, 0.5)
            .unwrap()
            .points
            .into_iter()
            .map(|p| p.solution),
    );
    ensure(sols.len() == 4, || {
        format!("{} degenerate preparations", sols.len())
    })?;
    let mut worst: f64 = 0.0;
    for sol in &sols {
        let e = &sol.energies;
        ensure(e.psi0_plus == 1.5 && e.psi1_minus == 1.5, || {
            format!("energies {e:?}")
        })?;
        let sys = system(sol, 64)?;
        let ts = time_series(&sys, 0.0, 50.0, 2001).map_err(|e| e.to_string())?;
        for series in [
            &ts.sigma_z_closed,
            &ts.sigma_z_numeric,
            &ts.n_closed,
            &ts.n_numeric,
        ] {
            let v = variance(series);
            ensure(v < 1e-12, || {
                format!("{} variance {v:e}", sol.family.label())
            })?;
            worst = worst.max(v);
        }
    }
    Ok(format!(
        "B±, P2±: E = 1.5 exactly, max variance {worst:.1e}"
    ))
}

fn interval_constraints() -> Outcome {
    let (sqrt3, half_sqrt3) = (3f64.sqrt(), 3f64.sqrt() / 2.0);
    let mut count = 0;
    for k in 1..2000 {
        let omega = -(k as f64) / 2000.0;
        for sol in solve_family_a(1.0, omega).map_err(|e| e.to_string())? {
            let (d, eta) = (sol.trap.delta(), sol.trap.eta());
            ensure(d > -0.25 && d < 0.0, || format!("Ω = {omega}: δ = {d}"))?;
            ensure(eta.abs() < half_sqrt3, || format!("Ω = {omega}: η = {eta}"))?;
            ensure(sol.m.abs() > sqrt3, || {
                format!("Ω = {omega}: M = {}", sol.m)
            })?;
            ensure(
                validate_intervals(&sol)
                    .map(|r| r.all_pass())
                    .unwrap_or(false),
                || format!("Ω = {omega}: validation"),
            )?;
            count += 1;
        }
    }
    let mut prev = [f64::INFINITY; 3];
    for e in 1..=6 {
        let [_, sol] = solve_family_a(1.0, -(10f64.powi(-e))).unwrap();
        let gaps = [
            sol.trap.delta() + 0.25,
            half_sqrt3 - sol.trap.eta().abs(),
            sol.m.abs() - sqrt3,
        ];
        ensure(gaps.iter().all(|g| *g > 0.0), || {
            format!("bound attained at 1e-{e}: {gaps:?}")
        })?;
        ensure(gaps.iter().zip(&prev).all(|(g, p)| g < p), || {
            format!("non-monotone at 1e-{e}")
        })?;
        prev = gaps;
    }
    Ok(format!(
        "{count} solutions inside intervals; gaps at Ω=-1e-6: {:.1e} {:.1e} {:.1e}",
        prev[0], prev[1], prev[2]
    ))
}

fn operator_kernel() -> Outcome {
    let t64 = Truncation::new(64).unwrap();
    let zero = displacement_matrix(Complex64::new(0.0, 0.0), t64, DisplacementMethod::Laguerre)
        .map_err(|e| e.to_string())?;
    let id_err = zero.max_abs_diff(&ComplexMatrix::identity(64)).unwrap();
    ensure(id_err < 1e-14, || format!("D(0) error {id_err:e}"))?;

    let alpha = Complex64::new(0.0, ETA);
    let d = displacement_matrix(alpha, t64, DisplacementMethod::Laguerre).unwrap();
    let d_inv = displacement_matrix(-alpha, t64, DisplacementMethod::Laguerre).unwrap();
    let block = protected_block(alpha, t64, 1e-12);
    ensure(block >= 32, || {
        format!("protected block only {block} levels")
    })?;
    let inv_err = d
        .matmul(&d_inv)
        .unwrap()
        .top_left(block)
        .max_abs_diff(&ComplexMatrix::identity(block))
        .unwrap();
    ensure(inv_err < 1e-10, || format!("D(α)D(−α) error {inv_err:e}"))?;

    let mean: f64 = coherent_state(alpha, t64)
        .iter()
        .enumerate()
        .map(|(n, z)| n as f64 * z.norm_sqr())
        .sum();
    let coh_err = (mean - alpha.norm_sqr()).abs();
    ensure(coh_err < 1e-10, || {
        format!("coherent <n> error {coh_err:e}")
    })?;

    let lag = displacement_matrix(
        alpha,
        Truncation::new(32).unwrap(),
        DisplacementMethod::Laguerre,
    )
    .unwrap();
    let spec = displacement_matrix(
        alpha,
        Truncation::new(128).unwrap(),
        DisplacementMethod::Spectral,
    )
    .unwrap();
    let method_err = lag.top_left(24).max_abs_diff(&spec.top_left(24)).unwrap();
    ensure(method_err < 1e-10, || {
        format!("spectral vs Laguerre {method_err:e}")
    })?;

    Ok(format!(
        "D(0)=I {id_err:.0e}; D(α)D(−α) on {block} levels {inv_err:.1e}; coherent <n> {coh_err:.1e}; spectral/Laguerre {method_err:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("parameter reproduction", parameter_reproduction),
        ("condition satisfaction", condition_satisfaction),
        ("eigenpair soundness", eigenpair_soundness),
        (
            "orthogonality and normalization",
            orthogonality_normalization,
        ),
        ("closed-form vs oracle dynamics", closed_form_vs_oracle),
        ("Rabi frequency law", rabi_frequency_law),
        ("low-intensity limit", low_intensity_limit),
        ("degeneracy", degeneracy),
        ("interval constraints", interval_constraints),
        ("operator kernel", operator_kernel),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_owned()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
