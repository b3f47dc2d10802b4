//! Evolution of `|ψ(0)⟩ = (c₁|ψ₀⁺⟩ + c₂|ψ₁⁻⟩)/N`.
//!
//! Both components are exact eigenstates, so the analytic evolution only
//! attaches the phases `e^{−itE}`. The numeric path diagonalizes the
//! truncated Hamiltonian once and evolves in its eigenbasis; it shares no
//! code with the closed forms beyond the prepared initial vector.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, exp, sqrt};
use num_complex::Complex64;

use crate::fockspace::{
    bosonic_alphabet, inner_product, pauli, qubit_kron, ComplexMatrix, StateVector, Truncation,
};
use crate::linalg::HermitianEigen;
use crate::model::{
    build_hamiltonian, check_condition_psi0, check_conditions_psi1_coeffs, psi0_plus, psi1_minus,
    EigenCoeffs, EigenpairCandidate, Hamiltonian, TrapParams, CONDITION_TOL,
};
use crate::params::Linspace;
use crate::{Error, Result};

/// `|c₁|² + |c₂|²` must equal 1 to this tolerance.
pub const SUPERPOSITION_TOL: f64 = 1e-12;

/// Peak-to-peak spans below this count as a constant signal.
pub const CONSTANT_SIGNAL_SPAN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionCoeffs {
    c1: Complex64,
    c2: Complex64,
}

impl SuperpositionCoeffs {
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self> {
        let norm_sq = c1.norm_sqr() + c2.norm_sqr();
        if (norm_sq - 1.0).abs() > SUPERPOSITION_TOL {
            return Err(Error::InvalidSuperposition { norm_sq });
        }
        Ok(SuperpositionCoeffs { c1, c2 })
    }

    /// `c₁ = c₂ = 1/√2`.
    pub fn balanced() -> Self {
        let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        SuperpositionCoeffs { c1: h, c2: h }
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }
}

/// A closed-form observable split into its three brackets, before the
/// overall `1/|N|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormTerms {
    /// Time-independent `|c₁/N₀⁺|²` bracket.
    pub c1_block: f64,
    /// Time-independent `|c₂/N₁⁻|²` bracket.
    pub c2_block: f64,
    /// Interference term oscillating at `E₀⁺ − E₁⁻`.
    pub cross: f64,
    /// `|N|²`.
    pub norm_sq: f64,
}

impl ClosedFormTerms {
    pub fn value(&self) -> f64 {
        (self.c1_block + self.c2_block + self.cross) / self.norm_sq
    }
}

/// Everything needed to evolve the two-eigenstate superposition.
#[derive(Debug, Clone)]
pub struct PreparedSystem {
    trap: TrapParams,
    coeffs: EigenCoeffs,
    sup: SuperpositionCoeffs,
    trunc: Truncation,
    psi0: EigenpairCandidate,
    psi1: EigenpairCandidate,
    hamiltonian: Hamiltonian,
    norm_closed: f64,
    norm_direct: f64,
    initial: StateVector,
    degenerate: bool,
    spectrum: HermitianEigen,
    initial_coords: Vec<Complex64>,
    sigma_z_diag: Vec<f64>,
    number_diag: Vec<f64>,
}

/// Validate the conditions, assemble `|ψ(0)⟩` and diagonalize `H`.
pub fn prepare(
    trap: TrapParams,
    coeffs: EigenCoeffs,
    sup: SuperpositionCoeffs,
    trunc: Truncation,
) -> Result<PreparedSystem> {
    let r0 = check_condition_psi0(&trap);
    if !r0.satisfied {
        return Err(Error::InvalidPreparation {
            name: "psi0_condition",
            value: r0.max_residual(),
        });
    }
    let r1 = check_conditions_psi1_coeffs(&trap, &coeffs)?;
    for (name, r) in ["psi1_condition_1", "psi1_condition_2"]
        .iter()
        .zip(&r1.residuals)
    {
        if r.norm() > CONDITION_TOL {
            return Err(Error::InvalidPreparation {
                name,
                value: r.norm(),
            });
        }
    }

    let psi0 = psi0_plus(&trap, trunc)?;
    let psi1 = psi1_minus(&trap, &coeffs, trunc)?;
    let hamiltonian = build_hamiltonian(&trap, trunc)?;

    let raw = psi0.state.combine(sup.c1, &psi1.state, sup.c2)?;
    let norm_direct = raw.norm();
    let norm_closed = closed_norm(&trap, &coeffs, &sup, psi0.norm_constant, psi1.norm_constant);
    let initial = raw.scaled(Complex64::new(1.0 / norm_closed, 0.0));

    let spectrum = HermitianEigen::new(&hamiltonian.matrix)?;
    let initial_coords = spectrum.to_eigenbasis(initial.amplitudes())?;

    let b = bosonic_alphabet(trunc);
    // σz ⊗ I and I ⊗ n are diagonal in the product basis
    let sigma_z_diag = diagonal(&qubit_kron(
        &pauli::sigma_z(),
        &ComplexMatrix::identity(trunc.n_max()),
    )?);
    let number_diag = diagonal(&qubit_kron(&pauli::identity(), &b.n_op)?);

    let gap = trap.energy_psi0_plus() - trap.energy_psi1_minus();
    Ok(PreparedSystem {
        trap,
        coeffs,
        sup,
        trunc,
        degenerate: gap.abs() <= 1e-12 * trap.nu(),
        psi0,
        psi1,
        hamiltonian,
        norm_closed,
        norm_direct,
        initial,
        spectrum,
        initial_coords,
        sigma_z_diag,
        number_diag,
    })
}

fn diagonal(m: &ComplexMatrix) -> Vec<f64> {
    (0..m.rows()).map(|k| m[(k, k)].re).collect()
}

fn diagonal_expectation(diag: &[f64], x: &StateVector) -> f64 {
    diag.iter()
        .zip(x.amplitudes())
        .map(|(d, a)| d * a.norm_sqr())
        .sum()
}

/// `e^{−η²/2}/(N₀⁺N₁⁻)` times the bracket of the normalization overlap.
fn closed_overlap(p: &TrapParams, c: &EigenCoeffs, n0: f64, n1: f64) -> Complex64 {
    let (nu, om, eta) = (p.nu(), p.omega(), p.eta());
    let i_eta = Complex64::new(0.0, eta);
    let bracket = c.d0 * (3.0 * om / (2.0 * nu) + nu * eta * eta / om)
        + i_eta * c.d1 * (2.0 * om / nu + 2.0 * nu / om * eta * eta - nu / om);
    bracket * (exp(-eta * eta / 2.0) / (n0 * n1))
}

/// `N = [1 + 2 Re{c₁* c₂ ⟨ψ₀⁺|ψ₁⁻⟩}]^{1/2}` with the overlap in closed form.
fn closed_norm(
    p: &TrapParams,
    c: &EigenCoeffs,
    sup: &SuperpositionCoeffs,
    n0: f64,
    n1: f64,
) -> f64 {
    let overlap = closed_overlap(p, c, n0, n1);
    sqrt(1.0 + 2.0 * (sup.c1.conj() * sup.c2 * overlap).re)
}

impl PreparedSystem {
    pub fn trap(&self) -> &TrapParams {
        &self.trap
    }

    pub fn eigen_coeffs(&self) -> &EigenCoeffs {
        &self.coeffs
    }

    pub fn superposition(&self) -> &SuperpositionCoeffs {
        &self.sup
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn psi0_plus(&self) -> &EigenpairCandidate {
        &self.psi0
    }

    pub fn psi1_minus(&self) -> &EigenpairCandidate {
        &self.psi1
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial
    }

    /// `N` from the closed form.
    pub fn norm_closed(&self) -> f64 {
        self.norm_closed
    }

    /// Norm of `c₁|ψ₀⁺⟩ + c₂|ψ₁⁻⟩` computed from the vector.
    pub fn norm_direct(&self) -> f64 {
        self.norm_direct
    }

    /// Closed-form overlap `⟨ψ₀⁺|ψ₁⁻⟩` of the normalized eigenstates.
    pub fn overlap_closed(&self) -> Complex64 {
        closed_overlap(
            &self.trap,
            &self.coeffs,
            self.psi0.norm_constant,
            self.psi1.norm_constant,
        )
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `|E₀⁺ − E₁⁻| = |δ − ν|`.
    pub fn angular_frequency(&self) -> f64 {
        (self.psi0.energy - self.psi1.energy).abs()
    }

    /// `2π/|E₀⁺ − E₁⁻|`, or `None` when degenerate.
    pub fn period(&self) -> Option<f64> {
        if self.degenerate {
            None
        } else {
            Some(2.0 * PI / self.angular_frequency())
        }
    }

    /// `(c₁e^{−itE₀⁺}|ψ₀⁺⟩ + c₂e^{−itE₁⁻}|ψ₁⁻⟩)/N`.
    pub fn evolve_analytic(&self, t: f64) -> StateVector {
        let a = self.sup.c1 * Complex64::from_polar(1.0 / self.norm_closed, -t * self.psi0.energy);
        let b = self.sup.c2 * Complex64::from_polar(1.0 / self.norm_closed, -t * self.psi1.energy);
        self.psi0
            .state
            .combine(a, &self.psi1.state, b)
            .expect("candidates share the truncation")
    }

    /// `Σₖ e^{−itEₖ}|k⟩⟨k|ψ(0)⟩` over the eigenbasis of the truncated `H`.
    pub fn evolve_numeric(&self, t: f64) -> StateVector {
        let v = self.spectrum.vectors();
        let phased: Vec<Complex64> = self
            .initial_coords
            .iter()
            .zip(self.spectrum.values())
            .map(|(c, &e)| c * Complex64::from_polar(1.0, -t * e))
            .collect();
        let amps = v.mul_vec(&phased).expect("square eigenvector matrix");
        StateVector::from_amplitudes(self.trunc, amps).expect("dimension fixed by the truncation")
    }

    /// The three brackets of the closed-form atomic inversion.
    pub fn atomic_inversion_terms(&self, t: f64) -> ClosedFormTerms {
        let (nu, om, eta) = (self.trap.nu(), self.trap.omega(), self.trap.eta());
        let (d0, d1) = (self.coeffs.d0, self.coeffs.d1);
        let r = om / nu;
        let s = nu * eta / om;
        let c1_block = (self.sup.c1 / self.psi0.norm_constant).norm_sqr() * (-1.0 + r * r + s * s);
        let c2_block = (self.sup.c2 / self.psi1.norm_constant).norm_sqr()
            * (d0.norm_sqr() * (1.0 - r * r / 4.0) + d1.norm_sqr() * (1.0 - r * r - 2.0 * s * s));
        let bracket = d0 * (om / (2.0 * nu) + nu * eta * eta / om)
            - Complex64::new(0.0, eta) * d1 * (nu / om);
        ClosedFormTerms {
            c1_block,
            c2_block,
            cross: self.cross_term(t, bracket),
            norm_sq: self.norm_closed * self.norm_closed,
        }
    }

    /// The three brackets of the closed-form mean phonon number.
    pub fn mean_phonons_terms(&self, t: f64) -> ClosedFormTerms {
        let (nu, om, eta) = (self.trap.nu(), self.trap.omega(), self.trap.eta());
        let (d0, d1) = (self.coeffs.d0, self.coeffs.d1);
        let r = om / nu;
        let i_eta = Complex64::new(0.0, eta);
        let c1_block =
            (self.sup.c1 / self.psi0.norm_constant).norm_sqr() * eta * eta * (1.0 + 1.0 / (r * r));
        let interference = i_eta * (d0 * d1.conj() - d0.conj() * d1);
        let c2_block = (self.sup.c2 / self.psi1.norm_constant).norm_sqr()
            * (d0.norm_sqr() * eta * eta
                + d1.norm_sqr() * (1.0 + eta * eta + r * r + 4.0 * eta * eta / (r * r))
                + interference.re);
        let bracket = d0 * (eta * eta / r) + i_eta * d1 * (r - 1.0 / r + 3.0 * eta * eta / r);
        ClosedFormTerms {
            c1_block,
            c2_block,
            cross: self.cross_term(t, bracket),
            norm_sq: self.norm_closed * self.norm_closed,
        }
    }

    /// `2e^{−η²/2} Re{c₁*c₂/(N₀⁺N₁⁻) e^{it(E₀⁺−E₁⁻)} · bracket}`.
    fn cross_term(&self, t: f64, bracket: Complex64) -> f64 {
        let eta = self.trap.eta();
        let weight =
            self.sup.c1.conj() * self.sup.c2 / (self.psi0.norm_constant * self.psi1.norm_constant);
        let phase = Complex64::from_polar(1.0, t * (self.psi0.energy - self.psi1.energy));
        2.0 * exp(-eta * eta / 2.0) * (weight * phase * bracket).re
    }

    /// `⟨σz⟩(t)` in closed form.
    pub fn atomic_inversion_closed(&self, t: f64) -> f64 {
        self.atomic_inversion_terms(t).value()
    }

    /// `⟨n⟩(t)` in closed form.
    pub fn mean_phonons_closed(&self, t: f64) -> f64 {
        self.mean_phonons_terms(t).value()
    }

    /// `⟨ψ(t)|σz ⊗ I|ψ(t)⟩` on the numerically evolved state.
    pub fn atomic_inversion_numeric(&self, t: f64) -> f64 {
        diagonal_expectation(&self.sigma_z_diag, &self.evolve_numeric(t))
    }

    /// `⟨ψ(t)|I ⊗ n|ψ(t)⟩` on the numerically evolved state.
    pub fn mean_phonons_numeric(&self, t: f64) -> f64 {
        diagonal_expectation(&self.number_diag, &self.evolve_numeric(t))
    }

    /// `|⟨ψ₀⁺|ψ₁⁻⟩|` computed from the vectors.
    pub fn eigenstate_overlap(&self) -> f64 {
        inner_product(&self.psi0.state, &self.psi1.state)
            .expect("candidates share the truncation")
            .norm()
    }
}

/// `‖a − b‖₂` after removing each vector's global phase.
pub fn state_discrepancy(a: &StateVector, b: &StateVector) -> Result<f64> {
    a.phase_aligned().distance(&b.phase_aligned())
}

/// Closed-form and numeric observables on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub sigma_z_closed: Vec<f64>,
    pub sigma_z_numeric: Vec<f64>,
    pub n_closed: Vec<f64>,
    pub n_numeric: Vec<f64>,
    pub max_sigma_z_deviation: f64,
    pub max_n_deviation: f64,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn time_series(
    sys: &PreparedSystem,
    t_start: f64,
    t_end: f64,
    steps: usize,
) -> Result<TimeSeries> {
    if t_end <= t_start {
        return Err(Error::InvalidGrid("t_end must exceed t_start"));
    }
    let grid = Linspace::new(t_start, t_end, steps)?;
    let times: Vec<f64> = grid.values().collect();
    let mut out = TimeSeries {
        sigma_z_closed: Vec::with_capacity(steps),
        sigma_z_numeric: Vec::with_capacity(steps),
        n_closed: Vec::with_capacity(steps),
        n_numeric: Vec::with_capacity(steps),
        times,
        max_sigma_z_deviation: 0.0,
        max_n_deviation: 0.0,
    };
    for &t in &out.times {
        let state = sys.evolve_numeric(t);
        out.sigma_z_closed.push(sys.atomic_inversion_closed(t));
        out.n_closed.push(sys.mean_phonons_closed(t));
        out.sigma_z_numeric
            .push(diagonal_expectation(&sys.sigma_z_diag, &state));
        out.n_numeric
            .push(diagonal_expectation(&sys.number_diag, &state));
    }
    out.max_sigma_z_deviation = max_deviation(&out.sigma_z_closed, &out.sigma_z_numeric);
    out.max_n_deviation = max_deviation(&out.n_closed, &out.n_numeric);
    Ok(out)
}

/// Angular frequency of the principal oscillation, by two methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate {
    /// From the spacing of rising zero crossings of the mean-subtracted
    /// signal.
    pub zero_crossing: f64,
    /// Peak of the Hann-windowed discrete Fourier amplitude.
    pub fourier: f64,
}

/// Dominant angular frequency of a sampled real signal.
pub fn dominant_frequency(values: &[f64], times: &[f64]) -> Result<FrequencyEstimate> {
    if values.len() != times.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            found: values.len(),
        });
    }
    if values.len() < 3 {
        return Err(Error::InvalidGrid("need at least 3 samples"));
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if hi - lo < CONSTANT_SIGNAL_SPAN {
        return Err(Error::NoOscillation);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let centered: Vec<f64> = values.iter().map(|v| v - mean).collect();

    let rising: Vec<f64> = centered
        .windows(2)
        .zip(times.windows(2))
        .filter(|(y, _)| y[0] < 0.0 && y[1] >= 0.0)
        .map(|(y, t)| t[0] + (t[1] - t[0]) * (-y[0]) / (y[1] - y[0]))
        .collect();
    if rising.len() < 2 {
        return Err(Error::TooFewCrossings(rising.len()));
    }
    let periods = (rising.len() - 1) as f64;
    let zero_crossing = 2.0 * PI * periods / (rising[rising.len() - 1] - rising[0]);

    Ok(FrequencyEstimate {
        zero_crossing,
        fourier: fourier_peak(&centered, times),
    })
}

fn fourier_peak(centered: &[f64], times: &[f64]) -> f64 {
    let n = centered.len();
    let span = times[n - 1] - times[0];
    let windowed: Vec<f64> = centered
        .iter()
        .enumerate()
        .map(|(j, y)| y * 0.5 * (1.0 - cos(2.0 * PI * j as f64 / (n - 1) as f64)))
        .collect();
    let dt = span / (n - 1) as f64;
    let uniform = times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt);
    let amplitude = |w: f64| -> f64 {
        if uniform {
            let step = Complex64::from_polar(1.0, -w * dt);
            let mut phase = Complex64::from_polar(1.0, -w * times[0]);
            let mut acc = Complex64::new(0.0, 0.0);
            for y in &windowed {
                acc += phase * y;
                phase *= step;
            }
            acc.norm()
        } else {
            windowed
                .iter()
                .zip(times)
                .map(|(y, &t)| Complex64::from_polar(*y, -w * t))
                .sum::<Complex64>()
                .norm()
        }
    };

    let step = PI / (2.0 * span);
    let nyquist = PI * (n - 1) as f64 / span;
    let mut best = (step, amplitude(step));
    let mut w = 2.0 * step;
    while w <= nyquist {
        let a = amplitude(w);
        if a > best.1 {
            best = (w, a);
        }
        w += step;
    }

    // golden-section refinement on the bracketing bins
    let inv_phi = (sqrt(5.0) - 1.0) / 2.0;
    let (mut a, mut b) = ((best.0 - step).max(0.0), best.0 + step);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (amplitude(x1), amplitude(x2));
    while b - a > 1e-10 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = amplitude(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = amplitude(x2);
        }
    }
    (a + b) / 2.0
}
