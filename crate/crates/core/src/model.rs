//! The ion–laser Hamiltonian and its two closed-form trapping eigenpairs.
//!
//! `|ψ₀⁺⟩` has energy `ν + δ/2` and is exact when
//! `Ω²/ν² + η² − δ/ν = 1`. `|ψ₁⁻⟩` has energy `2ν − δ/2` and is exact when
//! both
//!
//! ```text
//! 2 − η² − δ/ν − Ω²/(2ν²) = −iηm        1 − η² − δ/ν − Ω²/ν² = iη/m
//! ```
//!
//! hold for `m = d₁/d₀`, which forces `m` to be purely imaginary.

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::fockspace::{
    bosonic_alphabet, coherent_state, displaced_number_state, displacement_matrix, pauli,
    qubit_kron, ComplexMatrix, DisplacementMethod, StateVector, Truncation,
};
use crate::{Error, Result};

/// Tolerance on condition residuals.
pub const CONDITION_TOL: f64 = 1e-10;
/// Tolerance on `‖(H − E)|ψ⟩‖`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;
/// Largest real part accepted for a "purely imaginary" ratio `d₁/d₀`.
pub const IMAGINARY_RATIO_TOL: f64 = 1e-12;

/// Physical parameters of the trapped ion (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapParams {
    nu: f64,
    omega: f64,
    delta: f64,
    eta: f64,
}

impl TrapParams {
    /// `nu`: trap frequency, `omega`: Rabi frequency, `delta`: detuning,
    /// `eta`: Lamb-Dicke parameter.
    pub fn new(nu: f64, omega: f64, delta: f64, eta: f64) -> Result<Self> {
        if !(nu.is_finite() && omega.is_finite() && delta.is_finite() && eta.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite"));
        }
        if nu <= 0.0 {
            return Err(Error::InvalidParams("nu must be positive"));
        }
        if omega == 0.0 {
            return Err(Error::InvalidParams("omega must be nonzero"));
        }
        if eta == 0.0 {
            return Err(Error::InvalidParams("eta must be nonzero"));
        }
        Ok(TrapParams {
            nu,
            omega,
            delta,
            eta,
        })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::new(self.nu, self.omega, delta, self.eta)
    }

    pub fn with_eta(&self, eta: f64) -> Result<Self> {
        Self::new(self.nu, self.omega, self.delta, eta)
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.nu, omega, self.delta, self.eta)
    }

    /// `E₀⁺ = ν + δ/2`.
    pub fn energy_psi0_plus(&self) -> f64 {
        self.nu + self.delta / 2.0
    }

    /// `E₁⁻ = 2ν − δ/2`.
    pub fn energy_psi1_minus(&self) -> f64 {
        2.0 * self.nu - self.delta / 2.0
    }

    /// `N₀⁺ = [1 + Ω²/ν² + (ην/Ω)²]^{1/2}`.
    pub fn norm_psi0_plus(&self) -> f64 {
        let r = self.omega / self.nu;
        let s = self.eta * self.nu / self.omega;
        sqrt(1.0 + r * r + s * s)
    }

    /// `N₁⁻` for the given amplitudes.
    pub fn norm_psi1_minus(&self, c: &EigenCoeffs) -> f64 {
        let r = self.omega / self.nu;
        let s = self.eta * self.nu / self.omega;
        let w0 = 1.0 + r * r / 4.0;
        let w1 = 1.0 + r * r + 2.0 * s * s;
        sqrt(w0 * c.d0.norm_sqr() + w1 * c.d1.norm_sqr())
    }
}

/// The amplitudes `(d₀, d₁)` of `|ψ₁⁻⟩`; only their ratio is constrained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCoeffs {
    pub d0: Complex64,
    pub d1: Complex64,
}

impl EigenCoeffs {
    pub fn new(d0: Complex64, d1: Complex64) -> Result<Self> {
        if d0.is_zero() && d1.is_zero() {
            return Err(Error::InvalidCoefficients("d0 and d1 cannot both vanish"));
        }
        Ok(EigenCoeffs { d0, d1 })
    }

    /// `d₀ = 1`, `d₁ = iM`.
    pub fn from_imaginary_ratio(m: f64) -> Self {
        EigenCoeffs {
            d0: Complex64::new(1.0, 0.0),
            d1: Complex64::new(0.0, m),
        }
    }

    /// `m = d₁/d₀`, or `None` when `d₀ = 0`.
    pub fn ratio(&self) -> Option<Complex64> {
        if self.d0.is_zero() {
            None
        } else {
            Some(self.d1 / self.d0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Psi0Plus,
    Psi1Minus,
}

/// A closed-form eigenstate candidate, normalized by its closed-form
/// normalization constant.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenpairCandidate {
    pub family: Family,
    pub state: StateVector,
    pub energy: f64,
    /// Closed-form normalization constant.
    pub norm_constant: f64,
    /// Norm of the unnormalized vector as assembled on the truncated basis.
    pub direct_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub family: Family,
    /// LHS − RHS of each validity equation.
    pub residuals: Vec<Complex64>,
    pub tolerance: f64,
    pub satisfied: bool,
}

impl ConditionReport {
    fn new(family: Family, residuals: Vec<Complex64>) -> Self {
        let satisfied = residuals.iter().all(|r| r.norm() <= CONDITION_TOL);
        ConditionReport {
            family,
            residuals,
            tolerance: CONDITION_TOL,
            satisfied,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }
}

/// Truncated Hamiltonian and the asymmetry removed by symmetrization.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    pub matrix: ComplexMatrix,
    /// `max |H − H†|` before symmetrization.
    pub asymmetry: f64,
}

/// `H = ν n + (δ/2) σz + Ω [σ+ D(iη) + σ- D†(iη)]` on `2·n_max` states.
pub fn build_hamiltonian(p: &TrapParams, trunc: Truncation) -> Result<Hamiltonian> {
    let d = displacement_matrix(
        Complex64::new(0.0, p.eta),
        trunc,
        DisplacementMethod::Laguerre,
    )?;
    assemble_hamiltonian(p, &d)
}

/// Assemble `H` around an arbitrary displacement matrix standing in for
/// `D(iη)`. Its size fixes the truncation.
pub fn assemble_hamiltonian(p: &TrapParams, displacement: &ComplexMatrix) -> Result<Hamiltonian> {
    let n = displacement.rows();
    let trunc = Truncation::new(n)?;
    if !displacement.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: displacement.cols(),
        });
    }
    let b = bosonic_alphabet(trunc);
    let id = ComplexMatrix::identity(n);
    let re = |x: f64| Complex64::new(x, 0.0);

    let vib = qubit_kron(&pauli::identity(), &b.n_op)?.scale(re(p.nu));
    let atom = qubit_kron(&pauli::sigma_z(), &id)?.scale(re(p.delta / 2.0));
    let up = qubit_kron(&pauli::sigma_plus(), displacement)?;
    let down = qubit_kron(&pauli::sigma_minus(), &displacement.adjoint())?;
    let coupling = up.add(&down)?.scale(re(p.omega));

    let raw = vib.add(&atom)?.add(&coupling)?;
    Ok(Hamiltonian {
        asymmetry: raw.hermitian_defect(),
        matrix: raw.hermitian_part(),
    })
}

fn require_levels(trunc: Truncation, levels: usize) -> Result<()> {
    if trunc.n_max() < levels {
        return Err(Error::FockIndexOutOfRange {
            k: levels - 1,
            n_max: trunc.n_max(),
        });
    }
    Ok(())
}

/// Upper: `(Ω/ν)|0⟩ + (ν/Ω) iη |1⟩`; lower: the coherent state `|−iη⟩`.
pub fn psi0_plus(p: &TrapParams, trunc: Truncation) -> Result<EigenpairCandidate> {
    require_levels(trunc, 2)?;
    let n = trunc.n_max();
    // also validates the truncation against |η|
    let lower = displaced_number_state(Complex64::new(0.0, -p.eta), 0, trunc)?;
    debug_assert_eq!(lower, coherent_state(Complex64::new(0.0, -p.eta), trunc));

    let mut upper = vec![Complex64::zero(); n];
    upper[0] = Complex64::new(p.omega / p.nu, 0.0);
    upper[1] = Complex64::new(0.0, p.nu / p.omega * p.eta);

    let raw = StateVector::from_spinor(trunc, &upper, &lower)?;
    let norm_constant = p.norm_psi0_plus();
    Ok(EigenpairCandidate {
        family: Family::Psi0Plus,
        direct_norm: raw.norm(),
        state: raw.scaled(Complex64::new(1.0 / norm_constant, 0.0)),
        energy: p.energy_psi0_plus(),
        norm_constant,
    })
}

/// Upper: `d₀|iη⟩ + d₁|iη;1⟩`; lower:
/// `(Ω/ν)[(d₀/2)|0⟩ + d₁|1⟩ − iη(ν²/Ω²)√2 d₁|2⟩]`.
pub fn psi1_minus(
    p: &TrapParams,
    c: &EigenCoeffs,
    trunc: Truncation,
) -> Result<EigenpairCandidate> {
    require_levels(trunc, 3)?;
    let n = trunc.n_max();
    let alpha = Complex64::new(0.0, p.eta);
    let coh = displaced_number_state(alpha, 0, trunc)?;
    let disp1 = displaced_number_state(alpha, 1, trunc)?;
    let upper: Vec<Complex64> = coh
        .iter()
        .zip(&disp1)
        .map(|(a, b)| c.d0 * a + c.d1 * b)
        .collect();

    let r = p.omega / p.nu;
    let mut lower = vec![Complex64::zero(); n];
    lower[0] = c.d0 * (r / 2.0);
    lower[1] = c.d1 * r;
    lower[2] = Complex64::new(0.0, -p.eta * p.nu / p.omega * sqrt(2.0)) * c.d1;

    let raw = StateVector::from_spinor(trunc, &upper, &lower)?;
    let norm_constant = p.norm_psi1_minus(c);
    Ok(EigenpairCandidate {
        family: Family::Psi1Minus,
        direct_norm: raw.norm(),
        state: raw.scaled(Complex64::new(1.0 / norm_constant, 0.0)),
        energy: p.energy_psi1_minus(),
        norm_constant,
    })
}

/// Residual of `Ω²/ν² + η² − δ/ν = 1`.
pub fn check_condition_psi0(p: &TrapParams) -> ConditionReport {
    let residual = psi0_residual(p.nu, p.omega, p.delta, p.eta);
    ConditionReport::new(Family::Psi0Plus, vec![Complex64::new(residual, 0.0)])
}

/// `Ω²/ν² + η² − δ/ν − 1` without the [`TrapParams`] invariants, so grid
/// points with `Ω = 0` or `η = 0` can be evaluated.
pub fn psi0_residual(nu: f64, omega: f64, delta: f64, eta: f64) -> f64 {
    let r = omega / nu;
    r * r + eta * eta - delta / nu - 1.0
}

/// Residuals of both `|ψ₁⁻⟩` conditions for the ratio `m = d₁/d₀`.
pub fn check_conditions_psi1(p: &TrapParams, m: Complex64) -> Result<ConditionReport> {
    if m.is_zero() {
        return Err(Error::InvalidCoefficients("d1/d0 must be nonzero"));
    }
    if m.re.abs() > IMAGINARY_RATIO_TOL {
        return Err(Error::RatioNotImaginary { re: m.re });
    }
    let residuals = psi1_residuals(p.nu, p.omega, p.delta, p.eta, m);
    Ok(ConditionReport::new(Family::Psi1Minus, residuals.to_vec()))
}

/// LHS − RHS of both `|ψ₁⁻⟩` conditions, with no validation of the inputs.
pub fn psi1_residuals(nu: f64, omega: f64, delta: f64, eta: f64, m: Complex64) -> [Complex64; 2] {
    let r = omega / nu;
    let base = -eta * eta - delta / nu;
    let i_eta = Complex64::new(0.0, eta);
    [
        Complex64::new(2.0 + base - r * r / 2.0, 0.0) + i_eta * m,
        Complex64::new(1.0 + base - r * r, 0.0) - i_eta / m,
    ]
}

/// Condition report for `|ψ₁⁻⟩` straight from the amplitudes.
pub fn check_conditions_psi1_coeffs(p: &TrapParams, c: &EigenCoeffs) -> Result<ConditionReport> {
    let m = c
        .ratio()
        .ok_or(Error::InvalidCoefficients("d0 must be nonzero"))?;
    check_conditions_psi1(p, m)
}

/// `‖H|ψ⟩ − E|ψ⟩‖₂`.
pub fn eigen_residual(h: &ComplexMatrix, cand: &EigenpairCandidate) -> Result<f64> {
    let x = cand.state.amplitudes();
    let hx = h.mul_vec(x)?;
    Ok(sqrt(
        hx.iter()
            .zip(x)
            .map(|(a, b)| (a - b * cand.energy).norm_sqr())
            .sum::<f64>(),
    ))
}
