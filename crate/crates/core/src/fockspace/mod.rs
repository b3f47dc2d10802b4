//! Truncated Fock space of one harmonic oscillator and its product with a
//! two-level atom.
//!
//! Composite states use a single layout everywhere: amplitude index
//! `s * n_max + n`, where `s = 0` is the excited (upper spinor) level and
//! `s = 1` the ground (lower spinor) level, and `n` is the Fock level.

mod displacement;
mod matrix;

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::{Error, Result, DEFAULT_N_MAX};

pub use displacement::{
    coherent_state, coherent_tail_weight, displaced_number_state, displacement_matrix,
    displacement_matrix_with, protected_block, DisplacementMethod, DisplacementOptions,
    DEFAULT_MAX_TAIL_WEIGHT,
};
pub use matrix::ComplexMatrix;

/// Number of Fock levels kept: the basis is `|0⟩ … |n_max - 1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Truncation {
    n_max: usize,
}

impl Truncation {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::TruncationTooSmall(n_max));
        }
        Ok(Truncation { n_max })
    }

    pub fn n_max(self) -> usize {
        self.n_max
    }

    /// Dimension of the atom ⊗ oscillator space.
    pub fn dim(self) -> usize {
        2 * self.n_max
    }

    pub fn doubled(self) -> Self {
        Truncation {
            n_max: 2 * self.n_max,
        }
    }

    /// Upper bound on the protected block: the lowest three quarters of the
    /// retained levels.
    pub fn protected_cap(self) -> usize {
        3 * self.n_max / 4
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            n_max: DEFAULT_N_MAX,
        }
    }
}

/// Atomic level, i.e. the spinor component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Excited = 0,
    Ground = 1,
}

/// Complex amplitudes over the atom ⊗ truncated-oscillator basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    trunc: Truncation,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(trunc: Truncation) -> Self {
        StateVector {
            trunc,
            amps: vec![Complex64::zero(); trunc.dim()],
        }
    }

    /// `|level⟩ ⊗ |n⟩`.
    pub fn basis(trunc: Truncation, level: Level, n: usize) -> Result<Self> {
        if n >= trunc.n_max() {
            return Err(Error::FockIndexOutOfRange {
                k: n,
                n_max: trunc.n_max(),
            });
        }
        let mut v = Self::zeros(trunc);
        v.amps[level as usize * trunc.n_max() + n] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    /// Stack the excited (upper) and ground (lower) oscillator kets.
    pub fn from_spinor(
        trunc: Truncation,
        upper: &[Complex64],
        lower: &[Complex64],
    ) -> Result<Self> {
        for part in [upper, lower] {
            if part.len() != trunc.n_max() {
                return Err(Error::DimensionMismatch {
                    expected: trunc.n_max(),
                    found: part.len(),
                });
            }
        }
        let mut amps = Vec::with_capacity(trunc.dim());
        amps.extend_from_slice(upper);
        amps.extend_from_slice(lower);
        Ok(StateVector { trunc, amps })
    }

    pub fn from_amplitudes(trunc: Truncation, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != trunc.dim() {
            return Err(Error::DimensionMismatch {
                expected: trunc.dim(),
                found: amps.len(),
            });
        }
        Ok(StateVector { trunc, amps })
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.amps[..self.trunc.n_max()]
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.amps[self.trunc.n_max()..]
    }

    pub fn amplitude(&self, level: Level, n: usize) -> Complex64 {
        self.amps[level as usize * self.trunc.n_max() + n]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.norm_sqr())
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        StateVector {
            trunc: self.trunc,
            amps: self.amps.iter().map(|&z| z * s).collect(),
        }
    }

    /// `self / ‖self‖`. A zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / n, 0.0))
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        self.check_dim(other)?;
        Ok(StateVector {
            trunc: self.trunc,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(sqrt(
            self.amps
                .iter()
                .zip(&other.amps)
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>(),
        ))
    }

    /// Copy with the global phase fixed so the largest-magnitude amplitude
    /// is real and positive.
    pub fn phase_aligned(&self) -> Self {
        let pivot = self
            .amps
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
            .unwrap_or_else(Complex64::zero);
        if pivot.is_zero() {
            return self.clone();
        }
        self.scaled(pivot.conj() / pivot.norm())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amps.len(),
                found: other.amps.len(),
            });
        }
        Ok(())
    }
}

/// Annihilation, creation and number operators on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonicAlphabet {
    pub a: ComplexMatrix,
    pub a_dag: ComplexMatrix,
    pub n_op: ComplexMatrix,
}

pub fn bosonic_alphabet(trunc: Truncation) -> BosonicAlphabet {
    let n = trunc.n_max();
    // a|k⟩ = √k |k-1⟩
    let a = ComplexMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            Complex64::new(sqrt(j as f64), 0.0)
        } else {
            Complex64::zero()
        }
    });
    let a_dag = a.adjoint();
    let n_op = a_dag.matmul(&a).expect("square operands");
    BosonicAlphabet { a, a_dag, n_op }
}

/// 2×2 atomic operators in the (excited, ground) basis.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_rows(2, 2, &[ONE, ZERO, ZERO, -ONE])
    }

    /// Raising: ground → excited.
    pub fn sigma_plus() -> ComplexMatrix {
        ComplexMatrix::from_rows(2, 2, &[ZERO, ONE, ZERO, ZERO])
    }

    pub fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_rows(2, 2, &[ZERO, ZERO, ONE, ZERO])
    }

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }
}

/// `atomic ⊗ vibrational`, atomic index major to match [`StateVector`].
pub fn qubit_kron(atomic: &ComplexMatrix, vibrational: &ComplexMatrix) -> Result<ComplexMatrix> {
    if atomic.rows() != 2 || atomic.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: atomic.rows().max(atomic.cols()),
        });
    }
    if !vibrational.is_square() {
        return Err(Error::DimensionMismatch {
            expected: vibrational.rows(),
            found: vibrational.cols(),
        });
    }
    Ok(atomic.kron(vibrational))
}

/// `⟨x|y⟩`, conjugating `x`.
pub fn inner_product(x: &StateVector, y: &StateVector) -> Result<Complex64> {
    x.check_dim(y)?;
    Ok(x.amps.iter().zip(&y.amps).map(|(a, b)| a.conj() * b).sum())
}

/// `⟨x|op|x⟩`.
pub fn expectation(op: &ComplexMatrix, x: &StateVector) -> Result<Complex64> {
    if op.rows() != x.amps.len() {
        return Err(Error::DimensionMismatch {
            expected: op.rows(),
            found: x.amps.len(),
        });
    }
    let y = op.mul_vec(&x.amps)?;
    Ok(x.amps.iter().zip(&y).map(|(a, b)| a.conj() * b).sum())
}

/// Imaginary parts above this are treated as a non-Hermitian operator.
pub const HERMITIAN_IMAG_TOL: f64 = 1e-12;

/// Real expectation value together with the imaginary rounding residue that
/// was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealExpectation {
    pub value: f64,
    pub discarded_imag: f64,
}

/// Expectation of an operator assumed Hermitian.
pub fn hermitian_expectation(op: &ComplexMatrix, x: &StateVector) -> Result<RealExpectation> {
    let z = expectation(op, x)?;
    if z.im.abs() > HERMITIAN_IMAG_TOL {
        return Err(Error::NonHermitianExpectation(z.im));
    }
    Ok(RealExpectation {
        value: z.re,
        discarded_imag: z.im,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn truncation_minimum() {
        assert!(Truncation::new(1).is_err());
        assert_eq!(Truncation::new(2).unwrap().dim(), 4);
        assert_eq!(Truncation::default().n_max(), 64);
    }

    #[test]
    fn alphabet_n2() {
        let b = bosonic_alphabet(Truncation::new(2).unwrap());
        let expected =
            ComplexMatrix::from_rows(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(b.a, expected);
    }

    #[test]
    fn number_operator_is_diagonal() {
        let b = bosonic_alphabet(Truncation::new(4).unwrap());
        let diag = ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 2.0, 3.0]);
        assert!(b.n_op.max_abs_diff(&diag).unwrap() < 1e-15);
        assert_eq!(b.a_dag, b.a.adjoint());
    }

    #[test]
    fn commutator_truncation_artifact() {
        let n = 16;
        let b = bosonic_alphabet(Truncation::new(n).unwrap());
        let comm = b.a.matmul(&b.a_dag).unwrap().sub(&b.n_op).unwrap();
        let id = ComplexMatrix::identity(n - 1);
        assert!(comm.top_left(n - 1).max_abs_diff(&id).unwrap() < 1e-13);
        assert!((comm[(n - 1, n - 1)] - c(1.0 - n as f64, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn kron_number_operator_on_ground_level() {
        let t = Truncation::new(8).unwrap();
        let b = bosonic_alphabet(t);
        let op = qubit_kron(&pauli::identity(), &b.n_op).unwrap();
        let v = StateVector::basis(t, Level::Ground, 3).unwrap();
        let out = op.mul_vec(v.amplitudes()).unwrap();
        let expected = v.scaled(c(3.0, 0.0));
        assert!(
            StateVector::from_amplitudes(t, out)
                .unwrap()
                .distance(&expected)
                .unwrap()
                < 1e-14
        );
    }

    #[test]
    fn sigma_z_sign_convention() {
        let t = Truncation::new(5).unwrap();
        let sz = qubit_kron(&pauli::sigma_z(), &ComplexMatrix::identity(5)).unwrap();
        for n in 0..5 {
            let e = StateVector::basis(t, Level::Excited, n).unwrap();
            let g = StateVector::basis(t, Level::Ground, n).unwrap();
            assert_eq!(expectation(&sz, &e).unwrap(), c(1.0, 0.0));
            assert_eq!(expectation(&sz, &g).unwrap(), c(-1.0, 0.0));
        }
    }

    #[test]
    fn sigma_plus_moves_ground_block_up() {
        let t = Truncation::new(32).unwrap();
        let alpha = c(0.0, 0.5);
        let d = displacement_matrix(alpha, t, DisplacementMethod::Laguerre).unwrap();
        let op = qubit_kron(&pauli::sigma_plus(), &d).unwrap();

        let coh = coherent_state(c(0.0, 0.3), t);
        let zeros = vec![Complex64::zero(); 32];
        let ground = StateVector::from_spinor(t, &zeros, &coh).unwrap();
        let out = op.mul_vec(ground.amplitudes()).unwrap();
        let expected_upper = d.mul_vec(&coh).unwrap();
        for n in 0..32 {
            assert!((out[n] - expected_upper[n]).norm() < 1e-15);
            assert!(out[32 + n].is_zero());
        }

        let excited = StateVector::from_spinor(t, &coh, &zeros).unwrap();
        let out = op.mul_vec(excited.amplitudes()).unwrap();
        assert!(out.iter().all(|z| z.is_zero()));
    }

    #[test]
    fn kron_rejects_bad_shapes() {
        let m3 = ComplexMatrix::identity(3);
        assert!(qubit_kron(&m3, &m3).is_err());
        assert!(qubit_kron(&pauli::sigma_z(), &ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn expectations() {
        let t = Truncation::new(32).unwrap();
        let b = bosonic_alphabet(t);
        let coh = coherent_state(c(0.0, -0.75), t);
        let zeros = vec![Complex64::zero(); 32];
        let x = StateVector::from_spinor(t, &zeros, &coh).unwrap();
        assert!((inner_product(&x, &x).unwrap() - c(1.0, 0.0)).norm() < 1e-14);

        let sz = qubit_kron(&pauli::sigma_z(), &ComplexMatrix::identity(32)).unwrap();
        assert!((hermitian_expectation(&sz, &x).unwrap().value + 1.0).abs() < 1e-14);

        let n = qubit_kron(&pauli::identity(), &b.n_op).unwrap();
        let r = hermitian_expectation(&n, &x).unwrap();
        assert!((r.value - 0.5625).abs() < 1e-10);
        assert!(r.discarded_imag.abs() <= HERMITIAN_IMAG_TOL);

        assert!(inner_product(&x, &StateVector::zeros(Truncation::new(4).unwrap())).is_err());
    }

    #[test]
    fn non_hermitian_expectation_is_rejected() {
        let t = Truncation::new(2).unwrap();
        let op = ComplexMatrix::identity(4).scale(c(0.0, 1.0));
        let x = StateVector::basis(t, Level::Excited, 0).unwrap();
        assert!(matches!(
            hermitian_expectation(&op, &x),
            Err(Error::NonHermitianExpectation(_))
        ));
    }

    #[test]
    fn phase_alignment_removes_global_phase() {
        let t = Truncation::new(3).unwrap();
        let v = StateVector::from_amplitudes(
            t,
            vec![
                c(0.1, 0.0),
                c(0.0, 0.9),
                c(0.2, 0.1),
                c(0.0, 0.0),
                c(0.3, 0.0),
                c(0.0, 0.0),
            ],
        )
        .unwrap();
        let rotated = v.scaled(Complex64::from_polar(1.0, 1.234));
        let d = v
            .phase_aligned()
            .distance(&rotated.phase_aligned())
            .unwrap();
        assert!(d < 1e-15);
    }
}
