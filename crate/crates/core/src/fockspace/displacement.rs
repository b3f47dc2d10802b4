//! Glauber displacement `D(α) = exp(α a† − α* a)` on a truncated Fock space.
//!
//! The Laguerre path fills each entry with its exact (untruncated) matrix
//! element; the spectral path exponentiates the truncated generator. The
//! two agree wherever the truncation edge is out of reach, see
//! [`protected_block`].

use alloc::vec::Vec;

use libm::{exp, log};
use num_complex::Complex64;
use num_traits::Zero;

use super::{bosonic_alphabet, ComplexMatrix, Truncation};
use crate::linalg::HermitianEigen;
use crate::special::{laguerre, poisson_upper_tail, LogFactorials};
use crate::{Error, Result};

/// Largest probability the displaced vacuum may lose past the truncation.
pub const DEFAULT_MAX_TAIL_WEIGHT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DisplacementMethod {
    /// Eigendecomposition of the truncated Hermitian generator.
    Spectral,
    /// Closed-form matrix elements via generalized Laguerre polynomials.
    #[default]
    Laguerre,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementOptions {
    pub method: DisplacementMethod,
    pub max_tail_weight: f64,
}

impl Default for DisplacementOptions {
    fn default() -> Self {
        DisplacementOptions {
            method: DisplacementMethod::Laguerre,
            max_tail_weight: DEFAULT_MAX_TAIL_WEIGHT,
        }
    }
}

pub fn displacement_matrix(
    alpha: Complex64,
    trunc: Truncation,
    method: DisplacementMethod,
) -> Result<ComplexMatrix> {
    displacement_matrix_with(
        alpha,
        trunc,
        DisplacementOptions {
            method,
            ..DisplacementOptions::default()
        },
    )
}

pub fn displacement_matrix_with(
    alpha: Complex64,
    trunc: Truncation,
    opts: DisplacementOptions,
) -> Result<ComplexMatrix> {
    check_tail(alpha, trunc, opts.max_tail_weight)?;
    match opts.method {
        DisplacementMethod::Laguerre => Ok(laguerre_matrix(alpha, trunc)),
        DisplacementMethod::Spectral => spectral_matrix(alpha, trunc),
    }
}

fn check_tail(alpha: Complex64, trunc: Truncation, threshold: f64) -> Result<()> {
    let tail_weight = coherent_tail_weight(alpha, trunc);
    if tail_weight > threshold {
        return Err(Error::InsufficientTruncation {
            n_max: trunc.n_max(),
            tail_weight,
            threshold,
        });
    }
    Ok(())
}

fn laguerre_matrix(alpha: Complex64, trunc: Truncation) -> ComplexMatrix {
    let n = trunc.n_max();
    let lf = LogFactorials::new(n);
    ComplexMatrix::from_fn(n, n, |m, k| element(alpha, m, k, &lf))
}

fn spectral_matrix(alpha: Complex64, trunc: Truncation) -> Result<ComplexMatrix> {
    let b = bosonic_alphabet(trunc);
    // G = α a† − α* a is anti-Hermitian, so K = iG is Hermitian and D = exp(−iK).
    let generator = b.a_dag.scale(alpha).sub(&b.a.scale(alpha.conj()))?;
    let k = generator.scale(Complex64::i());
    let eig = HermitianEigen::new(&k)?;
    Ok(eig.apply_function(|l| Complex64::from_polar(1.0, -l)))
}

/// `⟨m|D(α)|k⟩` from the Laguerre closed form. `lf` must cover `max(m, k)`.
fn element(alpha: Complex64, m: usize, k: usize, lf: &LogFactorials) -> Complex64 {
    let x = alpha.norm_sqr();
    if alpha.is_zero() {
        return if m == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::zero()
        };
    }
    let r = alpha.norm();
    let (lo, hi, base) = if m >= k {
        (k, m, alpha)
    } else {
        (m, k, -alpha.conj())
    };
    let diff = hi - lo;
    let log_mag = diff as f64 * log(r) + 0.5 * (lf.get(lo) - lf.get(hi)) - 0.5 * x;
    let phase = (base / r).powu(diff as u32);
    phase * (exp(log_mag) * laguerre(lo, diff, x))
}

/// `e^{−|α|²/2} αⁿ / √n!` for `n < n_max`, evaluated in log space.
pub fn coherent_state(alpha: Complex64, trunc: Truncation) -> Vec<Complex64> {
    let n = trunc.n_max();
    if alpha.is_zero() {
        let mut v = alloc::vec![Complex64::zero(); n];
        v[0] = Complex64::new(1.0, 0.0);
        return v;
    }
    let lf = LogFactorials::new(n);
    let r = alpha.norm();
    let unit = alpha / r;
    (0..n)
        .map(|k| {
            let mag = exp(k as f64 * log(r) - 0.5 * lf.get(k) - 0.5 * r * r);
            unit.powu(k as u32) * mag
        })
        .collect()
}

/// Probability weight of `|α⟩` on levels `≥ n_max` (a Poisson tail).
pub fn coherent_tail_weight(alpha: Complex64, trunc: Truncation) -> f64 {
    poisson_upper_tail(alpha.norm_sqr(), trunc.n_max())
}

/// `D(α)|k⟩` restricted to the truncation: column `k` of the Laguerre matrix.
pub fn displaced_number_state(
    alpha: Complex64,
    k: usize,
    trunc: Truncation,
) -> Result<Vec<Complex64>> {
    let n = trunc.n_max();
    if k >= n {
        return Err(Error::FockIndexOutOfRange { k, n_max: n });
    }
    check_tail(alpha, trunc, DEFAULT_MAX_TAIL_WEIGHT)?;
    let lf = LogFactorials::new(n);
    Ok((0..n).map(|m| element(alpha, m, k, &lf)).collect())
}

/// Number of lowest Fock levels `j` for which `D(α)|j⟩` leaks at most `tol`
/// probability past the truncation, capped at three quarters of `n_max`.
///
/// On this block the truncated products `D(α)D(−α)` and `D(α)†D(α)` differ
/// from the identity by at most `tol` entrywise (Cauchy–Schwarz on the
/// missing intermediate levels).
pub fn protected_block(alpha: Complex64, trunc: Truncation, tol: f64) -> usize {
    let n = trunc.n_max();
    let cap = trunc.protected_cap();
    let horizon = 5 * n + 64;
    let lf = LogFactorials::new(horizon + 1);
    let mut size = 0;
    for j in 0..cap {
        let mut leak = 0.0;
        let mut last = f64::INFINITY;
        for row in n..=horizon {
            let w = element(alpha, row, j, &lf).norm_sqr();
            leak += w;
            if w < 1e-40 && w <= last {
                break;
            }
            last = w;
        }
        if leak > tol {
            break;
        }
        size = j + 1;
    }
    size
}
