//! Exact trapping eigenstates and two-eigenstate dynamics of a single
//! harmonically trapped ion driven by a laser.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = ν n + (δ/2) σz + Ω [σ+ D(iη) + σ- D†(iη)],      D(iη) = exp(iη(a + a†))
//! ```
//!
//! on the product of a two-level atom and a harmonic oscillator truncated to
//! `n_max` Fock levels. The crate is `no_std` and needs only `alloc`.
//!
//! Modules, bottom-up:
//!
//! * [`fockspace`]: dense complex matrices, bosonic operators, displacement
//!   operators (Laguerre closed form and spectral exponentiation), coherent
//!   and displaced number states.
//! * [`model`]: the Hamiltonian, the two closed-form eigenpair families and
//!   their validity conditions.
//! * [`params`]: closed-form parameter families on which both eigenpairs
//!   are valid at once, interval checks and curve/surface sampling.
//! * [`dynamics`]: the two-state superposition, its analytic and numeric
//!   evolution, atomic inversion and mean phonon number.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod dynamics;
mod error;
pub mod fockspace;
pub mod linalg;
pub mod model;
pub mod params;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use dynamics::{PreparedSystem, SuperpositionCoeffs, TimeSeries};
pub use fockspace::{ComplexMatrix, StateVector, Truncation};
pub use model::{EigenCoeffs, EigenpairCandidate, Family, TrapParams};
pub use params::{ParameterSolution, SolutionFamily};

/// Default number of Fock levels retained.
pub const DEFAULT_N_MAX: usize = 64;
