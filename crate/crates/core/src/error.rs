use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation must keep at least 2 Fock levels, got {0}")]
    TruncationTooSmall(usize),

    #[error(
        "truncation at {n_max} levels loses {tail_weight:e} of the displaced vacuum (threshold {threshold:e})"
    )]
    InsufficientTruncation {
        n_max: usize,
        tail_weight: f64,
        threshold: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Fock index {k} out of range for {n_max} levels")]
    FockIndexOutOfRange { k: usize, n_max: usize },

    #[error("invalid trap parameters: {0}")]
    InvalidParams(&'static str),

    #[error("amplitude ratio d1/d0 must be purely imaginary, real part is {re:e}")]
    RatioNotImaginary { re: f64 },

    #[error("eigen coefficients are invalid: {0}")]
    InvalidCoefficients(&'static str),

    #[error("superposition coefficients must satisfy |c1|^2 + |c2|^2 = 1, got {norm_sq}")]
    InvalidSuperposition { norm_sq: f64 },

    #[error("no real solution: {0}")]
    NoRealSolution(&'static str),

    #[error("pole: {0}")]
    Pole(&'static str),

    #[error("interval constraints only apply to family-A solutions")]
    IntervalsInapplicable,

    #[error("closed form left an imaginary residue of {0:e}")]
    ComplexResidue(f64),

    #[error("invalid preparation: {name} residual is {value:e}")]
    InvalidPreparation { name: &'static str, value: f64 },

    #[error("expectation of a Hermitian operator has imaginary part {0:e}")]
    NonHermitianExpectation(f64),

    #[error("Hermitian eigensolver did not converge")]
    EigensolverFailed,

    #[error("signal has no oscillation")]
    NoOscillation,

    #[error("signal has too few zero crossings ({0}) to extract a frequency")]
    TooFewCrossings(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
}
