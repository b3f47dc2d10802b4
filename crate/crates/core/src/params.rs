//! Parameter sets on which `|ψ₀⁺⟩` and `|ψ₁⁻⟩` are simultaneously exact.
//!
//! Given `(ν, Ω)` there are two closed-form families:
//!
//! * **A**: `η = ±(√3/2ν)√(ν² − Ω²)`, `δ = −νη²/3`, `M = 3/(2η)`, real only
//!   for `|Ω| < ν`.
//! * **B**: `η = ±√(2ν² − Ω²)/ν`, `δ = ν`, `M = −η/2`. Both energies equal
//!   `3ν/2`, so a superposition does not evolve beyond a global phase.
//!
//! Here `m = d₁/d₀ = iM`. Given `(ν, M)` instead, the same solutions appear
//! as the points `P₁±` (family A) and `P₂±` (family B).

use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;

use crate::model::{psi0_residual, psi1_residuals, EigenCoeffs, TrapParams};
use crate::{Error, Result};

/// Strict-inequality margin for the open intervals.
pub const INTERVAL_MARGIN: f64 = 1e-12;
/// Imaginary parts below this are algebraic cancellation and are dropped.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionFamily {
    APlus,
    AMinus,
    BPlus,
    BMinus,
}

impl SolutionFamily {
    pub fn label(self) -> &'static str {
        match self {
            SolutionFamily::APlus => "A+",
            SolutionFamily::AMinus => "A-",
            SolutionFamily::BPlus => "B+",
            SolutionFamily::BMinus => "B-",
        }
    }

    pub fn is_family_a(self) -> bool {
        matches!(self, SolutionFamily::APlus | SolutionFamily::AMinus)
    }

    fn a_with_sign(eta: f64) -> Self {
        if eta > 0.0 {
            SolutionFamily::APlus
        } else {
            SolutionFamily::AMinus
        }
    }

    fn b_with_sign(eta: f64) -> Self {
        if eta > 0.0 {
            SolutionFamily::BPlus
        } else {
            SolutionFamily::BMinus
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energies {
    pub psi0_plus: f64,
    pub psi1_minus: f64,
}

/// A fully determined parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterSolution {
    pub family: SolutionFamily,
    pub trap: TrapParams,
    /// `m = d₁/d₀ = iM`.
    pub m: f64,
    pub degenerate: bool,
    pub energies: Energies,
}

impl ParameterSolution {
    fn new(family: SolutionFamily, trap: TrapParams, m: f64) -> Self {
        ParameterSolution {
            family,
            trap,
            m,
            degenerate: !family.is_family_a(),
            energies: Energies {
                psi0_plus: trap.energy_psi0_plus(),
                psi1_minus: trap.energy_psi1_minus(),
            },
        }
    }

    pub fn ratio(&self) -> Complex64 {
        Complex64::new(0.0, self.m)
    }

    /// `d₀ = 1`, `d₁ = iM`.
    pub fn eigen_coeffs(&self) -> EigenCoeffs {
        EigenCoeffs::from_imaginary_ratio(self.m)
    }
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidParams("nu must be positive"));
    }
    Ok(())
}

/// Family A for given `(ν, Ω)`, returned as `[η > 0, η < 0]`.
pub fn solve_family_a(nu: f64, omega: f64) -> Result<[ParameterSolution; 2]> {
    check_nu(nu)?;
    if omega == 0.0 {
        return Err(Error::InvalidParams("omega must be nonzero"));
    }
    if omega.abs() >= nu {
        return Err(Error::NoRealSolution("family A requires |omega| < nu"));
    }
    // one root keeps dyadic inputs exact, e.g. (1, −0.5) gives η = 0.75
    let magnitude = sqrt(3.0 * (nu * nu - omega * omega)) / (2.0 * nu);
    let branch = |eta: f64| -> Result<ParameterSolution> {
        let delta = -nu * eta * eta / 3.0;
        let trap = TrapParams::new(nu, omega, delta, eta)?;
        Ok(ParameterSolution::new(
            SolutionFamily::a_with_sign(eta),
            trap,
            3.0 / (2.0 * eta),
        ))
    };
    Ok([branch(magnitude)?, branch(-magnitude)?])
}

/// Family B for given `(ν, Ω)`, returned as `[η > 0, η < 0]`. Always
/// degenerate.
pub fn solve_family_b(nu: f64, omega: f64) -> Result<[ParameterSolution; 2]> {
    check_nu(nu)?;
    if omega == 0.0 {
        return Err(Error::InvalidParams("omega must be nonzero"));
    }
    if omega * omega >= 2.0 * nu * nu {
        return Err(Error::NoRealSolution("family B requires omega^2 < 2 nu^2"));
    }
    let magnitude = sqrt(2.0 * nu * nu - omega * omega) / nu;
    let branch = |eta: f64| -> Result<ParameterSolution> {
        let trap = TrapParams::new(nu, omega, nu, eta)?;
        Ok(ParameterSolution::new(
            SolutionFamily::b_with_sign(eta),
            trap,
            -eta / 2.0,
        ))
    };
    Ok([branch(magnitude)?, branch(-magnitude)?])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointLabel {
    P1Plus,
    P1Minus,
    P2Plus,
    P2Minus,
}

impl PointLabel {
    pub fn label(self) -> &'static str {
        match self {
            PointLabel::P1Plus => "P1+",
            PointLabel::P1Minus => "P1-",
            PointLabel::P2Plus => "P2+",
            PointLabel::P2Minus => "P2-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledPoint {
    pub label: PointLabel,
    pub solution: ParameterSolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmittedPoint {
    pub label: PointLabel,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointSet {
    pub points: Vec<LabeledPoint>,
    pub omitted: Vec<OmittedPoint>,
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_RESIDUE_TOL {
        return Err(Error::ComplexResidue(z.im));
    }
    Ok(z.re)
}

/// The intersection points for a given ratio `m = iM`:
///
/// ```text
/// P₁± = (Ω, δ, η) = (±(ν/m)√(m² + 3), 3ν/(4m²), 3i/(2m))
/// P₂± = (Ω, δ, η) = (±√2 ν √(2m² + 1), ν, 2im)
/// ```
///
/// evaluated with principal complex square roots. Branches whose `Ω` would
/// not be a nonzero real are listed in [`PointSet::omitted`].
pub fn parameter_points(nu: f64, m: f64) -> Result<PointSet> {
    check_nu(nu)?;
    if m == 0.0 || !m.is_finite() {
        return Err(Error::InvalidParams("M must be finite and nonzero"));
    }
    let mc = Complex64::new(0.0, m);
    // m² = −M² with +0 imaginary part, keeping the principal root on the +i side
    let m2 = Complex64::new(-m * m, 0.0);
    let mut set = PointSet::default();

    if m * m > 3.0 {
        let root = (m2 + 3.0).sqrt();
        let delta = real_part(m2.inv() * (3.0 * nu / 4.0))?;
        let eta = real_part(Complex64::new(0.0, 3.0) / (mc * 2.0))?;
        for (label, sign) in [(PointLabel::P1Plus, 1.0), (PointLabel::P1Minus, -1.0)] {
            let omega = real_part(root / mc * (sign * nu))?;
            let trap = TrapParams::new(nu, omega, delta, eta)?;
            set.points.push(LabeledPoint {
                label,
                solution: ParameterSolution::new(SolutionFamily::a_with_sign(eta), trap, m),
            });
        }
    } else {
        let reason = "P1 needs M^2 > 3 for a real nonzero omega";
        set.omitted.push(OmittedPoint {
            label: PointLabel::P1Plus,
            reason,
        });
        set.omitted.push(OmittedPoint {
            label: PointLabel::P1Minus,
            reason,
        });
    }

    if m * m < 0.5 {
        let root = (m2 * 4.0 + 2.0).sqrt();
        let eta = real_part(mc * Complex64::new(0.0, 2.0))?;
        for (label, sign) in [(PointLabel::P2Plus, 1.0), (PointLabel::P2Minus, -1.0)] {
            let omega = real_part(root * (sign * nu))?;
            let trap = TrapParams::new(nu, omega, nu, eta)?;
            set.points.push(LabeledPoint {
                label,
                solution: ParameterSolution::new(SolutionFamily::b_with_sign(eta), trap, m),
            });
        }
    } else {
        let reason = "P2 needs M^2 < 1/2 for a real nonzero omega";
        set.omitted.push(OmittedPoint {
            label: PointLabel::P2Plus,
            reason,
        });
        set.omitted.push(OmittedPoint {
            label: PointLabel::P2Minus,
            reason,
        });
    }
    Ok(set)
}

/// Interval verdicts for a family-A solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalReport {
    /// `|Ω| < ν`
    pub omega_below_nu: bool,
    /// `−1/4 < δ/ν < 0`
    pub delta_in_range: bool,
    /// `0 < |η| < √3/2`
    pub eta_in_range: bool,
    /// `|M| > √3`
    pub m_in_range: bool,
    /// `η` and `M` share the sign of the branch.
    pub signs_consistent: bool,
}

impl IntervalReport {
    pub fn all_pass(&self) -> bool {
        self.omega_below_nu
            && self.delta_in_range
            && self.eta_in_range
            && self.m_in_range
            && self.signs_consistent
    }
}

fn strictly_between(x: f64, lo: f64, hi: f64) -> bool {
    x > lo + INTERVAL_MARGIN && x < hi - INTERVAL_MARGIN
}

pub fn validate_intervals(sol: &ParameterSolution) -> Result<IntervalReport> {
    if !sol.family.is_family_a() {
        return Err(Error::IntervalsInapplicable);
    }
    let t = &sol.trap;
    let half_root3 = sqrt(3.0) / 2.0;
    let branch_sign = if sol.family == SolutionFamily::APlus {
        1.0
    } else {
        -1.0
    };
    Ok(IntervalReport {
        omega_below_nu: t.omega().abs() / t.nu() < 1.0 - INTERVAL_MARGIN,
        delta_in_range: strictly_between(t.delta() / t.nu(), -0.25, 0.0),
        eta_in_range: strictly_between(t.eta().abs(), 0.0, half_root3),
        m_in_range: sol.m.abs() > sqrt(3.0) + INTERVAL_MARGIN,
        signs_consistent: t.eta() * branch_sign > 0.0 && sol.m * branch_sign > 0.0,
    })
}

/// Point on the curve where `|ψ₁⁻⟩` is exact for a fixed ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub omega: f64,
    pub eta: f64,
    pub delta: f64,
}

/// `η = im(1 + Ω²/2ν²)/(m² + 1)` and `δ = ν(1 − Ω²/ν² − η² − iη/m)` for
/// each requested `Ω`, with `m = iM`.
pub fn psi1_curve(nu: f64, m: f64, omega_samples: &[f64]) -> Result<Vec<CurveSample>> {
    check_nu(nu)?;
    if m == 0.0 || !m.is_finite() {
        return Err(Error::InvalidParams("M must be finite and nonzero"));
    }
    let mc = Complex64::new(0.0, m);
    let denom = mc * mc + 1.0;
    if denom.norm() <= 1e-12 {
        return Err(Error::Pole("m^2 + 1 = 0 (M^2 = 1)"));
    }
    let i = Complex64::i();
    omega_samples
        .iter()
        .map(|&omega| {
            let r2 = omega * omega / (nu * nu);
            let eta = i * mc * (1.0 + r2 / 2.0) / denom;
            let delta = (Complex64::new(1.0 - r2, 0.0) - eta * eta - i * eta / mc) * nu;
            Ok(CurveSample {
                omega,
                eta: real_part(eta)?,
                delta: real_part(delta)?,
            })
        })
        .collect()
}

/// Evenly spaced samples `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linspace {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Linspace {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidGrid("at least 2 samples per axis"));
        }
        if !(start.is_finite() && end.is_finite()) {
            return Err(Error::InvalidGrid("range must be finite"));
        }
        Ok(Linspace { start, end, count })
    }

    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.count {
            return self.end;
        }
        self.start + (self.end - self.start) * k as f64 / (self.count - 1) as f64
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |k| self.value(k))
    }
}

/// Grid point on the surface where `|ψ₀⁺⟩` is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub omega: f64,
    pub eta: f64,
    pub delta: f64,
    /// Condition residual at the sample, zero up to rounding.
    pub residual: f64,
}

/// `δ = ν(Ω²/ν² + η² − 1)` over an `(Ω, η)` grid, `Ω` major.
pub fn psi0_surface(nu: f64, omega: Linspace, eta: Linspace) -> Result<Vec<SurfaceSample>> {
    check_nu(nu)?;
    let mut out = Vec::with_capacity(omega.count * eta.count);
    for w in omega.values() {
        for e in eta.values() {
            let delta = nu * (w * w / (nu * nu) + e * e - 1.0);
            out.push(SurfaceSample {
                omega: w,
                eta: e,
                delta,
                residual: psi0_residual(nu, w, delta, e),
            });
        }
    }
    Ok(out)
}

/// Largest condition residual of a solution over both eigenstates.
pub fn max_condition_residual(sol: &ParameterSolution) -> f64 {
    let t = &sol.trap;
    let r0 = psi0_residual(t.nu(), t.omega(), t.delta(), t.eta()).abs();
    psi1_residuals(t.nu(), t.omega(), t.delta(), t.eta(), sol.ratio())
        .iter()
        .map(|r| r.norm())
        .fold(r0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_condition_psi0, check_conditions_psi1};

    const HALF_ROOT3: f64 = 0.8660254037844386;
    const ROOT3: f64 = 1.7320508075688772;

    #[test]
    fn family_a_reproduces_reference_branch() {
        let [plus, minus] = solve_family_a(1.0, -0.5).unwrap();
        assert_eq!(minus.family, SolutionFamily::AMinus);
        assert!((minus.trap.eta() + 0.75).abs() < 1e-12);
        assert!((minus.trap.delta() + 0.1875).abs() < 1e-12);
        assert!((minus.m + 2.0).abs() < 1e-12);
        assert!((plus.trap.eta() - 0.75).abs() < 1e-12);
        assert!((plus.m - 2.0).abs() < 1e-12);
        assert!(!plus.degenerate && !minus.degenerate);
    }

    #[test]
    fn family_a_low_intensity_limit() {
        let [plus, minus] = solve_family_a(1.0, 1e-9).unwrap();
        assert!((plus.trap.eta() - HALF_ROOT3).abs() < 1e-9);
        assert!((minus.trap.eta() + HALF_ROOT3).abs() < 1e-9);
        assert!((plus.trap.delta() + 0.25).abs() < 1e-9);
        assert!((plus.m - ROOT3).abs() < 1e-9);
        assert!((minus.m + ROOT3).abs() < 1e-9);
    }

    #[test]
    fn family_a_boundary_rejected() {
        assert!(matches!(
            solve_family_a(1.0, 1.0),
            Err(Error::NoRealSolution(_))
        ));
        assert!(solve_family_a(1.0, -1.5).is_err());
        assert!(solve_family_a(-1.0, 0.5).is_err());
    }

    #[test]
    fn family_b_values() {
        let [plus, minus] = solve_family_b(1.0, -0.5).unwrap();
        assert!((plus.trap.eta() - 1.3228756555322954).abs() < 1e-15);
        assert!((plus.m + 0.6614378277661477).abs() < 1e-15);
        assert!((minus.m - 0.6614378277661477).abs() < 1e-15);
        assert_eq!(plus.trap.delta(), 1.0);
        for s in [plus, minus] {
            assert!(s.degenerate);
            assert_eq!(s.energies.psi0_plus, 1.5);
            assert_eq!(s.energies.psi1_minus, 1.5);
            assert!(max_condition_residual(&s) < 1e-12);
        }

        let [p, m] = solve_family_b(1.0, 1.0).unwrap();
        assert_eq!((p.trap.eta(), p.m), (1.0, -0.5));
        assert_eq!((m.trap.eta(), m.m), (-1.0, 0.5));

        assert!(solve_family_b(1.0, 2.0).is_err());
        assert!(solve_family_b(1.0, 2f64.sqrt()).is_err());
    }

    #[test]
    fn points_at_ratio_minus_two() {
        let set = parameter_points(1.0, -2.0).unwrap();
        assert_eq!(set.points.len(), 2);
        assert_eq!(set.omitted.len(), 2);
        let p1p = set
            .points
            .iter()
            .find(|p| p.label == PointLabel::P1Plus)
            .unwrap();
        let p1m = set
            .points
            .iter()
            .find(|p| p.label == PointLabel::P1Minus)
            .unwrap();
        assert!((p1p.solution.trap.omega() + 0.5).abs() < 1e-12);
        assert!((p1m.solution.trap.omega() - 0.5).abs() < 1e-12);
        for p in [p1p, p1m] {
            assert!((p.solution.trap.delta() + 0.1875).abs() < 1e-12);
            assert!((p.solution.trap.eta() + 0.75).abs() < 1e-12);
            assert_eq!(p.solution.family, SolutionFamily::AMinus);
        }
    }

    #[test]
    fn points_at_degenerate_ratio() {
        let set = parameter_points(1.0, 0.5).unwrap();
        assert_eq!(set.points.len(), 2);
        for p in &set.points {
            let t = p.solution.trap;
            assert!((t.omega().abs() - 1.0).abs() < 1e-12);
            assert_eq!(t.delta(), 1.0);
            assert!((t.eta() + 1.0).abs() < 1e-15);
            assert!(p.solution.degenerate);
            assert!(check_condition_psi0(&t).satisfied);
        }
    }

    #[test]
    fn points_outside_both_domains() {
        let set = parameter_points(1.0, 1.0).unwrap();
        assert!(set.points.is_empty());
        assert_eq!(set.omitted.len(), 4);
    }

    #[test]
    fn interval_examples() {
        let [_, reference] = solve_family_a(1.0, -0.5).unwrap();
        let r = validate_intervals(&reference).unwrap();
        assert!(r.all_pass());

        for s in solve_family_a(1.0, 0.999).unwrap() {
            assert!((s.trap.eta().abs() - 0.03872).abs() < 1e-4);
            assert!((s.trap.delta() + 0.0005).abs() < 1e-5);
            assert!((s.m.abs() - 38.73).abs() < 0.01);
            assert!(validate_intervals(&s).unwrap().all_pass());
        }

        let mut bad = reference;
        bad.trap = reference.trap.with_delta(-0.3).unwrap();
        let r = validate_intervals(&bad).unwrap();
        assert!(!r.delta_in_range);
        assert!(!r.all_pass());

        let mut flipped = reference;
        flipped.m = 2.0;
        assert!(!validate_intervals(&flipped).unwrap().signs_consistent);

        let [b, _] = solve_family_b(1.0, -0.5).unwrap();
        assert_eq!(validate_intervals(&b), Err(Error::IntervalsInapplicable));
    }

    #[test]
    fn curve_examples() {
        let s = psi1_curve(1.0, -2.0, &[-0.5, 0.0]).unwrap();
        assert!((s[0].eta + 0.75).abs() < 1e-15);
        assert!((s[0].delta + 0.1875).abs() < 1e-15);
        assert!((s[1].eta + 2.0 / 3.0).abs() < 1e-15);
        assert!((s[1].delta - 2.0 / 9.0).abs() < 1e-15);
        assert!(matches!(psi1_curve(1.0, 1.0, &[0.1]), Err(Error::Pole(_))));
        assert!(matches!(psi1_curve(1.0, -1.0, &[0.1]), Err(Error::Pole(_))));
    }

    #[test]
    fn surface_examples() {
        let omega = Linspace::new(-1.0, 1.0, 3).unwrap();
        let eta = Linspace::new(0.0, 1.0, 2).unwrap();
        let s = psi0_surface(1.0, omega, eta).unwrap();
        assert_eq!(s.len(), 6);
        // (Ω = 0, η = 1) and (Ω = 1, η = 0)
        assert_eq!(s[3].delta, 0.0);
        assert_eq!(s[4].delta, 0.0);
        let one = psi0_surface(
            1.0,
            Linspace::new(-0.5, 0.0, 2).unwrap(),
            Linspace::new(-0.75, 0.0, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(one[0].delta, -0.1875);
        assert!(Linspace::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn reference_solution_satisfies_model_conditions() {
        let [_, s] = solve_family_a(1.0, -0.5).unwrap();
        assert!(check_condition_psi0(&s.trap).max_residual() < 1e-12);
        assert!(
            check_conditions_psi1(&s.trap, s.ratio())
                .unwrap()
                .max_residual()
                < 1e-12
        );
    }
}
