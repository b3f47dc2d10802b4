//! Run configuration: a flat `key=value` file, overridable by flags.

use std::fmt;
use std::str::FromStr;

use iontrap_core::dynamics::SuperpositionCoeffs;
use iontrap_core::params::{solve_family_a, solve_family_b};
use iontrap_core::{Complex64, EigenCoeffs, TrapParams, Truncation, DEFAULT_N_MAX};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyChoice {
    APlus,
    AMinus,
    BPlus,
    BMinus,
    Explicit,
}

impl FamilyChoice {
    pub fn label(self) -> &'static str {
        match self {
            FamilyChoice::APlus => "A+",
            FamilyChoice::AMinus => "A-",
            FamilyChoice::BPlus => "B+",
            FamilyChoice::BMinus => "B-",
            FamilyChoice::Explicit => "explicit",
        }
    }
}

impl fmt::Display for FamilyChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FamilyChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('\u{2212}', "-").as_str() {
            "A+" => Ok(FamilyChoice::APlus),
            "A-" => Ok(FamilyChoice::AMinus),
            "B+" => Ok(FamilyChoice::BPlus),
            "B-" => Ok(FamilyChoice::BMinus),
            "explicit" => Ok(FamilyChoice::Explicit),
            other => Err(format!(
                "unknown family {other:?} (expected A+, A-, B+, B- or explicit)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub nu: f64,
    pub omega: f64,
    pub family: FamilyChoice,
    pub eta: Option<f64>,
    pub delta: Option<f64>,
    pub m: Option<f64>,
    pub d0_re: f64,
    pub d0_im: f64,
    pub d1_re: Option<f64>,
    pub d1_im: Option<f64>,
    pub c1_re: f64,
    pub c1_im: f64,
    pub c2_re: f64,
    pub c2_im: f64,
    pub n_max: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
    pub output_path: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            nu: 1.0,
            omega: -0.5,
            family: FamilyChoice::AMinus,
            eta: None,
            delta: None,
            m: None,
            d0_re: 1.0,
            d0_im: 0.0,
            d1_re: None,
            d1_im: None,
            c1_re: std::f64::consts::FRAC_1_SQRT_2,
            c1_im: 0.0,
            c2_re: std::f64::consts::FRAC_1_SQRT_2,
            c2_im: 0.0,
            n_max: DEFAULT_N_MAX,
            t_start: 0.0,
            t_end: 50.0,
            steps: 2001,
            output_path: "timeseries.csv".to_owned(),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value {value:?} for {key}"))
}

impl RunConfig {
    /// Set one field from its textual `key=value` form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "nu" => self.nu = parse_value(key, value)?,
            "omega" => self.omega = parse_value(key, value)?,
            "family" => self.family = value.parse()?,
            "eta" => self.eta = Some(parse_value(key, value)?),
            "delta" => self.delta = Some(parse_value(key, value)?),
            "M" => self.m = Some(parse_value(key, value)?),
            "d0_re" => self.d0_re = parse_value(key, value)?,
            "d0_im" => self.d0_im = parse_value(key, value)?,
            "d1_re" => self.d1_re = Some(parse_value(key, value)?),
            "d1_im" => self.d1_im = Some(parse_value(key, value)?),
            "c1_re" => self.c1_re = parse_value(key, value)?,
            "c1_im" => self.c1_im = parse_value(key, value)?,
            "c2_re" => self.c2_re = parse_value(key, value)?,
            "c2_im" => self.c2_im = parse_value(key, value)?,
            "n_max" => self.n_max = parse_value(key, value)?,
            "t_start" => self.t_start = parse_value(key, value)?,
            "t_end" => self.t_end = parse_value(key, value)?,
            "steps" => self.steps = parse_value(key, value)?,
            "output_path" => self.output_path = value.to_owned(),
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    /// Apply a config file on top of `self`. Blank lines and `#` comments
    /// are skipped.
    pub fn apply_text(&mut self, text: &str) -> CliResult<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Config {
                line: idx + 1,
                message: "expected key=value".to_owned(),
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|message| CliError::Config {
                    line: idx + 1,
                    message,
                })?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    /// Resolve to concrete trap parameters, eigenstate and superposition
    /// coefficients.
    pub fn resolve(&self) -> CliResult<ResolvedRun> {
        let base = match self.family {
            FamilyChoice::Explicit => None,
            FamilyChoice::APlus | FamilyChoice::AMinus => {
                let [plus, minus] = solve_family_a(self.nu, self.omega)?;
                Some(if self.family == FamilyChoice::APlus {
                    plus
                } else {
                    minus
                })
            }
            FamilyChoice::BPlus | FamilyChoice::BMinus => {
                let [plus, minus] = solve_family_b(self.nu, self.omega)?;
                Some(if self.family == FamilyChoice::BPlus {
                    plus
                } else {
                    minus
                })
            }
        };
        let pick = |given: Option<f64>, from_base: Option<f64>, key: &str| {
            given
                .or(from_base)
                .ok_or_else(|| CliError::Usage(format!("family=explicit requires {key}")))
        };
        let eta = pick(self.eta, base.map(|b| b.trap.eta()), "eta")?;
        let delta = pick(self.delta, base.map(|b| b.trap.delta()), "delta")?;
        let m = pick(self.m, base.map(|b| b.m), "M")?;

        let trap = TrapParams::new(self.nu, self.omega, delta, eta)?;
        let d0 = Complex64::new(self.d0_re, self.d0_im);
        let d1 = match (self.d1_re, self.d1_im) {
            (None, None) => Complex64::new(0.0, m) * d0,
            (re, im) => Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0)),
        };
        let coeffs = EigenCoeffs::new(d0, d1)?;
        let sup = SuperpositionCoeffs::new(
            Complex64::new(self.c1_re, self.c1_im),
            Complex64::new(self.c2_re, self.c2_im),
        )?;
        let trunc = Truncation::new(self.n_max)?;
        Ok(ResolvedRun {
            family: self.family,
            trap,
            m,
            coeffs,
            sup,
            trunc,
        })
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# iontrap run configuration")?;
        writeln!(f, "nu={}", self.nu)?;
        writeln!(f, "omega={}", self.omega)?;
        writeln!(f, "family={}", self.family)?;
        for (key, value) in [("eta", self.eta), ("delta", self.delta), ("M", self.m)] {
            match value {
                Some(v) => writeln!(f, "{key}={v}")?,
                None => writeln!(f, "# {key}= (from family)")?,
            }
        }
        writeln!(f, "d0_re={}", self.d0_re)?;
        writeln!(f, "d0_im={}", self.d0_im)?;
        for (key, value) in [("d1_re", self.d1_re), ("d1_im", self.d1_im)] {
            match value {
                Some(v) => writeln!(f, "{key}={v}")?,
                None => writeln!(f, "# {key}= (i*M*d0)")?,
            }
        }
        writeln!(f, "c1_re={}", self.c1_re)?;
        writeln!(f, "c1_im={}", self.c1_im)?;
        writeln!(f, "c2_re={}", self.c2_re)?;
        writeln!(f, "c2_im={}", self.c2_im)?;
        writeln!(f, "n_max={}", self.n_max)?;
        writeln!(f, "t_start={}", self.t_start)?;
        writeln!(f, "t_end={}", self.t_end)?;
        writeln!(f, "steps={}", self.steps)?;
        writeln!(f, "output_path={}", self.output_path)
    }
}

/// A configuration resolved to model inputs.
#[derive(Debug, Clone, Copy)]
pub struct ResolvedRun {
    pub family: FamilyChoice,
    pub trap: TrapParams,
    pub m: f64,
    pub coeffs: EigenCoeffs,
    pub sup: SuperpositionCoeffs,
    pub trunc: Truncation,
}
