//! Mean energy of a discrete oscillator ladder `E_n = n g(nu)` and the Wien
//! scaling test that singles out `g ∝ nu`.

use serde::Serialize;

use crate::constants::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::scales::ReportRow;

/// Boltzmann constant in erg/K, used when no registry is supplied.
pub const K_B: f64 = 1.380649e-16;

/// Planck constant in erg*s.
pub const H: f64 = 6.62607015e-27;

/// Above this `g/kT` the denominator is replaced by `e^x`.
pub const UNDERFLOW_X: f64 = 700.0;

/// Below this `g/kT` the series `kT (1 - x/2 + x^2/12)` is used.
pub const SERIES_X: f64 = 1e-8;

/// Residual above which a form is declared incompatible with Wien scaling.
pub const WIEN_TOLERANCE: f64 = 1e-9;

/// Scale factors probed by [`classify_law`].
pub const WIEN_LAMBDAS: [f64; 3] = [0.5, 2.0, 10.0];

/// Smallest `p = 2` residual at `lambda = 2` over [`DEFAULT_SAMPLE_GRID`] is
/// about 0.31; this is the separation the tests rely on.
pub const P2_VIOLATION_THRESHOLD: f64 = 0.10;

/// `(nu [Hz], T [K])` pairs spanning `x = h nu / kT` from about 1 to 5.
pub const DEFAULT_SAMPLE_GRID: [(f64, f64); 6] = [
    (1e14, 5000.0),
    (3e14, 5000.0),
    (5e13, 1000.0),
    (1e15, 1e4),
    (2e13, 300.0),
    (6e14, 6000.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SpectrumForm {
    /// `g = a nu`
    Linear(f64),
    /// `g = a nu^p`
    PowerLaw { a: f64, p: f64 },
}

impl SpectrumForm {
    /// Power law whose quantum matches `h nu` at `nu = 1e14` Hz.
    pub fn matched_power_law(p: f64) -> Self {
        SpectrumForm::PowerLaw {
            a: H * 1e14f64.powf(1.0 - p),
            p,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            SpectrumForm::Linear(a) => a > 0.0 && a.is_finite(),
            SpectrumForm::PowerLaw { a, p } => {
                a > 0.0 && a.is_finite() && p >= 0.0 && p.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid spectrum form {self:?}")))
        }
    }

    /// Energy quantum `g(nu)` in erg.
    pub fn quantum(&self, nu: f64) -> f64 {
        match *self {
            SpectrumForm::Linear(a) => a * nu,
            SpectrumForm::PowerLaw { a, p } => a * nu.powf(p),
        }
    }

    pub fn exponent(&self) -> f64 {
        match *self {
            SpectrumForm::Linear(_) => 1.0,
            SpectrumForm::PowerLaw { p, .. } => p,
        }
    }
}

/// Evaluation context holding the Boltzmann constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeEnergy {
    pub k_b: f64,
}

impl Default for ModeEnergy {
    fn default() -> Self {
        Self { k_b: K_B }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

impl ModeEnergy {
    pub fn from_registry(reg: &ConstantsRegistry) -> Self {
        Self {
            k_b: reg.k_b().value(),
        }
    }

    /// `x = g(nu) / kT`.
    pub fn ratio(&self, form: &SpectrumForm, nu: f64, t: f64) -> Result<f64> {
        form.validate()?;
        positive("frequency", nu)?;
        positive("temperature", t)?;
        Ok(form.quantum(nu) / (self.k_b * t))
    }

    /// `g / (e^{g/kT} - 1)` in erg.
    pub fn mean_mode_energy(&self, form: &SpectrumForm, nu: f64, t: f64) -> Result<f64> {
        let x = self.ratio(form, nu, t)?;
        let g = form.quantum(nu);
        let kt = self.k_b * t;
        Ok(if x > UNDERFLOW_X {
            g * (-x).exp()
        } else if x < SERIES_X {
            kt * (1.0 - x / 2.0 + x * x / 12.0)
        } else {
            g / x.exp_m1()
        })
    }

    /// Relative failure of `f(lambda nu, lambda T) = lambda f(nu, T)`.
    pub fn wien_scaling_residual(
        &self,
        form: &SpectrumForm,
        nu: f64,
        t: f64,
        lambda: f64,
    ) -> Result<f64> {
        positive("scale factor", lambda)?;
        let base = lambda * self.mean_mode_energy(form, nu, t)?;
        if lambda == 1.0 {
            return Ok(0.0);
        }
        let scaled = self.mean_mode_energy(form, lambda * nu, lambda * t)?;
        Ok((scaled - base).abs() / base)
    }

    pub fn classify_law(&self, form: &SpectrumForm, samples: &[(f64, f64)]) -> Result<LawVerdict> {
        if samples.len() < 3 {
            return Err(Error::InsufficientSamples(samples.len()));
        }
        let mut max_residual = 0.0f64;
        for &(nu, t) in samples {
            for lambda in WIEN_LAMBDAS {
                max_residual = max_residual.max(self.wien_scaling_residual(form, nu, t, lambda)?);
            }
        }
        Ok(LawVerdict {
            wien_compatible: max_residual <= WIEN_TOLERANCE,
            max_residual,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LawVerdict {
    pub wien_compatible: bool,
    pub max_residual: f64,
}

pub fn mean_mode_energy(form: &SpectrumForm, nu: f64, t: f64) -> Result<f64> {
    ModeEnergy::default().mean_mode_energy(form, nu, t)
}

pub fn wien_scaling_residual(form: &SpectrumForm, nu: f64, t: f64, lambda: f64) -> Result<f64> {
    ModeEnergy::default().wien_scaling_residual(form, nu, t, lambda)
}

pub fn classify_law(form: &SpectrumForm, samples: &[(f64, f64)]) -> Result<LawVerdict> {
    ModeEnergy::default().classify_law(form, samples)
}

/// Exponents checked in the report.
pub const REPORT_EXPONENTS: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawRow {
    pub p: f64,
    pub wien_compatible: bool,
    pub max_residual: f64,
}

/// Verdict per exponent on the default sample grid, using `h` and `k_B` from
/// the registry.
pub fn law_rows(reg: &ConstantsRegistry) -> Result<Vec<LawRow>> {
    let ctx = ModeEnergy::from_registry(reg);
    let h = reg.lookup("h")?.value();
    REPORT_EXPONENTS
        .iter()
        .map(|&p| {
            let form = SpectrumForm::PowerLaw {
                a: h * 1e14f64.powf(1.0 - p),
                p,
            };
            let v = ctx.classify_law(&form, &DEFAULT_SAMPLE_GRID)?;
            Ok(LawRow {
                p,
                wien_compatible: v.wien_compatible,
                max_residual: v.max_residual,
            })
        })
        .collect()
}

pub fn report_rows(reg: &ConstantsRegistry) -> Result<Vec<ReportRow>> {
    Ok(law_rows(reg)?
        .into_iter()
        .map(|r| {
            ReportRow::scalar(
                &format!("p = {} wien-compatible: {}", r.p, r.wien_compatible),
                r.max_residual,
                "mode energy",
            )
        })
        .collect())
}
