//! Compton-scale (quark) and Planck-scale consequences of the model.
//!
//! Everything here is CGS except [`qcd_potential`] and [`quark_coupling`],
//! which work in natural units (`hbar = c = 1`). No conversion between the
//! two happens implicitly.

use serde::Serialize;

use crate::constants::ConstantsRegistry;
use crate::dimension::{rational, Dimension, Rational};
use crate::error::{Error, Result};
use crate::evolution::{present_epoch, CosmoParams};
use crate::quantity::{decades_deviation, Quantity};

/// Inverse fine-structure constant used for the quark-scale coupling.
pub const INVERSE_FINE_STRUCTURE: f64 = 137.036;

/// Coefficient of `m_e` in the quark mass estimate.
pub const QUARK_MASS_COEFFICIENT: f64 = 2e3;

/// One erg in GeV.
pub const GEV_PER_ERG: f64 = 1.0 / 1.602176634e-3;

fn positive_mass(m: &Quantity) -> Result<()> {
    m.expect_dim(Dimension::MASS, "mass")?;
    if m.value() <= 0.0 {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    Ok(())
}

/// `hbar / (m c)`.
pub fn compton_length(reg: &ConstantsRegistry, m: &Quantity) -> Result<Quantity> {
    positive_mass(m)?;
    reg.hbar().div(&m.mul(&reg.c())?)
}

/// `hbar / (m c^2)`.
pub fn compton_time(reg: &ConstantsRegistry, m: &Quantity) -> Result<Quantity> {
    compton_length(reg, m)?.div(&reg.c())
}

/// `G m / c^2`, without the textbook factor 2.
pub fn schwarzschild_radius(reg: &ConstantsRegistry, m: &Quantity) -> Result<Quantity> {
    positive_mass(m)?;
    reg.g().mul(m)?.div(&reg.c().mul(&reg.c())?)
}

/// Charge, in units of `e`, carried in `d` spatial dimensions: `d/3`.
pub fn fractional_charge(d: i64) -> Result<Rational> {
    match d {
        1..=3 => Ok(rational(d, 3)),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialTerms {
    /// `-alpha / r`
    pub coulombic: f64,
    /// `beta * r`
    pub linear: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Energy scale at the Compton radius `r = 1/m`: `max(alpha m, beta / m)`.
    pub compton_scale: f64,
}

impl PotentialTerms {
    pub fn total(&self) -> f64 {
        self.coulombic + self.linear
    }

    /// Radius where the two terms cancel, `sqrt(alpha / beta)`.
    pub fn zero_crossing(&self) -> Option<f64> {
        (self.alpha > 0.0 && self.beta > 0.0).then(|| (self.alpha / self.beta).sqrt())
    }
}

/// Two-term confining potential `-alpha/r + beta r` in natural units.
pub fn qcd_potential(r: f64, m: f64, alpha: f64, beta: f64) -> Result<PotentialTerms> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    Ok(PotentialTerms {
        coulombic: -alpha / r,
        linear: beta * r,
        alpha,
        beta,
        compton_scale: (alpha * m).max(beta / m),
    })
}

/// Default couplings `alpha = 1`, `beta = m^2` for a particle of mass `m`.
pub fn qcd_default_couplings(m: f64) -> (f64, f64) {
    (1.0, m * m)
}

/// Electromagnetic coupling reduced tenfold at the quark scale.
pub fn quark_coupling() -> f64 {
    (1.0 / INVERSE_FINE_STRUCTURE) / 10.0
}

/// `2e3 m_e`.
pub fn quark_mass_estimate(reg: &ConstantsRegistry) -> Quantity {
    reg.m_e()
        .scale(QUARK_MASS_COEFFICIENT)
        .expect("electron mass is finite")
}

pub fn rest_energy(reg: &ConstantsRegistry, m: &Quantity) -> Result<Quantity> {
    m.mul(&reg.c().mul(&reg.c())?)
}

/// `hbar^2 / (2 m^3 G)`.
pub fn self_gravity_length(reg: &ConstantsRegistry, m: &Quantity) -> Result<Quantity> {
    positive_mass(m)?;
    let hbar2 = reg.hbar().pow(rational(2, 1))?;
    hbar2.div(&m.pow(rational(3, 1))?.mul(&reg.g())?.scale(2.0)?)
}

/// `2 m^5 G^2 / hbar^2`.
pub fn self_gravity_energy(reg: &ConstantsRegistry, m: &Quantity) -> Result<Quantity> {
    positive_mass(m)?;
    let num = m
        .pow(rational(5, 1))?
        .mul(&reg.g().pow(rational(2, 1))?)?
        .scale(2.0)?;
    num.div(&reg.hbar().pow(rational(2, 1))?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanckScales {
    pub m_p: Quantity,
    pub l_p: Quantity,
    pub tau_p: Quantity,
    pub rho_p: Quantity,
}

impl PlanckScales {
    pub fn from_registry(reg: &ConstantsRegistry) -> Result<Self> {
        let m_p = reg.hbar().mul(&reg.c())?.div(&reg.g())?.sqrt()?;
        let l_p = compton_length(reg, &m_p)?;
        let tau_p = l_p.div(&reg.c())?;
        let rho_p = m_p.div(&l_p.pow(rational(3, 1))?)?;
        Ok(Self {
            m_p,
            l_p,
            tau_p,
            rho_p,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureVerdict {
    /// `N G m^2 / R`
    pub gravitational: Quantity,
    /// `m c^2`
    pub rest_energy: Quantity,
    pub deviation_decades: f64,
}

/// Compares the gravitational energy `N G m^2 / R` of a pion against its
/// rest energy, for an explicit particle count and radius.
pub fn gravitational_closure(
    reg: &ConstantsRegistry,
    n: f64,
    radius: &Quantity,
) -> Result<ClosureVerdict> {
    radius.expect_dim(Dimension::LENGTH, "radius")?;
    let m = reg.m_pi();
    let gravitational = reg.g().mul(&m.mul(&m)?)?.scale(n)?.div(radius)?;
    let rest = rest_energy(reg, &m)?;
    Ok(ClosureVerdict {
        gravitational,
        rest_energy: rest,
        deviation_decades: decades_deviation(&gravitational, &rest)?,
    })
}

/// Closure at the present epoch, where `R = G N m / c^2` makes it an identity.
pub fn pion_gravitational_closure(reg: &ConstantsRegistry) -> Result<ClosureVerdict> {
    let epoch = present_epoch(&CosmoParams::from_registry(reg))?;
    gravitational_closure(reg, epoch.n, &epoch.radius)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanckBookkeeping {
    /// `rho_P l^3` with `l` the pion Compton length.
    pub mass_in_compton_volume: Quantity,
    /// Planck masses in that volume.
    pub n_prime: f64,
    /// Planck times per pion Compton time.
    pub chronon_ratio: f64,
    pub n_recovered: f64,
}

pub fn planck_bookkeeping(reg: &ConstantsRegistry) -> Result<PlanckBookkeeping> {
    let planck = PlanckScales::from_registry(reg)?;
    let l = compton_length(reg, &reg.m_pi())?;
    let mass = planck.rho_p.mul(&l.pow(rational(3, 1))?)?;
    let n_prime = mass.div(&planck.m_p)?;
    let chronon = compton_time(reg, &reg.m_pi())?.div(&planck.tau_p)?;
    debug_assert!(n_prime.is_dimensionless() && chronon.is_dimensionless());
    Ok(PlanckBookkeeping {
        mass_in_compton_volume: mass,
        n_prime: n_prime.value(),
        chronon_ratio: chronon.value(),
        n_recovered: n_prime.value() * chronon.value(),
    })
}

/// A labelled value for the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub value: f64,
    pub unit: String,
    pub anchor: String,
}

impl ReportRow {
    pub fn new(name: &str, q: Quantity, anchor: &str) -> Self {
        Self {
            name: name.to_string(),
            value: q.value(),
            unit: q.dim().unit_string(),
            anchor: anchor.to_string(),
        }
    }

    pub fn scalar(name: &str, value: f64, anchor: &str) -> Self {
        Self {
            name: name.to_string(),
            value,
            unit: String::new(),
            anchor: anchor.to_string(),
        }
    }
}

/// Every scale-bridge quantity as labelled report rows.
pub fn report_rows(reg: &ConstantsRegistry) -> Result<Vec<ReportRow>> {
    let m_pi = reg.m_pi();
    let planck = PlanckScales::from_registry(reg)?;
    let books = planck_bookkeeping(reg)?;
    let closure = pion_gravitational_closure(reg)?;
    let quark_mass = quark_mass_estimate(reg);
    let (alpha, beta) = qcd_default_couplings(1.0);
    let potential = qcd_potential(1.0, 1.0, alpha, beta)?;

    let mut rows = vec![
        ReportRow::new(
            "pion Compton length",
            compton_length(reg, &m_pi)?,
            "Compton scale",
        ),
        ReportRow::new(
            "pion Compton time",
            compton_time(reg, &m_pi)?,
            "Compton scale",
        ),
        ReportRow::new(
            "pion Schwarzschild radius",
            schwarzschild_radius(reg, &m_pi)?,
            "Compton scale",
        ),
    ];
    for d in 1..=3 {
        let q = fractional_charge(d)?;
        rows.push(ReportRow::scalar(
            &format!("charge in {d}D [e]"),
            *q.numer() as f64 / *q.denom() as f64,
            "quark charges",
        ));
    }
    rows.extend([
        ReportRow::scalar("quark-scale coupling", quark_coupling(), "quark coupling"),
        ReportRow::new("quark mass estimate", quark_mass, "quark mass"),
        ReportRow::scalar(
            "quark mass estimate [GeV]",
            rest_energy(reg, &quark_mass)?.value() * GEV_PER_ERG,
            "quark mass",
        ),
        ReportRow::scalar(
            "potential -alpha/r at r = 1/m",
            potential.coulombic,
            "confining potential",
        ),
        ReportRow::scalar(
            "potential beta*r at r = 1/m",
            potential.linear,
            "confining potential",
        ),
        ReportRow::new("Planck mass", planck.m_p, "Planck scale"),
        ReportRow::new("Planck length", planck.l_p, "Planck scale"),
        ReportRow::new("Planck time", planck.tau_p, "Planck scale"),
        ReportRow::new("Planck density", planck.rho_p, "Planck scale"),
        ReportRow::new(
            "Planck Schwarzschild radius",
            schwarzschild_radius(reg, &planck.m_p)?,
            "Planck identity",
        ),
        ReportRow::new(
            "Planck Compton length",
            compton_length(reg, &planck.m_p)?,
            "Planck identity",
        ),
        ReportRow::new(
            "Planck self-gravity energy",
            self_gravity_energy(reg, &planck.m_p)?,
            "self-gravitating particle",
        ),
        ReportRow::new(
            "Planck rest energy",
            rest_energy(reg, &planck.m_p)?,
            "self-gravitating particle",
        ),
        ReportRow::new(
            "Planck self-gravity length",
            self_gravity_length(reg, &planck.m_p)?,
            "self-gravitating particle",
        ),
        ReportRow::new(
            "pion self-gravity energy",
            self_gravity_energy(reg, &m_pi)?,
            "self-gravitating particle",
        ),
        ReportRow::new(
            "pion self-gravity length",
            self_gravity_length(reg, &m_pi)?,
            "self-gravitating particle",
        ),
        ReportRow::new(
            "N G m^2 / R",
            closure.gravitational,
            "gravitational closure",
        ),
        ReportRow::scalar(
            "closure deviation [decades]",
            closure.deviation_decades,
            "gravitational closure",
        ),
        ReportRow::new(
            "rho_P l^3",
            books.mass_in_compton_volume,
            "Planck bookkeeping",
        ),
        ReportRow::scalar(
            "N' (Planck masses in l^3)",
            books.n_prime,
            "Planck bookkeeping",
        ),
        ReportRow::scalar("tau / tau_P", books.chronon_ratio, "Planck bookkeeping"),
        ReportRow::scalar("N recovered", books.n_recovered, "Planck bookkeeping"),
    ]);
    Ok(rows)
}
