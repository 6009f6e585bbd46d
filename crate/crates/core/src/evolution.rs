//! Particle-creation law `dN/dt = sqrt(N)/tau` and the epoch quantities that
//! follow from the particle count.
//!
//! The law is integrated in `u = sqrt(N)`, where it becomes `du/dt = 1/(2 tau)`.
//! That keeps the state near 1e40 instead of 1e80 and makes the right-hand
//! side constant, so fixed-step RK4 reproduces the closed form to rounding.

use std::io::{self, Write};

use serde::Serialize;

use crate::constants::ConstantsRegistry;
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::quantity::Quantity;

/// Which closed form of the creation law to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// Direct integral from `N(0) = 0`: `sqrt(N) = t / (2 tau)`.
    Exact,
    /// The stated result `sqrt(N) = 2 t / tau`, 16x larger in `N`.
    PaperStated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosmoParams {
    mass: Quantity,
    hbar: Quantity,
    c: Quantity,
    g: Quantity,
    tau: Quantity,
    n_target: f64,
    variant: Variant,
}

impl CosmoParams {
    /// Pion mass, `N` from the registry, exact variant.
    pub fn from_registry(reg: &ConstantsRegistry) -> Self {
        let mut p = Self {
            mass: reg.m_pi(),
            hbar: reg.hbar(),
            c: reg.c(),
            g: reg.g(),
            tau: reg.m_pi(),
            n_target: reg.n(),
            variant: Variant::Exact,
        };
        p.tau = p.compton_time().expect("registry constants are positive");
        p
    }

    fn compton_time(&self) -> Result<Quantity> {
        let t = self.hbar.div(&self.mass.mul(&self.c)?.mul(&self.c)?)?;
        t.expect_dim(Dimension::TIME, "Compton time")?;
        Ok(t)
    }

    pub fn with_mass(mut self, mass: Quantity) -> Result<Self> {
        mass.expect_dim(Dimension::MASS, "particle mass")?;
        if mass.value() <= 0.0 {
            return Err(Error::Domain(format!(
                "particle mass must be positive, got {mass}"
            )));
        }
        self.mass = mass;
        self.tau = self.compton_time()?;
        Ok(self)
    }

    pub fn with_n_target(mut self, n_target: f64) -> Result<Self> {
        if !(n_target.is_finite() && n_target > 0.0) {
            return Err(Error::Domain(format!(
                "N target must be positive, got {n_target}"
            )));
        }
        self.n_target = n_target;
        Ok(self)
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn mass(&self) -> Quantity {
        self.mass
    }

    /// Compton time `hbar / (m c^2)` of the particle mass.
    pub fn tau(&self) -> Quantity {
        self.tau
    }

    pub fn n_target(&self) -> f64 {
        self.n_target
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `d sqrt(N) / dt` in 1/s.
    fn sqrt_n_rate(&self) -> f64 {
        match self.variant {
            Variant::Exact => 1.0 / (2.0 * self.tau.value()),
            Variant::PaperStated => 2.0 / self.tau.value(),
        }
    }
}

fn seconds(t: &Quantity) -> Result<f64> {
    t.expect_dim(Dimension::TIME, "time")?;
    if t.value() < 0.0 {
        return Err(Error::NegativeTime(t.value()));
    }
    Ok(t.value())
}

/// Closed-form `sqrt(N)` at time `t`, starting from `N(0) = 0`.
pub fn sqrt_n_closed(t: &Quantity, p: &CosmoParams) -> Result<f64> {
    let t = seconds(t)?;
    let tau = p.tau.value();
    Ok(match p.variant {
        Variant::Exact => t / (2.0 * tau),
        Variant::PaperStated => 2.0 * t / tau,
    })
}

/// Snapshot of the universe when it holds `N` particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochState {
    pub t: Quantity,
    pub n: f64,
    pub mass: Quantity,
    pub radius: Quantity,
    pub hubble: Quantity,
    pub l_uncertainty: Quantity,
    pub hbar_check: Quantity,
    pub lambda_bound: Quantity,
}

impl EpochState {
    pub fn derive(t: Quantity, sqrt_n: f64, p: &CosmoParams) -> Result<Self> {
        if !(sqrt_n.is_finite() && sqrt_n > 0.0) {
            return Err(Error::Domain(format!(
                "epoch quantities need N > 0, got sqrt(N) = {sqrt_n}"
            )));
        }
        let n = sqrt_n * sqrt_n;
        let mass = p.mass.scale(n)?;
        let radius = p.g.mul(&mass)?.div(&p.c.mul(&p.c)?)?;
        let hubble = p.c.div(&radius)?;
        let l_uncertainty = radius.scale(1.0 / sqrt_n)?;
        let hbar_check = p.g.mul(&p.mass.mul(&p.mass)?)?.scale(sqrt_n)?.div(&p.c)?;
        let lambda_bound = hubble.mul(&hubble)?;
        Ok(Self {
            t,
            n,
            mass,
            radius,
            hubble,
            l_uncertainty,
            hbar_check,
            lambda_bound,
        })
    }

    pub fn record(&self) -> EpochRecord {
        EpochRecord {
            t_s: self.t.value(),
            n: self.n,
            m_g: self.mass.value(),
            r_cm: self.radius.value(),
            h_per_s: self.hubble.value(),
            l_cm: self.l_uncertainty.value(),
            hbar_check_erg_s: self.hbar_check.value(),
            lambda_bound_per_s2: self.lambda_bound.value(),
        }
    }
}

/// Flat, serializable view of an [`EpochState`] with CSV column names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpochRecord {
    pub t_s: f64,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "M_g")]
    pub m_g: f64,
    #[serde(rename = "R_cm")]
    pub r_cm: f64,
    #[serde(rename = "H_per_s")]
    pub h_per_s: f64,
    pub l_cm: f64,
    pub hbar_check_erg_s: f64,
    pub lambda_bound_per_s2: f64,
}

pub const CSV_HEADER: &str = "t_s,N,M_g,R_cm,H_per_s,l_cm,hbar_check_erg_s,lambda_bound_per_s2";

pub fn write_csv<W: Write>(series: &[EpochState], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in series {
        let r = s.record();
        writeln!(
            out,
            "{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e}",
            r.t_s, r.n, r.m_g, r.r_cm, r.h_per_s, r.l_cm, r.hbar_check_erg_s, r.lambda_bound_per_s2
        )?;
    }
    Ok(())
}

/// One classical fourth-order Runge-Kutta step for a scalar ODE `y' = f(t, y)`.
pub fn rk4_step<F: Fn(f64, f64) -> f64>(f: &F, t: f64, y: f64, h: f64) -> f64 {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    let k4 = f(t + h, y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates from `t = 0, N = 0` to `t_end` on `steps` uniform intervals and
/// returns the state at each of the `steps` grid points after the origin.
pub fn evolve(p: &CosmoParams, t_end: &Quantity, steps: usize) -> Result<Vec<EpochState>> {
    let t_end_s = seconds(t_end)?;
    if t_end_s <= 0.0 {
        return Err(Error::NegativeTime(t_end_s));
    }
    if steps < 2 {
        return Err(Error::InvalidSteps(steps));
    }
    let rate = p.sqrt_n_rate();
    let rhs = |_t: f64, _u: f64| rate;
    let h = t_end_s / steps as f64;

    let mut u = 0.0;
    let mut series = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = i as f64 * h;
        u = rk4_step(&rhs, t, u, h);
        let t_next = if i + 1 == steps {
            t_end_s
        } else {
            (i + 1) as f64 * h
        };
        series.push(EpochState::derive(
            Quantity::new(t_next, Dimension::TIME)?,
            u,
            p,
        )?);
    }
    Ok(series)
}

/// The epoch at which the active closed form reaches `N = n_target`.
pub fn present_epoch(p: &CosmoParams) -> Result<EpochState> {
    let sqrt_n = p.n_target.sqrt();
    let tau = p.tau.value();
    let t = match p.variant {
        Variant::Exact => 2.0 * tau * sqrt_n,
        Variant::PaperStated => tau * sqrt_n / 2.0,
    };
    EpochState::derive(Quantity::new(t, Dimension::TIME)?, sqrt_n, p)
}

/// True iff the radius strictly grows and the Hubble rate strictly falls
/// along the series.
pub fn check_expansion(series: &[EpochState]) -> Result<bool> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(series.windows(2).all(|w| {
        w[1].radius.value() > w[0].radius.value() && w[1].hubble.value() < w[0].hubble.value()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> CosmoParams {
        CosmoParams::from_registry(&ConstantsRegistry::defaults())
    }

    fn secs(v: f64) -> Quantity {
        Quantity::new(v, Dimension::TIME).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn tau_is_pion_compton_time() {
        assert!(rel(params().tau().value(), 4.716e-24) < 1e-4);
    }

    #[test]
    fn closed_form_examples() {
        let p = params();
        assert_eq!(sqrt_n_closed(&secs(0.0), &p).unwrap(), 0.0);
        let tau = p.tau().value();
        let exact = sqrt_n_closed(&secs(2.0 * tau * 1e40), &p).unwrap();
        assert!(rel(exact, 1e40) < 1e-12);
        let alt = p.with_variant(Variant::PaperStated);
        let stated = sqrt_n_closed(&secs(tau * 1e40 / 2.0), &alt).unwrap();
        assert!(rel(stated, 1e40) < 1e-12);
        // rounded times from the worked example
        assert!(rel(sqrt_n_closed(&secs(9.432e16), &p).unwrap(), 1e40) < 1e-5);
        assert!(rel(sqrt_n_closed(&secs(2.358e16), &alt).unwrap(), 1e40) < 1e-5);
        assert_eq!(
            sqrt_n_closed(&secs(-1.0), &p),
            Err(Error::NegativeTime(-1.0))
        );
    }

    #[test]
    fn one_particle_after_two_chronons() {
        let p = params();
        let t_end = secs(2.0 * p.tau().value());
        let series = evolve(&p, &t_end, 2).unwrap();
        assert_eq!(series.len(), 2);
        assert!(rel(series[1].n, 1.0) < 1e-12);
    }

    #[test]
    fn present_day_run() {
        let p = params();
        let series = evolve(&p, &secs(9.432e16), 10).unwrap();
        let last = series.last().unwrap();
        assert!(rel(last.mass.value(), 2.48806e55) < 1e-5);
        assert!(rel(last.radius.value(), 1.8477e27) < 1e-4);
        assert!(rel(last.hubble.value(), 1.6225e-17) < 1e-4);
    }

    #[test]
    fn present_epoch_defaults() {
        let s = present_epoch(&params()).unwrap();
        assert!(rel(s.t.value(), 9.432e16) < 1e-4);
        assert!(rel(s.l_uncertainty.value(), 1.8477e-13) < 1e-4);
        assert!(rel(s.hbar_check.value(), 1.3782e-27) < 1e-4);
        let alt = present_epoch(&params().with_variant(Variant::PaperStated)).unwrap();
        assert!(rel(alt.t.value(), 2.358e16) < 1e-4);
        assert_eq!(alt.n, s.n);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = params();
        assert_eq!(evolve(&p, &secs(1.0), 1), Err(Error::InvalidSteps(1)));
        assert_eq!(evolve(&p, &secs(-1.0), 10), Err(Error::NegativeTime(-1.0)));
        assert!(evolve(&p, &secs(0.0), 10).is_err());
        let len = Quantity::new(1.0, Dimension::LENGTH).unwrap();
        assert!(evolve(&p, &len, 10).is_err());
        assert!(p.with_n_target(0.0).is_err());
        assert!(p
            .with_mass(Quantity::new(-1.0, Dimension::MASS).unwrap())
            .is_err());
        assert!(p.with_mass(len).is_err());
    }

    #[test]
    fn with_mass_recomputes_tau() {
        let p = params();
        let heavier = p.with_mass(p.mass().scale(2.0).unwrap()).unwrap();
        assert!(rel(heavier.tau().value(), p.tau().value() / 2.0) < 1e-15);
    }

    #[test]
    fn expansion_checks() {
        let p = params();
        let series = evolve(&p, &secs(1e17), 10).unwrap();
        assert!(check_expansion(&series).unwrap());
        assert!(check_expansion(&series[..1]).unwrap());
        let mut reversed = series.clone();
        reversed.reverse();
        assert!(!check_expansion(&reversed).unwrap());
        assert_eq!(check_expansion(&[]), Err(Error::EmptySeries));
    }

    #[test]
    fn csv_layout() {
        let series = evolve(&params(), &secs(9.432e16), 2).unwrap();
        let mut buf = Vec::new();
        write_csv(&series, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        let fields: Vec<_> = lines[2].split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "9.43200000e16");
        for f in fields {
            let mantissa = f.split('e').next().unwrap();
            assert_eq!(mantissa.replace('.', "").len(), 9, "{f}");
        }
    }

    fn assert_derivation_chain(s: &EpochState, p: &CosmoParams) {
        let reg = ConstantsRegistry::defaults();
        let (g, c) = (reg.g().value(), reg.c().value());
        assert!(rel(s.mass.value(), s.n * p.mass().value()) < 1e-12);
        assert!(rel(s.radius.value(), g * s.mass.value() / (c * c)) < 1e-12);
        assert!(rel(s.hubble.value() * s.radius.value(), c) < 1e-12);
        assert!(rel(s.l_uncertainty.value() * s.n.sqrt(), s.radius.value()) < 1e-12);
        assert!(rel(s.lambda_bound.value(), s.hubble.value().powi(2)) < 1e-12);
    }

    #[test]
    fn every_state_satisfies_derivation_chain() {
        let p = params();
        for s in evolve(&p, &secs(1e17), 50).unwrap() {
            assert_derivation_chain(&s, &p);
        }
        assert_derivation_chain(&present_epoch(&p).unwrap(), &p);
    }

    #[test]
    fn both_variants_reach_target_within_landmark_window() {
        for v in [Variant::Exact, Variant::PaperStated] {
            let t = present_epoch(&params().with_variant(v)).unwrap().t.value();
            assert!((1e16..=1e17).contains(&t), "{v:?}: {t}");
        }
    }

    proptest! {
        #[test]
        fn doubling_time_quadruples_n(t in 1e-20f64..1e18) {
            let p = params();
            let n1 = sqrt_n_closed(&secs(t), &p).unwrap().powi(2);
            let n2 = sqrt_n_closed(&secs(2.0 * t), &p).unwrap().powi(2);
            prop_assert!(rel(n2, 4.0 * n1) < 1e-14);
            let tau = p.tau().value();
            prop_assert!(rel(n1, (t / (2.0 * tau)).powi(2)) < 1e-14);
        }

        #[test]
        fn variants_differ_by_sixteen(t in 1e-20f64..1e18) {
            let p = params();
            let exact = sqrt_n_closed(&secs(t), &p).unwrap().powi(2);
            let stated = sqrt_n_closed(&secs(t), &p.with_variant(Variant::PaperStated)).unwrap().powi(2);
            prop_assert!(rel(stated, 16.0 * exact) < 1e-12);
        }

        #[test]
        fn rk4_matches_closed_form(t_end in 1e-10f64..1e18, steps in 2usize..300) {
            let p = params();
            for s in evolve(&p, &secs(t_end), steps).unwrap() {
                let closed = sqrt_n_closed(&s.t, &p).unwrap().powi(2);
                prop_assert!(rel(s.n, closed) <= 1e-9);
            }
        }
    }
}
