//! Real magnitudes tagged with a [`Dimension`], and the order-of-magnitude
//! comparison used for every `~` relation.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::dimension::{Dimension, Rational};
use crate::error::{Error, Result};

/// A finite magnitude in CGS-Gaussian units paired with its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    value: f64,
    dim: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dim: Dimension) -> Result<Self> {
        if value.is_finite() {
            Ok(Self { value, dim })
        } else {
            Err(Error::Overflow("construction"))
        }
    }

    pub fn dimensionless(value: f64) -> Result<Self> {
        Self::new(value, Dimension::DIMENSIONLESS)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn is_dimensionless(&self) -> bool {
        self.dim.is_dimensionless()
    }

    pub fn mul(&self, other: &Quantity) -> Result<Quantity> {
        let v = self.value * other.value;
        if !v.is_finite() {
            return Err(Error::Overflow("multiplication"));
        }
        Ok(Quantity {
            value: v,
            dim: self.dim * other.dim,
        })
    }

    pub fn div(&self, other: &Quantity) -> Result<Quantity> {
        if other.value == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let v = self.value / other.value;
        if !v.is_finite() {
            return Err(Error::Overflow("division"));
        }
        Ok(Quantity {
            value: v,
            dim: self.dim / other.dim,
        })
    }

    pub fn add(&self, other: &Quantity) -> Result<Quantity> {
        self.same_dim(other)?;
        Quantity::new(self.value + other.value, self.dim).map_err(|_| Error::Overflow("addition"))
    }

    pub fn sub(&self, other: &Quantity) -> Result<Quantity> {
        self.same_dim(other)?;
        Quantity::new(self.value - other.value, self.dim)
            .map_err(|_| Error::Overflow("subtraction"))
    }

    pub fn neg(&self) -> Quantity {
        Quantity {
            value: -self.value,
            dim: self.dim,
        }
    }

    pub fn scale(&self, factor: f64) -> Result<Quantity> {
        Quantity::new(self.value * factor, self.dim).map_err(|_| Error::Overflow("scaling"))
    }

    pub fn pow(&self, p: Rational) -> Result<Quantity> {
        if p.is_zero() {
            return Ok(Quantity {
                value: 1.0,
                dim: Dimension::DIMENSIONLESS,
            });
        }
        if !p.is_integer() && self.value <= 0.0 {
            return Err(Error::Domain(format!(
                "fractional power {p} of non-positive value {}",
                self.value
            )));
        }
        let v = if p.is_integer() {
            match p.numer().to_i32() {
                Some(n) => self.value.powi(n),
                None => self.value.powf(*p.numer() as f64),
            }
        } else if p == Rational::new(1, 2) {
            self.value.sqrt()
        } else if p == Rational::new(1, 3) {
            self.value.cbrt()
        } else {
            self.value.powf(p.to_f64().unwrap_or(f64::NAN))
        };
        if v.is_nan() {
            return Err(Error::Domain(format!("{} ^ {p}", self.value)));
        }
        if !v.is_finite() {
            return Err(if self.value == 0.0 {
                Error::DivisionByZero
            } else {
                Error::Overflow("power")
            });
        }
        Ok(Quantity {
            value: v,
            dim: self.dim.pow(p),
        })
    }

    pub fn sqrt(&self) -> Result<Quantity> {
        self.pow(Rational::new(1, 2))
    }

    fn same_dim(&self, other: &Quantity) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    /// Asserts this quantity carries the given dimension.
    pub fn expect_dim(&self, dim: Dimension, what: &str) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} must have dimension [{dim}], got [{}]",
                self.dim
            )))
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = self.dim.unit_string();
        match f.precision() {
            Some(p) => write!(f, "{:.*e}", p, self.value)?,
            None => write!(f, "{:e}", self.value)?,
        }
        if !unit.is_empty() {
            write!(f, " {unit}")?;
        }
        Ok(())
    }
}

/// `|log10(a / b)|` for two strictly positive quantities of equal dimension.
pub fn decades_deviation(a: &Quantity, b: &Quantity) -> Result<f64> {
    a.same_dim(b)?;
    if a.value <= 0.0 || b.value <= 0.0 {
        return Err(Error::Domain(format!(
            "decades deviation needs positive values, got {} and {}",
            a.value, b.value
        )));
    }
    // log difference instead of ratio: a/b can overflow for wide gaps
    Ok((a.value.log10() - b.value.log10()).abs())
}

pub fn agree_within(a: &Quantity, b: &Quantity, decades: f64) -> Result<bool> {
    Ok(decades_deviation(a, b)? <= decades)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::rational;
    use proptest::prelude::*;

    fn q(v: f64, d: Dimension) -> Quantity {
        Quantity::new(v, d).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    const E: f64 = 4.80320471e-10;
    const G: f64 = 6.67430e-8;
    const M_PI: f64 = 2.48806e-25;
    const HBAR: f64 = 1.054571817e-27;

    #[test]
    fn charge_squared() {
        let e = q(E, Dimension::CHARGE);
        let e2 = e.mul(&e).unwrap();
        assert!(rel(e2.value(), 2.30708e-19) < 1e-5);
        assert_eq!(e2.dim(), Dimension::from_ints(1, 3, -2, 0));
    }

    #[test]
    fn multiply_by_dimensionless_one() {
        let x = q(3.5, Dimension::LENGTH);
        assert_eq!(x.mul(&Quantity::dimensionless(1.0).unwrap()).unwrap(), x);
    }

    #[test]
    fn g_times_pion_mass_squared() {
        let g = q(G, Dimension::from_ints(-1, 3, -2, 0));
        let m = q(M_PI, Dimension::MASS);
        let v = g.mul(&m.mul(&m).unwrap()).unwrap();
        assert!(rel(v.value(), 4.1317e-57) < 1e-4);
        assert_eq!(v.dim(), Dimension::ENERGY * Dimension::LENGTH);
    }

    #[test]
    fn overflow_and_division_by_zero() {
        let big = q(1e300, Dimension::MASS);
        assert_eq!(big.mul(&big), Err(Error::Overflow("multiplication")));
        let zero = q(0.0, Dimension::TIME);
        assert_eq!(big.div(&zero), Err(Error::DivisionByZero));
        assert!(Quantity::new(f64::NAN, Dimension::MASS).is_err());
    }

    #[test]
    fn add_requires_equal_dims() {
        let a = q(1.0, Dimension::LENGTH);
        let b = q(2.0, Dimension::LENGTH);
        assert_eq!(a.add(&b).unwrap(), q(3.0, Dimension::LENGTH));
        let g = q(1.0, Dimension::MASS);
        match a.add(&g) {
            Err(Error::DimensionMismatch { left, right }) => {
                assert_eq!(left, Dimension::LENGTH);
                assert_eq!(right, Dimension::MASS);
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
        let msg = a.add(&g).unwrap_err().to_string();
        assert!(msg.contains("[L]") && msg.contains("[M]"), "{msg}");
    }

    #[test]
    fn coulomb_plus_linear_cancels_at_unit_radius() {
        let coulomb = q(-1.0 / 1.0, Dimension::DIMENSIONLESS);
        let linear = q(1.0 * 1.0, Dimension::DIMENSIONLESS);
        let sum = coulomb.add(&linear).unwrap();
        assert_eq!(sum.value(), 0.0);
        assert!(sum.is_dimensionless());
    }

    #[test]
    fn weinberg_cube_root() {
        let hbar = q(HBAR, Dimension::ACTION);
        let h0 = q(2.27e-18, Dimension::FREQUENCY);
        let g = q(G, Dimension::from_ints(-1, 3, -2, 0));
        let c = q(2.99792458e10, Dimension::VELOCITY);
        let inner = hbar
            .pow(rational(2, 1))
            .unwrap()
            .mul(&h0)
            .unwrap()
            .div(&g.mul(&c).unwrap())
            .unwrap();
        let m = inner.pow(rational(1, 3)).unwrap();
        assert_eq!(m.dim(), Dimension::MASS);
        assert!(rel(m.value(), 1.0806e-25) < 1e-4);
        let dev = decades_deviation(&m, &q(M_PI, Dimension::MASS)).unwrap();
        assert!((dev - 0.362).abs() < 1e-3);
    }

    #[test]
    fn zero_power_is_dimensionless_one() {
        let x = q(42.0, Dimension::ENERGY);
        assert_eq!(
            x.pow(rational(0, 1)).unwrap(),
            Quantity::dimensionless(1.0).unwrap()
        );
    }

    #[test]
    fn planck_mass_from_square_root() {
        let hbar = q(HBAR, Dimension::ACTION);
        let c = q(2.99792458e10, Dimension::VELOCITY);
        let g = q(G, Dimension::from_ints(-1, 3, -2, 0));
        let mp = hbar.mul(&c).unwrap().div(&g).unwrap().sqrt().unwrap();
        assert_eq!(mp.dim(), Dimension::MASS);
        assert!(rel(mp.value(), 2.1764e-5) < 1e-4);
    }

    #[test]
    fn fractional_power_of_negative_is_domain_error() {
        let x = q(-8.0, Dimension::DIMENSIONLESS);
        assert!(matches!(x.pow(rational(1, 3)), Err(Error::Domain(_))));
        assert_eq!(x.pow(rational(2, 1)).unwrap().value(), 64.0);
    }

    #[test]
    fn decades_examples() {
        let d = Dimension::DIMENSIONLESS;
        assert_eq!(decades_deviation(&q(1e40, d), &q(1e40, d)).unwrap(), 0.0);
        let hc = q(1.3782e-27, Dimension::ACTION);
        let hbar = q(HBAR, Dimension::ACTION);
        assert!((decades_deviation(&hc, &hbar).unwrap() - 0.116).abs() < 1e-3);
        let ratio = q(5.584e37, d);
        assert!((decades_deviation(&ratio, &q(1e40, d)).unwrap() - 2.253).abs() < 1e-3);
        assert!(decades_deviation(&q(-1.0, d), &q(1.0, d)).is_err());
        assert!(decades_deviation(&q(1.0, Dimension::MASS), &q(1.0, d)).is_err());
    }

    #[test]
    fn agree_within_examples() {
        let l = Dimension::LENGTH;
        assert!(agree_within(&q(1.8477e-13, l), &q(1.4138e-13, l), 1.0).unwrap());
        assert!(agree_within(&q(7.0, l), &q(7.0, l), 0.0).unwrap());
        let d = Dimension::DIMENSIONLESS;
        assert!(!agree_within(&q(137.04, d), &q(1.0, d), 1.0).unwrap());
        assert!(agree_within(&q(137.04, d), &q(1.0, d), 2.5).unwrap());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=6).prop_map(|(n, d)| rational(n, d))
    }

    fn arb_dim() -> impl Strategy<Value = Dimension> {
        (
            arb_rational(),
            arb_rational(),
            arb_rational(),
            arb_rational(),
        )
            .prop_map(|(m, l, t, k)| Dimension::new(m, l, t, k))
    }

    proptest! {
        #[test]
        fn dimension_group_laws(a in arb_dim(), b in arb_dim(), c in arb_dim()) {
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert!((a * a.inverse()).is_dimensionless());
        }

        #[test]
        fn pow_then_inverse_pow_restores_dimension(d in arb_dim(), p in arb_rational()) {
            prop_assume!(!p.is_zero());
            prop_assert_eq!(d.pow(p).pow(p.recip()), d);
        }

        #[test]
        fn deviation_is_symmetric(a in 1e-200f64..1e200, b in 1e-200f64..1e200, d in arb_dim()) {
            let qa = q(a, d);
            let qb = q(b, d);
            let ab = decades_deviation(&qa, &qb).unwrap();
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, decades_deviation(&qb, &qa).unwrap());
        }

        #[test]
        fn mul_div_never_yield_nan(a in proptest::num::f64::NORMAL, b in proptest::num::f64::NORMAL) {
            let qa = q(a, Dimension::MASS);
            let qb = q(b, Dimension::LENGTH);
            if let Ok(r) = qa.mul(&qb) { prop_assert!(r.value().is_finite()); }
            if let Ok(r) = qa.div(&qb) { prop_assert!(r.value().is_finite()); }
        }
    }
}
