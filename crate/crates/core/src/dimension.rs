//! Dimensional exponents over the CGS base quantities.
//!
//! Electric charge is not a base dimension. In Gaussian units `e²/r` is an
//! energy, so charge carries `M^(1/2) L^(3/2) T^-1` and exponents must be
//! rational rather than integer.

use std::fmt;
use std::ops::{Div, Mul};

use num_traits::{One, Signed, Zero};

/// Exact exponent. Always stored reduced with a positive denominator.
pub type Rational = num_rational::Rational64;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    pub mass: Rational,
    pub length: Rational,
    pub time: Rational,
    pub temperature: Rational,
}

const BASE_SYMBOLS: [&str; 4] = ["M", "L", "T", "Θ"];
const CGS_UNITS: [&str; 4] = ["g", "cm", "s", "K"];

impl Dimension {
    pub const fn from_ints(mass: i64, length: i64, time: i64, temperature: i64) -> Self {
        Self {
            mass: Rational::new_raw(mass, 1),
            length: Rational::new_raw(length, 1),
            time: Rational::new_raw(time, 1),
            temperature: Rational::new_raw(temperature, 1),
        }
    }

    pub const DIMENSIONLESS: Self = Self::from_ints(0, 0, 0, 0);
    pub const MASS: Self = Self::from_ints(1, 0, 0, 0);
    pub const LENGTH: Self = Self::from_ints(0, 1, 0, 0);
    pub const TIME: Self = Self::from_ints(0, 0, 1, 0);
    pub const TEMPERATURE: Self = Self::from_ints(0, 0, 0, 1);
    pub const FREQUENCY: Self = Self::from_ints(0, 0, -1, 0);
    pub const VELOCITY: Self = Self::from_ints(0, 1, -1, 0);
    pub const ENERGY: Self = Self::from_ints(1, 2, -2, 0);
    pub const ACTION: Self = Self::from_ints(1, 2, -1, 0);
    pub const DENSITY: Self = Self::from_ints(1, -3, 0, 0);

    /// Gaussian charge, `g^(1/2) cm^(3/2) s^-1`.
    pub const CHARGE: Self = Self {
        mass: Rational::new_raw(1, 2),
        length: Rational::new_raw(3, 2),
        time: Rational::new_raw(-1, 1),
        temperature: Rational::new_raw(0, 1),
    };

    pub fn new(mass: Rational, length: Rational, time: Rational, temperature: Rational) -> Self {
        Self {
            mass,
            length,
            time,
            temperature,
        }
    }

    fn exponents(&self) -> [Rational; 4] {
        [self.mass, self.length, self.time, self.temperature]
    }

    fn from_exponents(e: [Rational; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    fn zip_with(self, other: Self, f: impl Fn(Rational, Rational) -> Rational) -> Self {
        let a = self.exponents();
        let b = other.exponents();
        Self::from_exponents([f(a[0], b[0]), f(a[1], b[1]), f(a[2], b[2]), f(a[3], b[3])])
    }

    pub fn is_dimensionless(&self) -> bool {
        self.exponents().iter().all(Zero::is_zero)
    }

    pub fn inverse(self) -> Self {
        Self::from_exponents(self.exponents().map(|e| -e))
    }

    pub fn pow(self, p: Rational) -> Self {
        Self::from_exponents(self.exponents().map(|e| e * p))
    }

    /// Renders the dimension in CGS unit symbols, e.g. `g cm^2 s^-1`.
    /// Dimensionless quantities render as the empty string.
    pub fn unit_string(&self) -> String {
        render(self, &CGS_UNITS)
    }
}

fn render(dim: &Dimension, symbols: &[&str; 4]) -> String {
    let mut parts = Vec::new();
    for (sym, exp) in symbols.iter().zip(dim.exponents()) {
        if exp.is_zero() {
            continue;
        }
        if exp.is_one() {
            parts.push((*sym).to_string());
        } else if exp.is_integer() {
            parts.push(format!("{sym}^{}", exp.numer()));
        } else if exp.is_negative() {
            parts.push(format!("{sym}^(-{}/{})", exp.numer().abs(), exp.denom()));
        } else {
            parts.push(format!("{sym}^({}/{})", exp.numer(), exp.denom()));
        }
    }
    parts.join(" ")
}

impl Default for Dimension {
    fn default() -> Self {
        Self::DIMENSIONLESS
    }
}

impl Mul for Dimension {
    type Output = Dimension;

    fn mul(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Div for Dimension {
    type Output = Dimension;

    fn div(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            f.write_str("dimensionless")
        } else {
            f.write_str(&render(self, &BASE_SYMBOLS))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reduction_is_canonical() {
        assert_eq!(rational(2, 4), rational(1, 2));
        let r = rational(3, -6);
        assert_eq!((*r.numer(), *r.denom()), (-1, 2));
        let z = rational(0, 7);
        assert_eq!((*z.numer(), *z.denom()), (0, 1));
    }

    #[test]
    fn charge_squared_is_energy_times_length() {
        assert_eq!(
            Dimension::CHARGE * Dimension::CHARGE,
            Dimension::ENERGY * Dimension::LENGTH
        );
    }

    #[test]
    fn cube_root_keeps_exact_exponents() {
        let d = Dimension::from_ints(3, -6, 0, 0).pow(rational(1, 3));
        assert_eq!(d, Dimension::from_ints(1, -2, 0, 0));
        let half = Dimension::MASS.pow(rational(1, 2));
        assert_eq!(half.pow(rational(2, 1)), Dimension::MASS);
    }

    #[test]
    fn renders_human_readably() {
        assert_eq!(Dimension::ACTION.to_string(), "M L^2 T^-1");
        assert_eq!(Dimension::CHARGE.to_string(), "M^(1/2) L^(3/2) T^-1");
        assert_eq!(Dimension::CHARGE.unit_string(), "g^(1/2) cm^(3/2) s^-1");
        assert_eq!(
            Dimension::MASS.pow(rational(-1, 2)).unit_string(),
            "g^(-1/2)"
        );
        assert_eq!(Dimension::DIMENSIONLESS.to_string(), "dimensionless");
        assert_eq!(Dimension::DIMENSIONLESS.unit_string(), "");
    }

    #[test]
    fn inverse_cancels() {
        let d = Dimension::CHARGE;
        assert!((d * d.inverse()).is_dimensionless());
    }
}
