//! Dimensional quantities, a small relation language, and the cosmological,
//! Compton-scale and Planck-scale calculations checked against it.
//!
//! All physical values are CGS-Gaussian. Charge is derived
//! (`g^(1/2) cm^(3/2) s^-1`), so dimension exponents are rational.

// `DimensionMismatch` carries two rational dimensions; errors are rare.
#![allow(clippy::result_large_err)]

pub mod constants;
pub mod dimension;
pub mod dsl;
pub mod error;
pub mod evolution;
pub mod planck_law;
pub mod quantity;
pub mod scales;
pub mod units;

pub use constants::{Constant, ConstantsRegistry, RegistryBuilder};
pub use dimension::{rational, Dimension, Rational};
pub use error::{Error, Result};
pub use quantity::{agree_within, decades_deviation, Quantity};
