//! Named physical constants, loaded from line-oriented text files and sealed
//! into an immutable registry.
//!
//! File format, one entry per line:
//!
//! ```text
//! # comment
//! G = 6.67430e-8 cm^3/g/s^2
//! N = 1e80
//! ```
//!
//! Loading a file on top of the defaults overrides only the names it lists.
//! Sealing checks the required set and appends the derived scales (Planck
//! and pion Compton scales, universe mass and radius).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::dimension::{rational, Dimension};
use crate::error::{Error, Result};
use crate::quantity::Quantity;
use crate::units::parse_unit;

pub const DEFAULT_CONSTANTS: &str = include_str!("../data/constants.txt");
pub const DEFAULT_SOURCE: &str = "embedded CODATA-2018";

/// Names that must be present after loading, with their expected dimensions.
pub const REQUIRED: [(&str, Dimension); 9] = [
    ("hbar", Dimension::ACTION),
    ("c", Dimension::VELOCITY),
    ("G", Dimension::from_ints(-1, 3, -2, 0)),
    ("e", Dimension::CHARGE),
    ("m_e", Dimension::MASS),
    ("m_pi", Dimension::MASS),
    ("k_B", Dimension::from_ints(1, 2, -2, -1)),
    ("H0", Dimension::FREQUENCY),
    ("N", Dimension::DIMENSIONLESS),
];

/// Names computed at seal time; files may not define them.
pub const DERIVED: [&str; 9] = [
    "h", "m_P", "l_P", "tau_P", "rho_P", "l_pi", "tau_pi", "M_u", "R_u",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Constant {
    pub name: String,
    pub quantity: Quantity,
    pub provenance: String,
    pub derived: bool,
}

/// Mutable staging area; [`RegistryBuilder::seal`] produces the registry.
#[derive(Debug, Clone, Default)]
pub struct RegistryBuilder {
    entries: Vec<Constant>,
}

impl RegistryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_defaults() -> Self {
        let mut b = Self::new();
        b.load_str(DEFAULT_CONSTANTS, DEFAULT_SOURCE)
            .expect("embedded constants parse");
        b
    }

    pub fn set(&mut self, name: &str, quantity: Quantity, provenance: impl Into<String>) {
        let entry = Constant {
            name: name.to_string(),
            quantity,
            provenance: provenance.into(),
            derived: false,
        };
        match self.entries.iter_mut().find(|c| c.name == name) {
            Some(slot) => *slot = entry,
            None => self.entries.push(entry),
        }
    }

    /// Parses a constants file. `source_name` becomes each entry's provenance
    /// (suffixed with the line number).
    pub fn load_str(&mut self, text: &str, source_name: &str) -> Result<&mut Self> {
        let mut seen = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Constants {
                source_name: source_name.to_string(),
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, rest) = line
                .split_once('=')
                .ok_or_else(|| err("expected `name = <value> <unit>`".into()))?;
            let name = name.trim();
            if !is_identifier(name) {
                return Err(err(format!("invalid constant name `{name}`")));
            }
            if DERIVED.contains(&name) {
                return Err(err(format!("`{name}` is derived and cannot be set")));
            }
            if let Some(prev) = seen.insert(name.to_string(), line_no) {
                return Err(err(format!("`{name}` already defined on line {prev}")));
            }
            let rest = rest.trim();
            let (number, unit) = match rest.find(char::is_whitespace) {
                Some(i) => (&rest[..i], &rest[i..]),
                None => (rest, ""),
            };
            let value: f64 = number
                .parse()
                .map_err(|_| err(format!("invalid number `{number}`")))?;
            let dim = parse_unit(unit).map_err(err)?;
            let quantity = Quantity::new(value, dim)
                .map_err(|_| err(format!("non-finite value `{number}`")))?;
            self.set(name, quantity, format!("{source_name}:{line_no}"));
        }
        Ok(self)
    }

    pub fn seal(self) -> Result<ConstantsRegistry> {
        let mut entries = self.entries;
        let missing = |name: &str| Error::Constants {
            source_name: "registry".into(),
            line: 0,
            message: format!("required constant `{name}` is missing"),
        };
        for (name, dim) in REQUIRED {
            let c = entries
                .iter()
                .find(|c| c.name == name)
                .ok_or_else(|| missing(name))?;
            if c.quantity.dim() != dim {
                return Err(Error::Constants {
                    source_name: c.provenance.clone(),
                    line: 0,
                    message: format!(
                        "`{name}` must have dimension [{dim}], got [{}]",
                        c.quantity.dim()
                    ),
                });
            }
            if c.quantity.value() <= 0.0 {
                return Err(Error::Constants {
                    source_name: c.provenance.clone(),
                    line: 0,
                    message: format!("`{name}` must be positive"),
                });
            }
        }
        let get = |name: &str| -> Quantity {
            entries
                .iter()
                .find(|c| c.name == name)
                .map(|c| c.quantity)
                .expect("checked above")
        };
        let (hbar, c, g, m_pi, n) = (get("hbar"), get("c"), get("G"), get("m_pi"), get("N"));

        let h = hbar.scale(2.0 * PI)?;
        let m_p = hbar.mul(&c)?.div(&g)?.sqrt()?;
        let l_p = hbar.div(&m_p.mul(&c)?)?;
        let tau_p = l_p.div(&c)?;
        let rho_p = m_p.div(&l_p.pow(rational(3, 1))?)?;
        let l_pi = hbar.div(&m_pi.mul(&c)?)?;
        let tau_pi = l_pi.div(&c)?;
        let m_u = n.mul(&m_pi)?;
        let r_u = g.mul(&m_u)?.div(&c.mul(&c)?)?;

        let derived = [
            (h, "2*pi*hbar"),
            (m_p, "sqrt(hbar*c/G)"),
            (l_p, "hbar/(m_P*c)"),
            (tau_p, "l_P/c"),
            (rho_p, "m_P/l_P^3"),
            (l_pi, "hbar/(m_pi*c)"),
            (tau_pi, "hbar/(m_pi*c^2)"),
            (m_u, "N*m_pi"),
            (r_u, "G*M_u/c^2"),
        ];
        for (name, (quantity, formula)) in DERIVED.iter().zip(derived) {
            entries.push(Constant {
                name: (*name).to_string(),
                quantity,
                provenance: format!("derived: {formula}"),
                derived: true,
            });
        }
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), i))
            .collect();
        Ok(ConstantsRegistry { entries, index })
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Sealed, immutable constants table. Safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsRegistry {
    entries: Vec<Constant>,
    index: BTreeMap<String, usize>,
}

impl ConstantsRegistry {
    /// The embedded CODATA-2018 defaults, sealed.
    pub fn defaults() -> Self {
        RegistryBuilder::with_defaults()
            .seal()
            .expect("embedded constants are complete")
    }

    /// Defaults overlaid with the contents of a constants file.
    pub fn with_overrides(text: &str, source_name: &str) -> Result<Self> {
        let mut b = RegistryBuilder::with_defaults();
        b.load_str(text, source_name)?;
        b.seal()
    }

    pub fn get(&self, name: &str) -> Option<&Constant> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn lookup(&self, name: &str) -> Result<Quantity> {
        self.get(name)
            .map(|c| c.quantity)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    /// Entries in load order, derived entries last.
    pub fn iter(&self) -> impl Iterator<Item = &Constant> {
        self.entries.iter()
    }

    fn known(&self, name: &str) -> Quantity {
        self.get(name)
            .unwrap_or_else(|| panic!("sealed registry lacks `{name}`"))
            .quantity
    }

    pub fn hbar(&self) -> Quantity {
        self.known("hbar")
    }
    pub fn c(&self) -> Quantity {
        self.known("c")
    }
    pub fn g(&self) -> Quantity {
        self.known("G")
    }
    pub fn e(&self) -> Quantity {
        self.known("e")
    }
    pub fn m_e(&self) -> Quantity {
        self.known("m_e")
    }
    pub fn m_pi(&self) -> Quantity {
        self.known("m_pi")
    }
    pub fn k_b(&self) -> Quantity {
        self.known("k_B")
    }
    pub fn h0(&self) -> Quantity {
        self.known("H0")
    }
    /// Particle count of the present universe.
    pub fn n(&self) -> f64 {
        self.known("N").value()
    }
    pub fn planck_mass(&self) -> Quantity {
        self.known("m_P")
    }
}
