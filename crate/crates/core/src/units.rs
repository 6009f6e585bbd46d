//! CGS unit expressions such as `cm^3/g/s^2` or `g^(1/2)*cm^(3/2)/s`.
//!
//! Every recognised unit is coherent CGS, so a unit expression only ever
//! contributes a dimension; the numeric factor is always one.

use crate::dimension::{rational, Dimension, Rational};

/// Dimension of a single unit symbol.
pub fn unit_dimension(symbol: &str) -> Option<Dimension> {
    Some(match symbol {
        "g" => Dimension::MASS,
        "cm" => Dimension::LENGTH,
        "s" => Dimension::TIME,
        "K" => Dimension::TEMPERATURE,
        "erg" => Dimension::ENERGY,
        "esu" => Dimension::CHARGE,
        "1" => Dimension::DIMENSIONLESS,
        _ => return None,
    })
}

/// Parses a unit expression into its dimension. Whitespace is ignored and
/// an empty expression is dimensionless.
pub fn parse_unit(src: &str) -> Result<Dimension, String> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Ok(Dimension::DIMENSIONLESS);
    }
    let mut p = UnitParser { chars, pos: 0 };
    let d = p.product()?;
    match p.peek() {
        None => Ok(d),
        Some(c) => Err(format!("unexpected `{c}` in unit expression `{src}`")),
    }
}

/// Canonical spacing-free form of a unit expression, used when printing.
pub fn normalize_unit(src: &str) -> String {
    src.chars().filter(|c| !c.is_whitespace()).collect()
}

struct UnitParser {
    chars: Vec<char>,
    pos: usize,
}

impl UnitParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn expect(&mut self, want: char) -> Result<(), String> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(format!("expected `{want}`, found `{c}`")),
            None => Err(format!("expected `{want}`, found end of unit")),
        }
    }

    fn product(&mut self) -> Result<Dimension, String> {
        let mut d = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                '*' => {
                    self.pos += 1;
                    d = d * self.factor()?;
                }
                '/' => {
                    self.pos += 1;
                    d = d / self.factor()?;
                }
                _ => break,
            }
        }
        Ok(d)
    }

    fn factor(&mut self) -> Result<Dimension, String> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let d = self.product()?;
                self.expect(')')?;
                d
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let sym: String = self.chars[start..self.pos].iter().collect();
                unit_dimension(&sym).ok_or_else(|| format!("unknown unit `{sym}`"))?
            }
            Some(c) => return Err(format!("unexpected `{c}` in unit expression")),
            None => return Err("unit expression ends early".into()),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            Ok(base.pow(self.exponent()?))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<Rational, String> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let num = self.signed_int()?;
            let den = if self.peek() == Some('/') {
                self.pos += 1;
                self.signed_int()?
            } else {
                1
            };
            self.expect(')')?;
            if den == 0 {
                return Err("zero denominator in exponent".into());
            }
            Ok(rational(num, den))
        } else {
            Ok(rational(self.signed_int()?, 1))
        }
    }

    fn signed_int(&mut self) -> Result<i64, String> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = digits
            .parse()
            .map_err(|_| format!("expected integer exponent, found `{digits}`"))?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_compound_units() {
        assert_eq!(parse_unit("erg*s").unwrap(), Dimension::ACTION);
        assert_eq!(parse_unit("cm/s").unwrap(), Dimension::VELOCITY);
        assert_eq!(
            parse_unit("cm^3/g/s^2").unwrap(),
            Dimension::from_ints(-1, 3, -2, 0)
        );
        assert_eq!(
            parse_unit("cm^3 / (g * s^2)").unwrap(),
            Dimension::from_ints(-1, 3, -2, 0)
        );
        assert_eq!(parse_unit("esu").unwrap(), Dimension::CHARGE);
        assert_eq!(parse_unit("g^(1/2)*cm^(3/2)/s").unwrap(), Dimension::CHARGE);
        assert_eq!(parse_unit("1/s").unwrap(), Dimension::FREQUENCY);
        assert_eq!(
            parse_unit("s^-2").unwrap(),
            Dimension::from_ints(0, 0, -2, 0)
        );
        assert_eq!(
            parse_unit("erg/K").unwrap(),
            Dimension::from_ints(1, 2, -2, -1)
        );
        assert_eq!(parse_unit("").unwrap(), Dimension::DIMENSIONLESS);
    }

    #[test]
    fn rejects_unknown_symbols_and_garbage() {
        assert!(parse_unit("m/s").is_err());
        assert!(parse_unit("cm^").is_err());
        assert!(parse_unit("cm^(1/0)").is_err());
        assert!(parse_unit("(cm").is_err());
        assert!(parse_unit("cm)").is_err());
    }
}
