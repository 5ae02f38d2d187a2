//! Brieskorn germs `±x_1^{p_1} ± ... ± x_d^{p_d}`.

use alloc::vec::Vec;
use core::fmt;

use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("a germ needs at least one term")]
    Empty,
    #[error("exponents must be >= 1")]
    ZeroExponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrieskornTerm {
    pub exp: u32,
    pub sign: Sign,
}

impl BrieskornTerm {
    pub fn new(exp: u32, sign: Sign) -> Self {
        BrieskornTerm { exp, sign }
    }
}

/// Stored with exponents ascending and `+` before `-` among equal exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrieskornGerm {
    terms: Vec<BrieskornTerm>,
}

impl BrieskornGerm {
    pub fn new(mut terms: Vec<BrieskornTerm>) -> Result<Self, GermError> {
        if terms.is_empty() {
            return Err(GermError::Empty);
        }
        if terms.iter().any(|t| t.exp == 0) {
            return Err(GermError::ZeroExponent);
        }
        terms.sort();
        Ok(BrieskornGerm { terms })
    }

    /// Shorthand: `BrieskornGerm::from_signed(&[3, -6])` is `x^3 - y^6`.
    pub fn from_signed(exps: &[i64]) -> Result<Self, GermError> {
        let terms = exps
            .iter()
            .map(|&e| {
                let sign = if e < 0 { Sign::Minus } else { Sign::Plus };
                BrieskornTerm::new(e.unsigned_abs() as u32, sign)
            })
            .collect();
        Self::new(terms)
    }

    pub fn terms(&self) -> &[BrieskornTerm] {
        &self.terms
    }

    pub fn dimension(&self) -> usize {
        self.terms.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.iter().map(|t| t.exp)
    }

    pub fn max_exponent(&self) -> u32 {
        self.exponents().max().unwrap_or(0)
    }

    pub fn min_exponent(&self) -> u32 {
        self.exponents().min().unwrap_or(0)
    }

    /// `-f`.
    pub fn negated(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| BrieskornTerm::new(t.exp, -t.sign))
            .collect();
        BrieskornGerm::new(terms).expect("negation keeps a valid germ")
    }

    /// The Thom–Sebastiani sum `f(x) + g(y)` in disjoint variables.
    pub fn join(&self, other: &BrieskornGerm) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        BrieskornGerm::new(terms).expect("join of valid germs")
    }

    pub fn is_singular(&self) -> bool {
        self.terms.iter().all(|t| t.exp >= 2)
    }
}

fn var_name(i: usize, d: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if d <= 3 {
        f.write_str(["x", "y", "z"][i])
    } else {
        write!(f, "x{}", i + 1)
    }
}

impl fmt::Display for BrieskornGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.terms.len();
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => f.write_str("-")?,
                (_, Sign::Plus) => f.write_str(" + ")?,
                (_, Sign::Minus) => f.write_str(" - ")?,
            }
            var_name(i, d, f)?;
            if t.exp != 1 {
                write!(f, "^{}", t.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_order_puts_plus_first() {
        let g = BrieskornGerm::from_signed(&[-4, 4, 2]).unwrap();
        assert_eq!(g.to_string(), "x^2 + y^4 - z^4");
        assert_eq!(BrieskornGerm::from_signed(&[-4, 4]).unwrap().to_string(), "x^4 - y^4");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(BrieskornGerm::new(Vec::new()), Err(GermError::Empty));
        assert_eq!(BrieskornGerm::from_signed(&[0, 2]), Err(GermError::ZeroExponent));
    }
}
