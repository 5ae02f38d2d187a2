//! Resolution data (divisor multiplicities plus per-component stratum data)
//! and the Denef–Loeser evaluators for `Z` and `Z±`.
//!
//! Strata are stored per connected component; the aggregated formula for
//! `Z` is recovered by summation.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::series::{GeomFactor, RationalZeta, ZetaTerm};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    pub id: String,
    /// Multiplicity of `f∘σ` along the divisor.
    pub n: u64,
    /// Multiplicity of `jac σ` plus one.
    pub nu: u64,
    /// Contained in `σ⁻¹(0)`.
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub divisors: Vec<String>,
    pub chi_c: i64,
    pub alpha_plus: u64,
    pub alpha_minus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ResolutionData {
    pub divisors: Vec<Divisor>,
    pub strata: Vec<Stratum>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateDivisor { id: String },
    ZeroMultiplicity { id: String },
    ZeroNu { id: String },
    EmptyStratum { stratum: usize },
    UnknownDivisor { stratum: usize, id: String },
    RepeatedDivisor { stratum: usize, id: String },
    NoExceptionalDivisor { stratum: usize },
    ChamberCount { stratum: usize, expected: u64, found: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateDivisor { id } => write!(f, "divisor id {id} is used twice"),
            Violation::ZeroMultiplicity { id } => write!(f, "divisor {id} has N = 0"),
            Violation::ZeroNu { id } => write!(f, "divisor {id} has nu = 0"),
            Violation::EmptyStratum { stratum } => write!(f, "stratum {stratum} has no divisors"),
            Violation::UnknownDivisor { stratum, id } => {
                write!(f, "stratum {stratum} references unknown divisor {id}")
            }
            Violation::RepeatedDivisor { stratum, id } => {
                write!(f, "stratum {stratum} lists divisor {id} twice")
            }
            Violation::NoExceptionalDivisor { stratum } => {
                write!(f, "stratum {stratum} has no exceptional divisor")
            }
            Violation::ChamberCount { stratum, expected, found } => {
                write!(f, "stratum {stratum}: alpha_plus + alpha_minus = {found}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid resolution data ({} violation(s))", .0.len())]
pub struct InvalidResolution(pub Vec<Violation>);

impl ResolutionData {
    pub fn divisor(&self, id: &str) -> Option<&Divisor> {
        self.divisors.iter().find(|d| d.id == id)
    }
}

/// Reports every violated invariant; an empty list means the data is valid.
pub fn validate_resolution(r: &ResolutionData) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for d in &r.divisors {
        if !seen.insert(d.id.as_str()) {
            out.push(Violation::DuplicateDivisor { id: d.id.clone() });
        }
        if d.n == 0 {
            out.push(Violation::ZeroMultiplicity { id: d.id.clone() });
        }
        if d.nu == 0 {
            out.push(Violation::ZeroNu { id: d.id.clone() });
        }
    }
    for (idx, s) in r.strata.iter().enumerate() {
        if s.divisors.is_empty() {
            out.push(Violation::EmptyStratum { stratum: idx });
            continue;
        }
        let mut local = BTreeSet::new();
        let mut any_exceptional = false;
        for id in &s.divisors {
            if !local.insert(id.as_str()) {
                out.push(Violation::RepeatedDivisor { stratum: idx, id: id.clone() });
            }
            match r.divisor(id) {
                Some(d) => any_exceptional |= d.exceptional,
                None => out.push(Violation::UnknownDivisor { stratum: idx, id: id.clone() }),
            }
        }
        if !any_exceptional && s.divisors.iter().all(|id| r.divisor(id).is_some()) {
            out.push(Violation::NoExceptionalDivisor { stratum: idx });
        }
        let expected = 1u64.checked_shl(s.divisors.len() as u32).unwrap_or(u64::MAX);
        let found = s.alpha_plus.saturating_add(s.alpha_minus);
        if found != expected {
            out.push(Violation::ChamberCount { stratum: idx, expected, found });
        }
    }
    out
}

fn checked(r: &ResolutionData) -> Result<(), InvalidResolution> {
    let v = validate_resolution(r);
    if v.is_empty() {
        Ok(())
    } else {
        Err(InvalidResolution(v))
    }
}

fn factors(r: &ResolutionData, s: &Stratum) -> Vec<GeomFactor> {
    let mut out: Vec<GeomFactor> = s
        .divisors
        .iter()
        .map(|id| {
            let d = r.divisor(id).expect("validated");
            GeomFactor::new(d.n, Sign::parity(d.nu)).expect("validated N >= 1")
        })
        .collect();
    out.sort();
    out
}

fn evaluate(r: &ResolutionData, coeff: impl Fn(&Stratum) -> BigInt) -> RationalZeta {
    let mut z = RationalZeta::default();
    for s in &r.strata {
        let c = coeff(s);
        if s.chi_c == 0 {
            continue;
        }
        z.push(ZetaTerm::new(c, factors(r, s)).expect("nonempty stratum"));
    }
    z.simplified()
}

/// `Z = Σ (−2)^{|I|} χ^c ∏ (−1)^{ν_i} T^{N_i} / (1 − (−1)^{ν_i} T^{N_i})`.
pub fn dl_total(r: &ResolutionData) -> Result<RationalZeta, InvalidResolution> {
    checked(r)?;
    Ok(evaluate(r, |s| BigInt::from(-2).pow(s.divisors.len() as u32) * s.chi_c))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedZeta {
    pub plus: RationalZeta,
    pub minus: RationalZeta,
}

/// `Z± = Σ (−1)^{|I|} α± χ^c ∏ ...` over stratum components.
pub fn dl_signed(r: &ResolutionData) -> Result<SignedZeta, InvalidResolution> {
    checked(r)?;
    let sgn = |s: &Stratum| BigInt::from(Sign::parity(s.divisors.len() as u64).to_i64());
    Ok(SignedZeta {
        plus: evaluate(r, |s| sgn(s) * s.alpha_plus * s.chi_c),
        minus: evaluate(r, |s| sgn(s) * s.alpha_minus * s.chi_c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{expand_rational, TruncSeries};
    use alloc::string::ToString;
    use alloc::vec;

    fn div(id: &str, n: u64, nu: u64, exceptional: bool) -> Divisor {
        Divisor { id: id.to_string(), n, nu, exceptional }
    }

    fn st(ids: &[&str], chi_c: i64, ap: u64, am: u64) -> Stratum {
        Stratum {
            divisors: ids.iter().map(|s| s.to_string()).collect(),
            chi_c,
            alpha_plus: ap,
            alpha_minus: am,
        }
    }

    fn power(m: u64) -> ResolutionData {
        ResolutionData {
            divisors: vec![div("E", m, 1, true)],
            strata: vec![st(&["E"], 1, 2, 0)],
        }
    }

    #[test]
    fn single_point_total() {
        let z = expand_rational(&dl_total(&power(4)).unwrap(), 12).unwrap();
        assert_eq!(z, TruncSeries::from_i64s(&[0, 0, 0, 2, 0, 0, 0, -2, 0, 0, 0, 2]).unwrap());
        let s = dl_signed(&power(4)).unwrap();
        assert_eq!(expand_rational(&s.plus, 12).unwrap(), z);
        assert!(s.minus.terms().is_empty());
    }

    #[test]
    fn violations() {
        let mut r = power(2);
        r.strata[0].alpha_plus = 1;
        r.strata[0].alpha_minus = 2;
        assert_eq!(
            validate_resolution(&r),
            vec![Violation::ChamberCount { stratum: 0, expected: 2, found: 3 }]
        );
        let mut r = power(2);
        r.strata.push(st(&["F"], 1, 2, 0));
        assert_eq!(
            validate_resolution(&r),
            vec![Violation::UnknownDivisor { stratum: 1, id: "F".to_string() }]
        );
        assert!(dl_total(&r).is_err());
        let mut r = power(2);
        r.divisors[0].exceptional = false;
        assert_eq!(validate_resolution(&r), vec![Violation::NoExceptionalDivisor { stratum: 0 }]);
    }

    #[test]
    fn zero_euler_characteristic_vanishes() {
        let r = ResolutionData {
            divisors: vec![div("E", 2, 2, true)],
            strata: vec![st(&["E"], 0, 2, 0)],
        };
        assert!(dl_total(&r).unwrap().terms().is_empty());
        let s = dl_signed(&r).unwrap();
        assert!(s.plus.terms().is_empty() && s.minus.terms().is_empty());
    }
}
