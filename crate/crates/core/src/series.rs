//! Truncated integer power series without constant term, and the rational
//! closed forms (sums of products of geometric factors) they expand from.
//!
//! A series of order `N` stores exactly the coefficients of `T^1..T^N`.
//! Binary operations truncate to the smaller order; nothing is ever read or
//! written past the stored order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("a truncated series needs order >= 1")]
    ZeroOrder,
    #[error("cannot compare up to T^{upto}: series is only known up to T^{order}")]
    BeyondTruncation { upto: usize, order: usize },
    #[error("cannot extend a series of order {order} to order {requested}")]
    Extension { order: usize, requested: usize },
    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("coefficient of T^{index} is {value}, expected 0 or 1")]
    NonBinary { index: usize, value: BigInt },
    #[error("a closed-form term needs at least one geometric factor")]
    FactorlessTerm,
    #[error("geometric factor exponent must be >= 1")]
    ZeroExponent,
}

/// `c_1 T + c_2 T^2 + ... + c_N T^N + O(T^{N+1})` with unbounded integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    /// The zero series of the given order.
    ///
    /// Panics if `order == 0`.
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncated series need order >= 1");
        TruncSeries {
            coeffs: vec![BigInt::zero(); order],
        }
    }

    /// Builds a series from `c_1..c_N`; the order is the slice length.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroOrder);
        }
        Ok(TruncSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, SeriesError> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a series of the given order whose `n`-th coefficient is `f(n)`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> BigInt) -> Self {
        assert!(order >= 1, "truncated series need order >= 1");
        TruncSeries {
            coeffs: (1..=order).map(&mut f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `T^n`, `1 <= n <= order`.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        if n == 0 {
            None
        } else {
            self.coeffs.get(n - 1)
        }
    }

    /// `c_1..c_N`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| i + 1)
    }

    /// Drops coefficients beyond `order`. Extending is refused.
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        if order > self.order() {
            return Err(SeriesError::Extension {
                order: self.order(),
                requested: order,
            });
        }
        Ok(TruncSeries {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Reduces every coefficient into `{0, 1}`.
    pub fn mod2(&self) -> Self {
        let two = BigInt::from(2);
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.mod_floor(&two)).collect(),
        }
    }

    /// Whether coefficients `1..=upto` agree exactly.
    pub fn eq_upto(&self, other: &TruncSeries, upto: usize) -> Result<bool, SeriesError> {
        let order = self.order().min(other.order());
        if upto > order {
            return Err(SeriesError::BeyondTruncation { upto, order });
        }
        Ok(self.coeffs[..upto] == other.coeffs[..upto])
    }

    /// First index where the two series differ, within the common order.
    pub fn first_difference(&self, other: &TruncSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
    }

    /// Checks that every coefficient lies in `{0, 1}`.
    pub fn check_binary(&self) -> Result<(), SeriesError> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !(c.is_zero() || c.is_one()) {
                return Err(SeriesError::NonBinary {
                    index: i + 1,
                    value: c.clone(),
                });
            }
        }
        Ok(())
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;

    /// Cauchy product. Both factors have valuation >= 1, so the `T^n`
    /// coefficient only involves indices `i + j = n` with `i, j >= 1`.
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            // a is the coefficient of T^{i+1}
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let n = i + j + 2;
                if n > order {
                    break;
                }
                if !b.is_zero() {
                    out[n - 1] += a * b;
                }
            }
        }
        TruncSeries { coeffs: out }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = i + 1;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            if n == 1 {
                f.write_str("T")?;
            } else {
                write!(f, "T^{}", n)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(T^{})", self.order() + 1)
    }
}

/// `eps * T^exp / (1 - eps * T^exp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeomFactor {
    pub exp: u64,
    pub eps: Sign,
}

impl GeomFactor {
    pub fn new(exp: u64, eps: Sign) -> Result<Self, SeriesError> {
        if exp == 0 {
            return Err(SeriesError::ZeroExponent);
        }
        Ok(GeomFactor { exp, eps })
    }

    /// `sum_{k>=1} eps^k T^{k*exp}` up to `order`.
    pub fn expand(&self, order: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(order);
        let step = self.exp as usize;
        let mut k = 1u64;
        let mut n = step;
        while n <= order {
            s.coeffs[n - 1] = BigInt::from(self.eps.pow(k).to_i64());
            k += 1;
            n += step;
        }
        s
    }
}

/// `coeff * prod(factors)`; the factor list is never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZetaTerm {
    coeff: BigInt,
    factors: Vec<GeomFactor>,
}

impl ZetaTerm {
    pub fn new(coeff: BigInt, factors: Vec<GeomFactor>) -> Result<Self, SeriesError> {
        if factors.is_empty() {
            return Err(SeriesError::FactorlessTerm);
        }
        if factors.iter().any(|g| g.exp == 0) {
            return Err(SeriesError::ZeroExponent);
        }
        Ok(ZetaTerm { coeff, factors })
    }

    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    pub fn factors(&self) -> &[GeomFactor] {
        &self.factors
    }

    pub fn expand(&self, order: usize) -> TruncSeries {
        let mut it = self.factors.iter();
        // nonempty by construction
        let mut acc = it.next().map(|g| g.expand(order)).unwrap_or_else(|| TruncSeries::zero(order));
        for g in it {
            acc = &acc * &g.expand(order);
        }
        acc.scale(&self.coeff)
    }
}

/// A finite sum of [`ZetaTerm`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalZeta {
    terms: Vec<ZetaTerm>,
}

impl RationalZeta {
    pub fn new(terms: Vec<ZetaTerm>) -> Self {
        RationalZeta { terms }
    }

    pub fn terms(&self) -> &[ZetaTerm] {
        &self.terms
    }

    pub fn push(&mut self, term: ZetaTerm) {
        self.terms.push(term);
    }

    /// Concatenation of term lists.
    pub fn union(&self, other: &RationalZeta) -> RationalZeta {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        RationalZeta { terms }
    }

    /// Merges terms with identical factor multisets and drops zero terms.
    pub fn simplified(&self) -> RationalZeta {
        let mut merged: Vec<(Vec<GeomFactor>, BigInt)> = Vec::new();
        for t in &self.terms {
            let mut key = t.factors.clone();
            key.sort();
            match merged.iter_mut().find(|(k, _)| *k == key) {
                Some((_, c)) => *c += &t.coeff,
                None => merged.push((key, t.coeff.clone())),
            }
        }
        RationalZeta {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(factors, coeff)| ZetaTerm { coeff, factors })
                .collect(),
        }
    }
}

/// Expands a closed form into its truncated series.
pub fn expand_rational(r: &RationalZeta, order: usize) -> Result<TruncSeries, SeriesError> {
    if order == 0 {
        return Err(SeriesError::ZeroOrder);
    }
    let mut acc = TruncSeries::zero(order);
    for t in &r.terms {
        acc = &acc + &t.expand(order);
    }
    Ok(acc)
}

impl fmt::Display for RationalZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            if idx == 0 {
                if t.coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else if t.coeff.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write!(f, "{}", t.coeff.abs())?;
            for g in &t.factors {
                match g.eps {
                    Sign::Plus => write!(f, "*T^{}/(1-T^{})", g.exp, g.exp)?,
                    Sign::Minus => write!(f, "*(-T^{})/(1+T^{})", g.exp, g.exp)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> TruncSeries {
        TruncSeries::from_i64s(c).unwrap()
    }

    #[test]
    fn add_cancels_and_keeps_order() {
        let a = s(&[1, -1, 0, 0]);
        let b = s(&[0, 1, 0, 0]);
        assert_eq!(&a + &b, s(&[1, 0, 0, 0]));
        assert_eq!((&a + &TruncSeries::zero(4)), a);
    }

    #[test]
    fn add_truncates_to_min_order() {
        let a = s(&[1, 2, 3]);
        let b = s(&[1, 1]);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn total_zeta_of_cube_is_twice_the_halves() {
        let half = GeomFactor::new(3, Sign::Minus).unwrap().expand(12).scale(&BigInt::from(-1));
        assert_eq!(half, s(&[0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, -1]));
        let total = &half + &half;
        assert_eq!(total, s(&[0, 0, 2, 0, 0, -2, 0, 0, 2, 0, 0, -2]));
        assert_eq!(half.scale(&BigInt::from(2)), total);
    }

    #[test]
    fn mul_by_zero_and_valuation_two() {
        let a = s(&[2, -2, 2, -2, 2, -2]);
        assert!((&a * &TruncSeries::zero(6)).is_zero());
        let sq = &a * &a;
        assert_eq!(sq, s(&[0, 4, -8, 12, -16, 20]));
    }

    #[test]
    fn scale_involution() {
        let a = s(&[3, -1, 4, 1, -5]);
        let m1 = BigInt::from(-1);
        assert_eq!(a.scale(&m1).scale(&m1), a);
        assert!(a.scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn expand_examples() {
        let one = |exp, eps| GeomFactor::new(exp, eps).unwrap();
        let r = RationalZeta::new(vec![ZetaTerm::new(BigInt::from(-2), vec![one(3, Sign::Minus)]).unwrap()]);
        assert_eq!(
            expand_rational(&r, 10).unwrap(),
            s(&[0, 0, 2, 0, 0, -2, 0, 0, 2, 0])
        );
        let r = RationalZeta::new(vec![ZetaTerm::new(
            BigInt::from(4),
            vec![one(1, Sign::Minus), one(1, Sign::Minus)],
        )
        .unwrap()]);
        assert_eq!(expand_rational(&r, 6).unwrap(), s(&[0, 4, -8, 12, -16, 20]));
        let r = RationalZeta::new(vec![ZetaTerm::new(BigInt::one(), vec![one(1, Sign::Plus)]).unwrap()]);
        assert_eq!(expand_rational(&r, 5).unwrap(), s(&[1, 1, 1, 1, 1]));
        assert_eq!(expand_rational(&r, 0), Err(SeriesError::ZeroOrder));
    }

    #[test]
    fn factorless_terms_are_rejected() {
        assert_eq!(ZetaTerm::new(BigInt::one(), vec![]), Err(SeriesError::FactorlessTerm));
        assert_eq!(GeomFactor::new(0, Sign::Plus), Err(SeriesError::ZeroExponent));
    }

    #[test]
    fn mod2_examples() {
        assert!(s(&[0, 4, -8, 12]).mod2().is_zero());
        assert_eq!(s(&[2, -3]).mod2(), s(&[0, 1]));
        assert!(s(&[0, 1, 1]).check_binary().is_ok());
        assert!(s(&[0, 2]).check_binary().is_err());
    }

    #[test]
    fn eq_upto_guards_truncation() {
        let a = s(&[0, 0, 2, 0]);
        let b = s(&[0, 0, 2, 1, 7]);
        assert_eq!(a.eq_upto(&b, 3), Ok(true));
        assert_eq!(a.eq_upto(&b, 4), Ok(false));
        assert_eq!(
            a.eq_upto(&b, 5),
            Err(SeriesError::BeyondTruncation { upto: 5, order: 4 })
        );
        assert_eq!(a.eq_upto(&a, 4), Ok(true));
    }

    #[test]
    fn truncate_refuses_extension() {
        let a = s(&[1, 2, 3]);
        assert_eq!(a.truncate(2).unwrap(), s(&[1, 2]));
        assert!(a.truncate(4).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(s(&[0, 2, -1, 0]).to_string(), "2T^2 - T^3 + O(T^5)");
        assert_eq!(s(&[-1]).to_string(), "-T + O(T^2)");
        assert_eq!(TruncSeries::zero(2).to_string(), "0 + O(T^3)");
    }

    #[test]
    fn simplified_merges_like_terms() {
        let g = GeomFactor::new(2, Sign::Plus).unwrap();
        let h = GeomFactor::new(3, Sign::Minus).unwrap();
        let r = RationalZeta::new(vec![
            ZetaTerm::new(BigInt::from(2), vec![g, h]).unwrap(),
            ZetaTerm::new(BigInt::from(-2), vec![h, g]).unwrap(),
            ZetaTerm::new(BigInt::from(1), vec![g]).unwrap(),
        ]);
        let simp = r.simplified();
        assert_eq!(simp.terms().len(), 1);
        assert_eq!(expand_rational(&simp, 12), expand_rational(&r, 12));
    }
}
