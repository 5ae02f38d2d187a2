//! Univariate integer polynomials with exact real-root counting.
//!
//! Sturm chains are built with sign-preserving pseudo-remainders, so every
//! coefficient stays an integer. Signs at rational points are evaluated by
//! homogenised Horner over `BigInt`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `c[0] + c[1] Y + ...`, trailing zeros trimmed; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

/// An end of a real interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(BigRational),
    PosInf,
}

impl Poly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * BigInt::from(i))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
    }

    /// Divides by the (positive) content; signs are unchanged.
    pub fn primitive(&self) -> Poly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Poly::new(self.c.iter().map(|v| v / &g).collect())
    }

    /// `|lc(b)|^(deg a - deg b + 1) * a mod b`: a positive multiple of the
    /// true remainder, so Sturm sign patterns survive.
    pub fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lc().expect("nonzero").clone();
        let mut r = self.c.clone();
        let Some(da) = self.degree() else {
            return Poly::default();
        };
        if da < db {
            return self.clone();
        }
        let scale = lb.abs();
        let sgn = if lb.is_negative() { -BigInt::one() } else { BigInt::one() };
        let mut steps = 0;
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let lr = r[top].clone();
            for v in r.iter_mut() {
                *v *= &scale;
            }
            if !lr.is_zero() {
                let q = &lr * &sgn;
                let shift = top - db;
                for (i, bv) in b.c.iter().enumerate() {
                    r[shift + i] -= &q * bv;
                }
            }
            r.pop();
            steps += 1;
        }
        // r was multiplied `steps` times; bring it to the fixed exponent.
        for _ in steps..(da - db + 1) {
            for v in r.iter_mut() {
                *v *= &scale;
            }
        }
        Poly::new(r)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// No repeated complex root.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Sign of `p(num/den)` for `den > 0`.
    fn sign_at_fraction(&self, num: &BigInt, den: &BigInt) -> Ordering {
        // sum c_i num^i den^(d-i), Horner in num with den powers absorbed
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for v in self.c.iter().rev() {
            acc = acc * num + v * &den_pow;
            den_pow *= den;
        }
        acc.sign_cmp()
    }

    pub fn sign_at(&self, b: &Bound) -> Ordering {
        match b {
            Bound::At(q) => {
                let (n, d) = (q.numer(), q.denom());
                if d.is_negative() {
                    self.sign_at_fraction(&-n, &-d)
                } else {
                    self.sign_at_fraction(n, d)
                }
            }
            Bound::PosInf => self.lc().map_or(Ordering::Equal, |l| l.sign_cmp()),
            Bound::NegInf => {
                let s = self.lc().map_or(Ordering::Equal, |l| l.sign_cmp());
                if self.degree().unwrap_or(0) % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
        }
    }

    /// `p, p', -prem(p, p'), ...` with contents removed.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.primitive()];
        let d = self.derivative().primitive();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let neg = Poly::new(r.c.into_iter().map(|v| -v).collect());
            chain.push(neg.primitive());
        }
        chain
    }

    /// Number of distinct real roots in `(a, b]`, `a < b`, given neither end
    /// is a root when it is finite.
    pub fn count_roots(&self, a: &Bound, b: &Bound) -> usize {
        let chain = self.sturm_chain();
        variations(&chain, a).saturating_sub(variations(&chain, b))
    }

    /// Disjoint isolating intervals `(lo, hi)` for the real roots, ascending.
    /// Endpoints are never roots.
    pub fn isolate_roots(&self) -> Vec<(BigRational, BigRational)> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let p = self.primitive();
        let lc = p.lc().expect("nonzero").abs();
        let max = p.c.iter().map(Signed::abs).max().unwrap_or_default();
        let bound = BigRational::from_integer(BigInt::one() + max.div_ceil(&lc));
        let chain = p.sturm_chain();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = variations(&chain, &Bound::At(lo.clone()))
                .saturating_sub(variations(&chain, &Bound::At(hi.clone())));
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = split_point(&p, &lo, &hi);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// A non-root strictly inside `(lo, hi)`, preferring the midpoint.
fn split_point(p: &Poly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    let mut den = BigInt::from(2);
    loop {
        let mut num = BigInt::one();
        while num < den {
            let t = lo + &width * BigRational::new(num.clone(), den.clone());
            if p.sign_at(&Bound::At(t.clone())) != Ordering::Equal {
                return t;
            }
            num += 1;
        }
        den += 1;
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn variations(chain: &[Poly], at: &Bound) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for s in chain.iter().map(|p| p.sign_at(at)) {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Bound {
        Bound::At(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn pseudo_remainder_keeps_sign() {
        // (2Y^2 + 1) mod (-2Y + 1): true remainder 3/2
        let a = Poly::from_i64s(&[1, 0, 2]);
        let b = Poly::from_i64s(&[1, -2]);
        let r = a.pseudo_rem(&b);
        assert_eq!(r.degree(), Some(0));
        assert!(r.coeffs()[0].is_positive());
    }

    #[test]
    fn squarefree() {
        assert!(Poly::from_i64s(&[1, 1]).is_squarefree());
        assert!(Poly::from_i64s(&[-1, 0, 1]).is_squarefree());
        assert!(!Poly::from_i64s(&[1, 2, 1]).is_squarefree());
        // (Y^2 + 1)^2 has no real roots but is degenerate
        assert!(!Poly::from_i64s(&[1, 0, 2, 0, 1]).is_squarefree());
        assert!(Poly::from_i64s(&[5]).is_squarefree());
    }

    #[test]
    fn counts() {
        // (Y - 1)(Y + 2)(Y - 3) = Y^3 - 2Y^2 - 5Y + 6
        let p = Poly::from_i64s(&[6, -5, -2, 1]);
        assert_eq!(p.count_roots(&Bound::NegInf, &Bound::PosInf), 3);
        assert_eq!(p.count_roots(&q(0, 1), &Bound::PosInf), 2);
        assert_eq!(p.count_roots(&Bound::NegInf, &q(0, 1)), 1);
        assert_eq!(p.count_roots(&q(3, 2), &q(5, 2)), 0);
        assert_eq!(Poly::from_i64s(&[1, 0, 1]).count_roots(&Bound::NegInf, &Bound::PosInf), 0);
    }

    #[test]
    fn isolation() {
        let p = Poly::from_i64s(&[6, -5, -2, 1]);
        let roots = p.isolate_roots();
        assert_eq!(roots.len(), 3);
        let expected = [-2, 1, 3];
        for ((lo, hi), r) in roots.iter().zip(expected) {
            let r = BigRational::from_integer(r.into());
            assert!(lo < &r && &r < hi);
        }
        // close irrational roots of Y^2 - 2 and Y^2 - 3 combined
        let p = Poly::from_i64s(&[6, 0, -5, 0, 1]);
        assert_eq!(p.isolate_roots().len(), 4);
    }

    #[test]
    fn signs() {
        let p = Poly::from_i64s(&[1, -3, 0, 1]);
        assert_eq!(p.sign_at(&Bound::NegInf), Ordering::Less);
        assert_eq!(p.sign_at(&Bound::PosInf), Ordering::Greater);
        assert_eq!(p.sign_at(&q(1, 2)), Ordering::Less);
        assert_eq!(p.sign_at(&q(-1, 3)), Ordering::Greater);
    }
}
