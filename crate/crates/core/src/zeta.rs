//! Zeta triples `(Z+, Z-)` of germs and the combinators acting on them:
//! monomial and normal-crossing closed forms, both Thom–Sebastiani
//! formulas, the modified-zeta transform and its inverse, the product rule,
//! suspension inversion, recovery of a power factor, and mod-2 reduction.
//!
//! Notation used below, for a triple with coefficients `a+_n`, `a-_n`:
//! `a_n = a+_n + a-_n`, `A_0 = 1`, `A_n = 1 - (a_1 + ... + a_n)`, and the
//! modified coefficients are `Ã±_n = A_n + a±_n`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::germ::BrieskornGerm;
use crate::series::{expand_rational, GeomFactor, RationalZeta, SeriesError, TruncSeries, ZetaTerm};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZetaError {
    #[error("order {order} is below the exponent {exp}; no coefficient is representable")]
    OrderBelowExponent { order: usize, exp: u32 },
    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("normal-crossing data needs at least one exponent")]
    NoExponents,
    #[error("exponents must be >= 1")]
    ZeroExponent,
    #[error("suspension by x^{0} cannot be inverted: exponent must be even")]
    OddSuspension(u32),
    #[error("truncation order {order} exhausted before the exponent could be pinned down")]
    Inconclusive { order: usize },
    #[error("recovered data is not the suspension of a monomial (mismatch at T^{index})")]
    NotAMonomialSuspension { index: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn check_orders(left: usize, right: usize) -> Result<usize, ZetaError> {
    if left != right {
        Err(ZetaError::OrderMismatch { left, right })
    } else {
        Ok(left)
    }
}

/// `(Z+, Z-)` sharing one truncation order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZetaTriple {
    plus: TruncSeries,
    minus: TruncSeries,
}

impl ZetaTriple {
    pub fn new(plus: TruncSeries, minus: TruncSeries) -> Result<Self, ZetaError> {
        check_orders(plus.order(), minus.order())?;
        Ok(ZetaTriple { plus, minus })
    }

    pub fn zero(order: usize) -> Self {
        ZetaTriple {
            plus: TruncSeries::zero(order),
            minus: TruncSeries::zero(order),
        }
    }

    pub fn order(&self) -> usize {
        self.plus.order()
    }

    pub fn plus(&self) -> &TruncSeries {
        &self.plus
    }

    pub fn minus(&self) -> &TruncSeries {
        &self.minus
    }

    /// `Z = Z+ + Z-`.
    pub fn total(&self) -> TruncSeries {
        &self.plus + &self.minus
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn truncate(&self, order: usize) -> Result<Self, ZetaError> {
        Ok(ZetaTriple {
            plus: self.plus.truncate(order)?,
            minus: self.minus.truncate(order)?,
        })
    }

    /// Swaps `Z+` and `Z-`, i.e. the triple of `-f`.
    pub fn swapped(&self) -> Self {
        ZetaTriple {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// `a±_n ≡ 0 mod 2` pattern; germ-derived triples satisfy `Z+ ≡ Z- mod 2`.
    pub fn halves_agree_mod2(&self) -> bool {
        self.plus.mod2() == self.minus.mod2()
    }
}

/// `(Z̃+, Z̃-)`: coefficients `Ã±_n` for `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModifiedTriple {
    tplus: TruncSeries,
    tminus: TruncSeries,
}

impl ModifiedTriple {
    pub fn new(tplus: TruncSeries, tminus: TruncSeries) -> Result<Self, ZetaError> {
        check_orders(tplus.order(), tminus.order())?;
        Ok(ModifiedTriple { tplus, tminus })
    }

    /// The modified image of the zero triple: `Ã±_n = 1` for all `n`.
    pub fn ones(order: usize) -> Self {
        let one = TruncSeries::from_fn(order, |_| BigInt::one());
        ModifiedTriple {
            tplus: one.clone(),
            tminus: one,
        }
    }

    pub fn order(&self) -> usize {
        self.tplus.order()
    }

    pub fn tplus(&self) -> &TruncSeries {
        &self.tplus
    }

    pub fn tminus(&self) -> &TruncSeries {
        &self.tminus
    }

    fn at(&self, n: usize) -> (&BigInt, &BigInt) {
        (&self.tplus.coeffs()[n - 1], &self.tminus.coeffs()[n - 1])
    }
}

/// Zeta triple of `±x^m`.
pub fn zeta_monomial(m: u32, sign: Sign, order: usize) -> Result<ZetaTriple, ZetaError> {
    if m == 0 {
        return Err(ZetaError::ZeroExponent);
    }
    if order < m as usize {
        return Err(ZetaError::OrderBelowExponent { order, exp: m });
    }
    zeta_normal_crossing(&[m], sign, order)
}

/// Zeta triple of `u(x) * x_1^{N_1} ... x_k^{N_k}` with `sign(u(0)) = unit_sign`.
pub fn zeta_normal_crossing(exps: &[u32], unit_sign: Sign, order: usize) -> Result<ZetaTriple, ZetaError> {
    if exps.is_empty() {
        return Err(ZetaError::NoExponents);
    }
    if order == 0 {
        return Err(SeriesError::ZeroOrder.into());
    }
    let factors = exps
        .iter()
        .map(|&n| GeomFactor::new(u64::from(n), Sign::Minus))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ZetaError::ZeroExponent)?;
    let coeff = BigInt::from(-2).pow(exps.len() as u32);
    let closed = RationalZeta::new(vec![ZetaTerm::new(coeff, factors)?]);
    let total = expand_rational(&closed, order)?;
    if exps.iter().any(|n| n % 2 == 1) {
        let half = TruncSeries::from_fn(order, |n| &total.coeffs()[n - 1] / 2);
        return Ok(ZetaTriple {
            plus: half.clone(),
            minus: half,
        });
    }
    let zero = TruncSeries::zero(order);
    Ok(match unit_sign {
        Sign::Plus => ZetaTriple { plus: total, minus: zero },
        Sign::Minus => ZetaTriple { plus: zero, minus: total },
    })
}

/// `A_0..A_order` for the total coefficients of `z`.
fn a_partials(z: &ZetaTriple) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(z.order() + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for (p, m) in z.plus.coeffs().iter().zip(z.minus.coeffs()) {
        acc -= p;
        acc -= m;
        out.push(acc.clone());
    }
    out
}

/// Thom–Sebastiani for `f(x) + g(y)` in the coefficientwise form.
pub fn ts_combine(a: &ZetaTriple, b: &ZetaTriple) -> Result<ZetaTriple, ZetaError> {
    let order = check_orders(a.order(), b.order())?;
    let big_a = a_partials(a);
    let big_b = a_partials(b);
    let mut plus = Vec::with_capacity(order);
    let mut minus = Vec::with_capacity(order);
    // cross_n = sum_{i<=n} (-1)^{n-i} (a+_i b-_i + a-_i b+_i) = x_n - cross_{n-1}
    let mut cross = BigInt::zero();
    for n in 1..=order {
        let (ap, am) = (&a.plus.coeffs()[n - 1], &a.minus.coeffs()[n - 1]);
        let (bp, bm) = (&b.plus.coeffs()[n - 1], &b.minus.coeffs()[n - 1]);
        let x = ap * bm + am * bp;
        cross = x - cross;
        plus.push(ap * bp + ap * &big_b[n] + &big_a[n] * bp + &cross);
        minus.push(am * bm + am * &big_b[n] + &big_a[n] * bm + &cross);
    }
    Ok(ZetaTriple {
        plus: TruncSeries::from_coeffs(plus)?,
        minus: TruncSeries::from_coeffs(minus)?,
    })
}

pub fn to_modified(z: &ZetaTriple) -> ModifiedTriple {
    let big_a = a_partials(z);
    let order = z.order();
    ModifiedTriple {
        tplus: TruncSeries::from_fn(order, |n| &big_a[n] + &z.plus.coeffs()[n - 1]),
        tminus: TruncSeries::from_fn(order, |n| &big_a[n] + &z.minus.coeffs()[n - 1]),
    }
}

/// Exact inverse of [`to_modified`].
///
/// From `Ã+_n = A_{n-1} - a-_n` and `Ã-_n = A_{n-1} - a+_n` the coefficients
/// are solved one index at a time.
pub fn from_modified(m: &ModifiedTriple) -> ZetaTriple {
    let order = m.order();
    let mut plus = Vec::with_capacity(order);
    let mut minus = Vec::with_capacity(order);
    let mut prev = BigInt::one();
    for n in 1..=order {
        let (tp, tm) = m.at(n);
        let am = &prev - tp;
        let ap = &prev - tm;
        prev = prev - &ap - &am;
        plus.push(ap);
        minus.push(am);
    }
    ZetaTriple {
        plus: TruncSeries::from_coeffs(plus).expect("order >= 1"),
        minus: TruncSeries::from_coeffs(minus).expect("order >= 1"),
    }
}

/// Thom–Sebastiani in modified form: termwise products.
pub fn ts_combine_modified(a: &ModifiedTriple, b: &ModifiedTriple) -> Result<ModifiedTriple, ZetaError> {
    check_orders(a.order(), b.order())?;
    let order = a.order();
    Ok(ModifiedTriple {
        tplus: TruncSeries::from_fn(order, |n| &a.tplus.coeffs()[n - 1] * &b.tplus.coeffs()[n - 1]),
        tminus: TruncSeries::from_fn(order, |n| &a.tminus.coeffs()[n - 1] * &b.tminus.coeffs()[n - 1]),
    })
}

/// Zeta triple of `f_1(x) * f_2(y)`.
///
/// Uses `Z- = Z1+ Z2- + Z1- Z2+`; the symmetric form, cross-checked against
/// the normal-crossing closed form.
pub fn zeta_product(a: &ZetaTriple, b: &ZetaTriple) -> Result<ZetaTriple, ZetaError> {
    check_orders(a.order(), b.order())?;
    let plus = &(&a.plus * &b.plus) + &(&a.minus * &b.minus);
    let minus = &(&a.plus * &b.minus) + &(&a.minus * &b.plus);
    Ok(ZetaTriple { plus, minus })
}

/// Closed form of `Ã±_n` for `±x^m`, as `(Ã+_n, Ã-_n)`.
pub fn modified_monomial_coeff(m: u32, sign: Sign, n: usize) -> (i64, i64) {
    let m = m as usize;
    let alt = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    if m % 2 == 1 {
        let v = if n.is_multiple_of(m) { 0 } else { alt(n / m) };
        return (v, v);
    }
    let upper = alt((n - 1) / m);
    let lower = alt(n / m);
    match sign {
        Sign::Plus => (upper, lower),
        Sign::Minus => (lower, upper),
    }
}

/// Modified triple of `±x^m` through the closed form, valid at any order.
pub fn modified_monomial(m: u32, sign: Sign, order: usize) -> ModifiedTriple {
    ModifiedTriple {
        tplus: TruncSeries::from_fn(order, |n| BigInt::from(modified_monomial_coeff(m, sign, n).0)),
        tminus: TruncSeries::from_fn(order, |n| BigInt::from(modified_monomial_coeff(m, sign, n).1)),
    }
}

/// Modified triple of a Brieskorn germ: the termwise product over its
/// monomials. Unlike [`zeta_brieskorn`] any order is accepted.
pub fn modified_brieskorn(g: &BrieskornGerm, order: usize) -> Result<ModifiedTriple, ZetaError> {
    let mut acc = ModifiedTriple::ones(order);
    for t in g.terms() {
        acc = ts_combine_modified(&acc, &modified_monomial(t.exp, t.sign, order))?;
    }
    Ok(acc)
}

/// Zeta triple of `±x_1^{p_1} ± ... ± x_d^{p_d}`.
pub fn zeta_brieskorn(g: &BrieskornGerm, order: usize) -> Result<ZetaTriple, ZetaError> {
    let max = g.max_exponent();
    if order < max as usize {
        return Err(ZetaError::OrderBelowExponent { order, exp: max });
    }
    Ok(from_modified(&modified_brieskorn(g, order)?))
}

/// Removes a suspending `±x^m` (`m` even) from the modified triple of
/// `±x^m + g`. All `Ã±_n` of `±x^m` are `±1`, so division is multiplication.
pub fn unsuspend_even(m: u32, msign: Sign, c: &ModifiedTriple) -> Result<ModifiedTriple, ZetaError> {
    if m % 2 == 1 {
        return Err(ZetaError::OddSuspension(m));
    }
    let order = c.order();
    if order < m as usize {
        return Err(ZetaError::OrderBelowExponent { order, exp: m });
    }
    let a = to_modified(&zeta_monomial(m, msign, order)?);
    ts_combine_modified(c, &a)
}

/// Sign of a recovered power factor `±y^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorSign {
    Plus,
    Minus,
    /// `r` is even but every multiple of `r` is hidden by an odd exponent of `f`.
    Unknown,
}

/// Outcome of [`recover_power_factor`]. Odd `r` carry `FactorSign::Plus`,
/// the Klein normal form of an odd-exponent term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PowerFactor {
    pub r: u32,
    pub sign: FactorSign,
}

fn odd_primes(g: &BrieskornGerm) -> BTreeSet<u64> {
    let mut primes = BTreeSet::new();
    for e in g.exponents().filter(|e| e % 2 == 1) {
        let mut e = u64::from(e);
        let mut p = 3;
        while p * p <= e {
            while e % p == 0 {
                primes.insert(p);
                e /= p;
            }
            p += 2;
        }
        if e > 1 {
            primes.insert(e);
        }
    }
    primes
}

/// Scan-order requirement for a candidate `r`: `2 r m'' + 2`, with `m''` the
/// product of the odd primes of `f` not dividing `r`.
pub fn recovery_bound(f: &BrieskornGerm, r: u32) -> usize {
    let m2: u64 = odd_primes(f).into_iter().filter(|p| u64::from(r) % p != 0).product();
    (2 * u64::from(r) * m2 + 2) as usize
}

/// Given `f` and the modified triple of `f * (±y^r)`, recovers `r` and, when
/// it is determined, the sign of `y^r`.
///
/// Follows the elimination order: on `U = N \ (odd primes of f)N` the
/// coefficients `B̃±_n` of `±y^r` are known; a zero `B̃+_n` pins an odd `r`,
/// a split `B̃+_n != B̃-_n` pins an even `r`, and otherwise `r` is a multiple
/// of an odd prime of `f` located by a sign change `B̃_{n-1} = -B̃_{n+1}`
/// around some multiple of `r`. Candidates up to `r_max` are verified against
/// all recovered coefficients; ambiguity is reported as `Inconclusive`.
pub fn recover_power_factor(f: &BrieskornGerm, c: &ModifiedTriple, r_max: u32) -> Result<PowerFactor, ZetaError> {
    let order = c.order();
    let fa = modified_brieskorn(f, order)?;
    let primes = odd_primes(f);
    let odd_exps: Vec<usize> = f.exponents().filter(|e| e % 2 == 1).map(|e| e as usize).collect();
    let in_u = |n: usize| primes.iter().all(|&p| !(n as u64).is_multiple_of(p));
    let visible = |n: usize| odd_exps.iter().all(|&m| !n.is_multiple_of(m));

    // B̃±_n for every n where f's modified coefficients are ±1.
    let b: Vec<Option<(i64, i64)>> = (1..=order)
        .map(|n| {
            if !visible(n) {
                return None;
            }
            let (ap, am) = fa.at(n);
            let (cp, cm) = c.at(n);
            let to_i = |v: BigInt| -> i64 { i64::try_from(v).unwrap_or(i64::MAX) };
            Some((to_i(cp * ap), to_i(cm * am)))
        })
        .collect();
    let bt = |n: usize| b[n - 1];

    let consistent = |r: u32, sign: Sign| -> Option<usize> {
        (1..=order).find(|&n| match bt(n) {
            Some(obs) => obs != modified_monomial_coeff(r, sign, n),
            None => false,
        })
    };
    let verified = |r: u32, sign: Sign, out: FactorSign| -> Result<PowerFactor, ZetaError> {
        match consistent(r, sign) {
            None => Ok(PowerFactor { r, sign: out }),
            Some(index) => Err(ZetaError::NotAMonomialSuspension { index }),
        }
    };

    for n in (1..=order).filter(|&n| in_u(n)) {
        let (bp, bm) = bt(n).expect("U is visible");
        if bp == 0 {
            return verified(n as u32, Sign::Plus, FactorSign::Plus);
        }
        if bp != bm {
            let sign = if modified_monomial_coeff(n as u32, Sign::Plus, n) == (bp, bm) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let out = if sign.is_plus() { FactorSign::Plus } else { FactorSign::Minus };
            return verified(n as u32, sign, out);
        }
    }

    // Every multiple of r avoids U: look for the first sign change.
    let change = (2..order).find(|&n| {
        !in_u(n)
            && in_u(n - 1)
            && in_u(n + 1)
            && bt(n - 1).map(|v| v.0) == bt(n + 1).map(|v| -v.0)
    });
    let Some(n0) = change else {
        return Err(ZetaError::Inconclusive { order });
    };
    let candidates: Vec<u32> = (2..=r_max.min(n0 as u32))
        .filter(|r| n0 % (*r as usize) == 0)
        .filter(|r| primes.iter().any(|p| u64::from(*r) % p == 0))
        .filter(|&r| {
            (1..=order)
                .filter(|&n| in_u(n))
                .all(|n| bt(n).map(|v| v.0) == Some(modified_monomial_coeff(r, Sign::Plus, n).0))
        })
        .collect();
    let [r] = candidates[..] else {
        return Err(ZetaError::Inconclusive { order });
    };
    if r % 2 == 1 {
        return verified(r, Sign::Plus, FactorSign::Plus);
    }
    // Sign from a visible multiple of r, if any.
    let witness = (1..=order / r as usize).map(|j| j * r as usize).find(|&n| bt(n).is_some());
    match witness {
        Some(n) => {
            let sign = if bt(n) == Some(modified_monomial_coeff(r, Sign::Plus, n)) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let out = if sign.is_plus() { FactorSign::Plus } else { FactorSign::Minus };
            verified(r, sign, out)
        }
        None => {
            let hidden = odd_exps.iter().any(|&m| (r as usize).is_multiple_of(m));
            if !hidden {
                // a visible multiple exists but lies beyond the order
                return Err(ZetaError::Inconclusive { order });
            }
            verified(r, Sign::Plus, FactorSign::Unknown)
        }
    }
}

/// Mod-2 Thom–Sebastiani: `1 + c_n ≡ (1 + a_n)(1 + b_n)`.
pub fn ts_mod2(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries, ZetaError> {
    let order = check_orders(a.order(), b.order())?;
    a.check_binary()?;
    b.check_binary()?;
    let two = BigInt::from(2);
    Ok(TruncSeries::from_fn(order, |n| {
        let (x, y) = (&a.coeffs()[n - 1], &b.coeffs()[n - 1]);
        (x + y + x * y).mod_floor(&two)
    }))
}
