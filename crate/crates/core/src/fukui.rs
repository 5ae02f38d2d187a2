//! Fukui invariants `A(f)`, `A+(f)`, `A-(f)` as eventually periodic subsets
//! of `N ∪ {∞}` with `N = {1, 2, ...}`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use num_integer::Integer;

use crate::germ::BrieskornGerm;
use crate::resolution::{validate_resolution, InvalidResolution, ResolutionData};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithSetError {
    #[error("period must be >= 1")]
    ZeroPeriod,
    #[error("residue table has {found} entries, period is {period}")]
    ResidueLength { period: usize, found: usize },
}

/// Membership is `transient[n-1]` for `1 <= n <= L` and `residues[n mod P]`
/// for `n > L`. Always stored canonically (minimal `P`, then minimal `L`), so
/// derived equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArithSet {
    transient: Vec<bool>,
    period: usize,
    residues: Vec<bool>,
    infinity: bool,
}

impl ArithSet {
    pub fn from_parts(
        transient: Vec<bool>,
        period: usize,
        residues: Vec<bool>,
        infinity: bool,
    ) -> Result<Self, ArithSetError> {
        if period == 0 {
            return Err(ArithSetError::ZeroPeriod);
        }
        if residues.len() != period {
            return Err(ArithSetError::ResidueLength { period, found: residues.len() });
        }
        Ok(ArithSet { transient, period, residues, infinity }.canonical())
    }

    /// Builds from a membership predicate known to be `period`-periodic
    /// beyond `transient_max`.
    pub fn from_fn(transient_max: usize, period: usize, infinity: bool, f: impl Fn(usize) -> bool) -> Self {
        let transient = (1..=transient_max).map(&f).collect();
        let base = transient_max + 1;
        let mut residues = vec![false; period];
        for n in base..base + period {
            residues[n % period] = f(n);
        }
        ArithSet { transient, period, residues, infinity }.canonical()
    }

    pub fn empty() -> Self {
        ArithSet::from_fn(0, 1, false, |_| false)
    }

    /// `{∞}`.
    pub fn infinity_only() -> Self {
        ArithSet::from_fn(0, 1, true, |_| false)
    }

    /// `aN = {a, 2a, ...}`, without `∞`.
    pub fn multiples(a: u64) -> Self {
        let a = a.max(1) as usize;
        ArithSet::from_fn(0, a, false, |n| n % a == 0)
    }

    /// `N_{>=a}`, without `∞`.
    pub fn at_least(a: u64) -> Self {
        let a = a.max(1) as usize;
        ArithSet::from_fn(a - 1, 1, false, |n| n >= a)
    }

    pub fn finite(elems: &[u64]) -> Self {
        let max = elems.iter().copied().max().unwrap_or(0) as usize;
        let set: BTreeSet<usize> = elems.iter().map(|&e| e as usize).collect();
        ArithSet::from_fn(max, 1, false, |n| set.contains(&n))
    }

    pub fn with_infinity(mut self, infinity: bool) -> Self {
        self.infinity = infinity;
        self
    }

    pub fn transient_max(&self) -> usize {
        self.transient.len()
    }

    pub fn transient_bits(&self) -> &[bool] {
        &self.transient
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residue_bits(&self) -> &[bool] {
        &self.residues
    }

    pub fn has_infinity(&self) -> bool {
        self.infinity
    }

    /// Membership of a finite `n`; `0` is never a member.
    pub fn contains(&self, n: u64) -> bool {
        let n = n as usize;
        match n {
            0 => false,
            n if n <= self.transient.len() => self.transient[n - 1],
            n => self.residues[n % self.period],
        }
    }

    fn canonical(mut self) -> Self {
        let p = self.period;
        let best = (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (0..p).all(|r| self.residues[r] == self.residues[r % d]))
            .unwrap_or(p);
        if best != p {
            self.residues.truncate(best);
            self.period = best;
        }
        while let Some(&last) = self.transient.last() {
            let n = self.transient.len();
            if last != self.residues[n % self.period] {
                break;
            }
            self.transient.pop();
        }
        self
    }

    /// Window past which both operands are periodic for a common period.
    fn joint(&self, other: &ArithSet) -> (usize, usize) {
        (
            self.transient.len().max(other.transient.len()),
            self.period.lcm(&other.period),
        )
    }

    pub fn union(&self, other: &ArithSet) -> ArithSet {
        let (l, p) = self.joint(other);
        ArithSet::from_fn(l, p, self.infinity || other.infinity, |n| {
            self.contains(n as u64) || other.contains(n as u64)
        })
    }

    pub fn intersect(&self, other: &ArithSet) -> ArithSet {
        let (l, p) = self.joint(other);
        ArithSet::from_fn(l, p, self.infinity && other.infinity, |n| {
            self.contains(n as u64) && other.contains(n as u64)
        })
    }

    pub fn is_empty(&self) -> bool {
        !self.infinity && self.min_finite().is_none()
    }

    /// `A + B = {a + b}` with `a + ∞ = ∞`.
    pub fn minkowski(&self, other: &ArithSet) -> ArithSet {
        let p = self.period.lcm(&other.period);
        let l = self.transient.len() + other.transient.len() + 2 * p;
        let left: Vec<usize> = (1..=l + p).filter(|&n| self.contains(n as u64)).collect();
        let right: Vec<bool> = (0..=l + p).map(|n| other.contains(n as u64)).collect();
        let infinity = (self.infinity && !other.is_empty()) || (other.infinity && !self.is_empty());
        ArithSet::from_fn(l, p, infinity, |n| left.iter().take_while(|&&x| x < n).any(|&x| right[n - x]))
    }

    /// Least finite element; `None` stands for `∞` (or no finite element).
    pub fn min_finite(&self) -> Option<u64> {
        let l = self.transient.len();
        (1..=l + self.period).find(|&n| self.contains(n as u64)).map(|n| n as u64)
    }

    /// `M + N`: `N_{>=M+1}` for finite `M`, `{∞}` for `M = ∞`.
    pub fn shifted_naturals(m: Option<u64>) -> ArithSet {
        match m {
            Some(m) => ArithSet::at_least(m + 1),
            None => ArithSet::infinity_only(),
        }
    }

    fn covered_by(&self, a: usize) -> bool {
        // aN ⊆ self
        let l = self.transient.len();
        let q = self.period.lcm(&a);
        (1..=(l + q) / a + 1).all(|j| self.contains((j * a) as u64))
    }
}

impl fmt::Display for ArithSet {
    /// Progressions `aN`, then stray elements, then a tail `N≥t` (or residue
    /// classes), then `{∞}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.transient.len();
        let p = self.period;
        let tail = self.residues.iter().all(|&b| b).then(|| {
            let mut t = l + 1;
            while t > 1 && self.contains((t - 1) as u64) {
                t -= 1;
            }
            t
        });
        let horizon = tail.unwrap_or(l + p + 1);
        let mut progs: Vec<usize> = Vec::new();
        for a in 1..horizon {
            if !self.contains(a as u64) || progs.iter().any(|b| a % b == 0) {
                continue;
            }
            // beside a tail, short progressions read better as singletons
            if (tail.is_none() || 2 * a < horizon) && self.covered_by(a) {
                progs.push(a);
            }
        }
        let in_prog = |n: usize| progs.iter().any(|b| n.is_multiple_of(*b));
        let tail = tail.map(|mut t| {
            while in_prog(t) {
                t += 1;
            }
            t
        });
        let limit = tail.unwrap_or(l + 1);
        let singles: Vec<usize> = (1..limit).filter(|&n| self.contains(n as u64) && !in_prog(n)).collect();
        let mut classes: Option<(usize, usize, Vec<usize>)> = None;
        if tail.is_none() {
            let q = progs.iter().fold(p, |acc, b| acc.lcm(b));
            let rs: Vec<usize> = (l + 1..=l + q)
                .filter(|&n| self.contains(n as u64) && !in_prog(n))
                .map(|n| n % q)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if !rs.is_empty() {
                classes = Some((l, q, rs));
            }
        }

        let mut parts: Vec<String> = Vec::new();
        for a in &progs {
            parts.push(if *a == 1 { String::from("N") } else { alloc::format!("{a}N") });
        }
        if !singles.is_empty() {
            let mut s = String::from("{");
            for (i, n) in singles.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{n}");
            }
            s.push('}');
            parts.push(s);
        }
        if let Some(t) = tail {
            parts.push(if t == 1 { String::from("N") } else { alloc::format!("N≥{t}") });
        }
        if let Some((l, q, rs)) = classes {
            let mut s = alloc::format!("{{n > {l} : n ≡ ");
            for (i, r) in rs.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{r}");
            }
            let _ = write!(s, " mod {q}}}");
            parts.push(s);
        }
        if self.infinity {
            parts.push(String::from("{∞}"));
        }
        if parts.is_empty() {
            return f.write_str("∅");
        }
        f.write_str(&parts.join(" ∪ "))
    }
}

/// `(A, A+, A-)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FukuiTriple {
    pub total: ArithSet,
    pub plus: ArithSet,
    pub minus: ArithSet,
}

impl FukuiTriple {
    /// `A = A+ ∪ A-`.
    pub fn from_signed(plus: ArithSet, minus: ArithSet) -> Self {
        FukuiTriple { total: plus.union(&minus), plus, minus }
    }

    /// The triple of `-f`.
    pub fn swapped(&self) -> Self {
        FukuiTriple {
            total: self.total.clone(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }
}

pub fn fukui_monomial(m: u32, sign: Sign) -> FukuiTriple {
    let a = ArithSet::multiples(u64::from(m)).with_infinity(true);
    let inf = ArithSet::infinity_only();
    match (m % 2, sign) {
        (1, _) => FukuiTriple::from_signed(a.clone(), a),
        (_, Sign::Plus) => FukuiTriple::from_signed(a, inf),
        (_, Sign::Minus) => FukuiTriple::from_signed(inf, a),
    }
}

/// Thom–Sebastiani for `f(x) + g(y)`.
pub fn fukui_ts(f: &FukuiTriple, g: &FukuiTriple) -> FukuiTriple {
    let m1 = f.plus.intersect(&g.minus).min_finite();
    let m2 = f.minus.intersect(&g.plus).min_finite();
    let extra = ArithSet::shifted_naturals(m1).union(&ArithSet::shifted_naturals(m2));
    FukuiTriple {
        total: f.total.union(&g.total).union(&extra),
        plus: f.plus.union(&g.plus).union(&extra),
        minus: f.minus.union(&g.minus).union(&extra),
    }
}

/// The product `f(x) * g(y)`.
pub fn fukui_product(f: &FukuiTriple, g: &FukuiTriple) -> FukuiTriple {
    FukuiTriple {
        total: f.total.minkowski(&g.total),
        plus: f.plus.minkowski(&g.plus).union(&f.minus.minkowski(&g.minus)),
        minus: f.plus.minkowski(&g.minus).union(&f.minus.minkowski(&g.plus)),
    }
}

/// Closed forms for `±x^p ± y^q`, `p <= q`, by parity of the exponents.
pub fn fukui_table_2var(g: &BrieskornGerm) -> Option<FukuiTriple> {
    let [x, y] = g.terms() else {
        return None;
    };
    let (p, q) = (u64::from(x.exp), u64::from(y.exp));
    let lcm = p.lcm(&q);
    let inf = ArithSet::infinity_only();
    let pn = ArithSet::multiples(p).with_infinity(true);
    let qn = ArithSet::multiples(q).with_infinity(true);
    let tail = ArithSet::at_least(lcm);
    let full = pn.union(&qn).union(&tail);
    let p_tail = pn.union(&tail);
    let q_tail = qn.union(&tail);
    let (plus, minus) = match (p % 2 == 1, q % 2 == 1) {
        (true, true) => (full.clone(), full.clone()),
        (true, false) => match y.sign {
            Sign::Plus => (full.clone(), p_tail),
            Sign::Minus => (p_tail, full.clone()),
        },
        (false, true) => match x.sign {
            Sign::Plus => (full.clone(), q_tail),
            Sign::Minus => (q_tail, full.clone()),
        },
        (false, false) => match (x.sign, y.sign) {
            (Sign::Plus, Sign::Minus) => (p_tail, q_tail),
            (Sign::Minus, Sign::Plus) => (q_tail, p_tail),
            (Sign::Plus, Sign::Plus) => (pn.union(&qn), inf),
            (Sign::Minus, Sign::Minus) => (inf, pn.union(&qn)),
        },
    };
    Some(FukuiTriple::from_signed(plus, minus))
}

/// Fold of [`fukui_ts`] over the monomials.
pub fn fukui_fold(g: &BrieskornGerm) -> FukuiTriple {
    let mut it = g.terms().iter();
    let first = it.next().expect("germs are nonempty");
    it.fold(fukui_monomial(first.exp, first.sign), |acc, t| {
        fukui_ts(&acc, &fukui_monomial(t.exp, t.sign))
    })
}

/// Table lookup in two variables, fold otherwise.
pub fn fukui_brieskorn(g: &BrieskornGerm) -> FukuiTriple {
    fukui_table_2var(g).unwrap_or_else(|| fukui_fold(g))
}

/// `Ω_I = N_1 N + ... + N_p N ∪ {∞}` unioned over strata; a stratum enters
/// `A±` when it borders a chamber of that sign (`α± > 0`). The zero arc puts
/// `∞` in every component.
pub fn fukui_from_resolution(r: &ResolutionData) -> Result<FukuiTriple, InvalidResolution> {
    let v = validate_resolution(r);
    if !v.is_empty() {
        return Err(InvalidResolution(v));
    }
    let mut plus = ArithSet::infinity_only();
    let mut minus = ArithSet::infinity_only();
    for s in &r.strata {
        let mut omega: Option<ArithSet> = None;
        for id in &s.divisors {
            let n = r.divisor(id).expect("validated").n;
            let m = ArithSet::multiples(n);
            omega = Some(match omega {
                Some(o) => o.minkowski(&m),
                None => m,
            });
        }
        let omega = omega.expect("nonempty stratum").with_infinity(true);
        if s.alpha_plus > 0 {
            plus = plus.union(&omega);
        }
        if s.alpha_minus > 0 {
            minus = minus.union(&omega);
        }
    }
    Ok(FukuiTriple::from_signed(plus, minus))
}
