//! Toric resolution of a nondegenerate weighted-homogeneous plane curve.
//!
//! Rays run from `(1,0)` to `(0,1)`. For consecutive rays `v = (a,b)`,
//! `w = (c,d)` the chart is `(X,Y) ↦ (X^a Y^c, X^b Y^d)`, with `E_v = {X=0}`
//! and `E_w = {Y=0}`. Each exceptional divisor is read off in the chart where
//! it is `{X = 0}`: there `Y = 0` is its corner with the next ray and `Y = ∞`
//! its corner with the previous one.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::germ::BrieskornGerm;
use crate::poly::{Bound, Poly};
use crate::resolution::{Divisor, ResolutionData, Stratum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("weights ({m}, {k}) are not coprime")]
    NotCoprime { m: u64, k: u64 },
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("polynomial has no monomials")]
    EmptySupport,
    #[error("monomial x^{i}y^{j} appears twice")]
    DuplicateMonomial { i: u32, j: u32 },
    #[error("monomial x^{i}y^{j} has zero coefficient")]
    ZeroCoefficient { i: u32, j: u32 },
    #[error("polynomial does not vanish at the origin")]
    ConstantTerm,
    #[error("polynomial is not weighted homogeneous for weights ({m}, {k})")]
    NotWeightedHomogeneous { m: u64, k: u64 },
    #[error("polynomial is degenerate: its face polynomial has a repeated root")]
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightVector {
    m: u64,
    k: u64,
}

impl WeightVector {
    pub fn new(m: u64, k: u64) -> Result<Self, ToricError> {
        if m == 0 || k == 0 {
            return Err(ToricError::ZeroWeight);
        }
        if m.gcd(&k) != 1 {
            return Err(ToricError::NotCoprime { m, k });
        }
        Ok(WeightVector { m, k })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `(q/g, p/g)` for `x^p, y^q`, `g = gcd(p, q)`.
    pub fn for_brieskorn(p: u32, q: u32) -> Result<Self, ToricError> {
        let g = p.gcd(&q);
        if g == 0 {
            return Err(ToricError::ZeroWeight);
        }
        WeightVector::new(u64::from(q / g), u64::from(p / g))
    }
}

/// Primitive ray `(a, b)`.
pub type Ray = (u64, u64);

/// Hirzebruch–Jung coefficients of `m/k`: `m/k = a_1 − 1/(a_2 − 1/(⋯))`.
pub fn hj_cfrac(m: u64, k: u64) -> Result<Vec<u64>, ToricError> {
    if m == 0 {
        return Err(ToricError::ZeroWeight);
    }
    if m.gcd(&k) != 1 {
        return Err(ToricError::NotCoprime { m, k });
    }
    let (mut m, mut k) = (m, k);
    let mut out = Vec::new();
    while k != 0 {
        let a = m.div_ceil(k);
        out.push(a);
        (m, k) = (k, a * k - m);
    }
    Ok(out)
}

/// Rays from `(1,0)` through `w` to `(0,1)`; consecutive determinants are 1.
pub fn ray_vectors(w: WeightVector) -> Vec<Ray> {
    let side = |a: &[u64]| -> Vec<(i128, i128)> {
        // m_1 = 1, k_1 = 0, m_2 = a_1, k_2 = 1, m_{i+1} = a_i m_i − m_{i−1}
        let mut v = vec![(1i128, 0i128), (i128::from(a[0]), 1)];
        for &ai in &a[1..] {
            let n = v.len();
            let (p, q) = (v[n - 1], v[n - 2]);
            v.push((i128::from(ai) * p.0 - q.0, i128::from(ai) * p.1 - q.1));
        }
        v
    };
    let a = hj_cfrac(w.m, w.k).expect("weight vector is coprime");
    let b = hj_cfrac(w.k, w.m).expect("weight vector is coprime");
    let lower = side(&a);
    // primed side: m'_1 = 0, k'_1 = 1, m'_2 = 1, k'_2 = b_1, same recurrence
    let upper: Vec<(i128, i128)> = side(&b).into_iter().map(|(x, y)| (y, x)).collect();
    let mut rays: Vec<Ray> = lower.iter().map(|&(x, y)| (x as u64, y as u64)).collect();
    rays.extend(upper.iter().rev().skip(1).map(|&(x, y)| (x as u64, y as u64)));
    rays
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
    pub coeff: BigInt,
}

/// `Σ coeff x^i y^j`: nonempty, no duplicate exponents, no constant term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportPoly {
    monomials: Vec<Monomial>,
}

impl SupportPoly {
    pub fn new(monomials: Vec<Monomial>) -> Result<Self, ToricError> {
        if monomials.is_empty() {
            return Err(ToricError::EmptySupport);
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for t in &monomials {
            if t.coeff.is_zero() {
                return Err(ToricError::ZeroCoefficient { i: t.i, j: t.j });
            }
            if (t.i, t.j) == (0, 0) {
                return Err(ToricError::ConstantTerm);
            }
            if !seen.insert((t.i, t.j)) {
                return Err(ToricError::DuplicateMonomial { i: t.i, j: t.j });
            }
        }
        Ok(SupportPoly { monomials })
    }

    pub fn from_i64s(terms: &[(u32, u32, i64)]) -> Result<Self, ToricError> {
        SupportPoly::new(
            terms
                .iter()
                .map(|&(i, j, c)| Monomial { i, j, coeff: BigInt::from(c) })
                .collect(),
        )
    }

    /// A two-variable Brieskorn germ `±x^p ± y^q`.
    pub fn brieskorn(g: &BrieskornGerm) -> Option<Self> {
        let [x, y] = g.terms() else {
            return None;
        };
        let c = |s: crate::Sign| BigInt::from(s.to_i64());
        SupportPoly::new(vec![
            Monomial { i: x.exp, j: 0, coeff: c(x.sign) },
            Monomial { i: 0, j: y.exp, coeff: c(y.sign) },
        ])
        .ok()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    fn weight(&self, v: Ray) -> impl Iterator<Item = (u64, &Monomial)> + '_ {
        self.monomials
            .iter()
            .map(move |t| (v.0 * u64::from(t.i) + v.1 * u64::from(t.j), t))
    }

    pub fn is_weighted_homogeneous(&self, w: WeightVector) -> bool {
        let mut it = self.weight((w.m, w.k)).map(|(d, _)| d);
        let first = it.next();
        it.all(|d| Some(d) == first)
    }
}

/// `(N, ν)` along the divisor of ray `v`: `N = min (a i + b j)`, `ν = a + b`.
pub fn divisor_mults(s: &SupportPoly, v: Ray) -> (u64, u64) {
    let n = s.weight(v).map(|(d, _)| d).min().expect("nonempty support");
    (n, v.0 + v.1)
}

/// `u(0, Y)` in the chart `(v, w)`.
fn chart_unit(s: &SupportPoly, v: Ray, w: Ray) -> Poly {
    let nv = divisor_mults(s, v).0;
    let nw = divisor_mults(s, w).0;
    let mut c: Vec<BigInt> = Vec::new();
    for t in s.monomials() {
        if v.0 * u64::from(t.i) + v.1 * u64::from(t.j) != nv {
            continue;
        }
        let e = (w.0 * u64::from(t.i) + w.1 * u64::from(t.j) - nw) as usize;
        if c.len() <= e {
            c.resize(e + 1, BigInt::zero());
        }
        c[e] += &t.coeff;
    }
    Poly::new(c)
}

fn alt(o: Ordering, flips: usize) -> Ordering {
    if flips.is_multiple_of(2) {
        o
    } else {
        o.reverse()
    }
}

fn chambers(signs: impl Iterator<Item = Ordering>) -> (u64, u64) {
    signs.fold((0, 0), |(p, m), s| match s {
        Ordering::Greater => (p + 1, m),
        _ => (p, m + 1),
    })
}

/// `sign(X)^{N_v}` for `X > 0` and `X < 0`.
fn sides(nv: u64, s: Ordering) -> [Ordering; 2] {
    [s, alt(s, nv as usize)]
}

/// Arc components of one exceptional divisor, as `(χ^c, α+, α−)`.
///
/// The circle is walked `0 → +∞ = −∞ → 0`. Along the way `u(0,Y)` changes
/// sign exactly at its (simple) roots, so segment signs follow from
/// `sign u(0,0)` and root counts on each half line.
fn arcs(u: &Poly, nv: u64, nw: u64, zero_punct: bool, inf_punct: bool) -> Vec<(i64, u64, u64)> {
    let u0 = u.sign_at(&Bound::At(BigRational::zero()));
    let zero = Bound::At(BigRational::zero());
    let pos = u.count_roots(&zero, &Bound::PosInf);
    let neg = u.count_roots(&Bound::NegInf, &zero);
    // (segment sign of Y^{N_w} u(0,Y), puncture at the segment's far end)
    let mut segs: Vec<(Ordering, bool)> = Vec::new();
    for i in 0..=pos {
        let far = if i < pos { true } else { inf_punct };
        segs.push((alt(u0, i), far));
    }
    let ysign = |s: Ordering| alt(s, nw as usize);
    for i in 0..=neg {
        // walking from −∞ toward 0 crosses the negative roots in reverse
        let s = alt(u0, neg - i);
        let far = if i < neg { true } else { zero_punct };
        segs.push((ysign(s), far));
    }
    let punctures = segs.iter().filter(|s| s.1).count();
    let alpha = |s: Ordering| chambers(sides(nv, s).into_iter());
    if punctures == 0 {
        let (p, m) = alpha(segs[0].0);
        return vec![(0, p, m)];
    }
    let mut out = Vec::new();
    // rotate so the walk starts right after a puncture
    let start = segs.iter().position(|s| s.1).expect("a puncture") + 1;
    let n = segs.len();
    let mut current: Option<Ordering> = None;
    for idx in 0..n {
        let (s, far) = segs[(start + idx) % n];
        if let Some(c) = current {
            debug_assert_eq!(alpha(c), alpha(s), "sign jumps away from a puncture");
        }
        current.get_or_insert(s);
        if far {
            let (p, m) = alpha(current.take().expect("set"));
            out.push((-1, p, m));
        }
    }
    out
}

/// The toric resolution of `s`, weighted homogeneous for `w` and nondegenerate.
pub fn build_resolution(s: &SupportPoly, w: WeightVector) -> Result<ResolutionData, ToricError> {
    if !s.is_weighted_homogeneous(w) {
        return Err(ToricError::NotWeightedHomogeneous { m: w.m, k: w.k });
    }
    let rays = ray_vectors(w);
    let last = rays.len() - 1;
    let weight_idx = rays.iter().position(|&r| r == (w.m, w.k)).expect("weight ray");
    let ns: Vec<u64> = rays.iter().map(|&r| divisor_mults(s, r).0).collect();
    let face = chart_unit(s, rays[weight_idx], rays[weight_idx + 1]);
    if !face.is_squarefree() {
        return Err(ToricError::Degenerate);
    }
    let branches = face.count_roots(&Bound::NegInf, &Bound::PosInf);

    let ids: Vec<String> = (0..=last)
        .map(|i| match i {
            0 => String::from("Sx"),
            i if i == last => String::from("Sy"),
            i => format!("E{i}"),
        })
        .collect();
    let mut divisors = Vec::new();
    if ns[0] > 0 {
        divisors.push(Divisor { id: ids[0].clone(), n: ns[0], nu: 1, exceptional: false });
    }
    for i in 1..last {
        let (n, nu) = divisor_mults(s, rays[i]);
        divisors.push(Divisor { id: ids[i].clone(), n, nu, exceptional: true });
    }
    let branch_ids: Vec<String> = (1..=branches).map(|b| format!("B{b}")).collect();
    for id in &branch_ids {
        divisors.push(Divisor { id: id.clone(), n: 1, nu: 1, exceptional: false });
    }
    if ns[last] > 0 {
        divisors.push(Divisor { id: ids[last].clone(), n: ns[last], nu: 1, exceptional: false });
    }

    let mut strata = Vec::new();
    for i in 1..last {
        let u = chart_unit(s, rays[i], rays[i + 1]);
        for (chi_c, ap, am) in arcs(&u, ns[i], ns[i + 1], ns[i + 1] > 0, ns[i - 1] > 0) {
            strata.push(Stratum { divisors: vec![ids[i].clone()], chi_c, alpha_plus: ap, alpha_minus: am });
        }
    }
    for i in 0..last {
        if ns[i] == 0 || ns[i + 1] == 0 {
            continue;
        }
        let u0 = chart_unit(s, rays[i], rays[i + 1]).sign_at(&Bound::At(BigRational::zero()));
        let quadrant = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .map(|(sx, sy)| alt(u0, sx * ns[i] as usize + sy * ns[i + 1] as usize));
        let (ap, am) = chambers(quadrant);
        strata.push(Stratum {
            divisors: vec![ids[i].clone(), ids[i + 1].clone()],
            chi_c: 1,
            alpha_plus: ap,
            alpha_minus: am,
        });
    }
    for b in &branch_ids {
        strata.push(Stratum {
            divisors: vec![ids[weight_idx].clone(), b.clone()],
            chi_c: 1,
            alpha_plus: 2,
            alpha_minus: 2,
        });
    }
    for st in &strata {
        debug_assert_eq!(st.alpha_plus + st.alpha_minus, 1 << st.divisors.len());
    }
    Ok(ResolutionData { divisors, strata })
}

/// Resolution of a two-variable Brieskorn germ with inferred weights.
pub fn build_brieskorn_resolution(g: &BrieskornGerm) -> Option<Result<ResolutionData, ToricError>> {
    let s = SupportPoly::brieskorn(g)?;
    let [x, y] = g.terms() else {
        return None;
    };
    Some(WeightVector::for_brieskorn(x.exp, y.exp).and_then(|w| build_resolution(&s, w)))
}
