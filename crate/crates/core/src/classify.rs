//! Blow-analytic classification of Brieskorn germs in two and three
//! variables, exponent recovery from invariants, and the three-variable
//! fingerprint used to split `q = kp` from `q = kp + 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::fukui::{fukui_brieskorn, ArithSet, FukuiTriple};
use crate::germ::{BrieskornGerm, BrieskornTerm};
use crate::series::TruncSeries;
use crate::sign::Sign;
use crate::zeta::{
    modified_brieskorn, recover_power_factor, to_modified, unsuspend_even, zeta_brieskorn, FactorSign, ZetaError,
    ZetaTriple,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("germs have different numbers of variables ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("classification is implemented for 2 and 3 variables, not {0}")]
    UnsupportedDimension(usize),
    #[error("germ {0} is regular at the origin (an exponent equals 1)")]
    RegularGerm(String),
    #[error("invariants agree up to order {order} without a decision; retry with a higher order")]
    InconclusiveOrder { order: usize },
    #[error("zeta functions vanish identically: the germ is ±(x^p + y^p) with p even, and Fukui data is needed to pick the sign")]
    ZeroZetaAmbiguous,
    #[error("recovered candidate {0} does not reproduce the given zeta functions")]
    Inconsistent(String),
    #[error("no element of the set is prime to the multiplicity {p} below the periodic horizon")]
    NoNonMultiple { p: u32 },
    #[error("fingerprint split: Ã+ and Ã- differ at T^{index}")]
    FingerprintSplit { index: usize },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

/// Which Fukui set or which zeta series a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Total,
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Least element in exactly one of the two sets.
    Fukui { set: Component, at: u64 },
    /// Least index where the coefficients differ. `via_unsuspension` marks
    /// pairs that only the suspended part separates.
    Zeta { series: Component, at: usize, via_unsuspension: bool },
}

impl Witness {
    /// Stable name: `fukui_total`, `zeta_plus`, ...
    pub fn invariant_name(&self) -> &'static str {
        match self {
            Witness::Fukui { set: Component::Total, .. } => "fukui_total",
            Witness::Fukui { set: Component::Plus, .. } => "fukui_plus",
            Witness::Fukui { set: Component::Minus, .. } => "fukui_minus",
            Witness::Zeta { series: Component::Total, .. } => "zeta_total",
            Witness::Zeta { series: Component::Plus, .. } => "zeta_plus",
            Witness::Zeta { series: Component::Minus, .. } => "zeta_minus",
        }
    }

    pub fn at(&self) -> u64 {
        match *self {
            Witness::Fukui { at, .. } => at,
            Witness::Zeta { at, .. } => at as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivalenceReason {
    IdenticalAfterNormalization,
    /// `x^p + y^{kp}` versus `x^p - y^{kp}`, `p` odd, `k` even.
    ExceptionalRule { odd_exp: u32, even_multiple: u32 },
    /// Identical invariants outside the open family, read as equivalence.
    InvariantsCoincide,
}

/// `sign * (x^p + y^{kp} + z^{kp})`, `p` even, with `k` left open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub p: u32,
    pub sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent(EquivalenceReason),
    NotEquivalent(Witness),
    Unresolved(Family),
}

/// Odd-exponent signs set to `+`; terms sorted by exponent with `+` before
/// `-`, which writes `-x^p + y^p` as `x^p - y^p`. Idempotent.
pub fn normalize_klein(g: &BrieskornGerm) -> BrieskornGerm {
    let terms = g
        .terms()
        .iter()
        .map(|t| BrieskornTerm::new(t.exp, if t.exp % 2 == 1 { Sign::Plus } else { t.sign }))
        .collect();
    BrieskornGerm::new(terms).expect("normalization keeps a valid germ")
}

/// `2 * lcm(all exponents) + max exponent + 2`.
pub fn policy_order(f: &BrieskornGerm, g: &BrieskornGerm) -> usize {
    let exps: Vec<u64> = f.exponents().chain(g.exponents()).map(u64::from).collect();
    let lcm = exps.iter().fold(1u64, |acc, e| acc.lcm(e));
    let max = exps.iter().copied().max().unwrap_or(0);
    (2 * lcm + max + 2) as usize
}

fn first_set_difference(a: &ArithSet, b: &ArithSet) -> Option<u64> {
    let horizon = a.transient_max().max(b.transient_max()) + a.period().lcm(&b.period());
    (1..=horizon as u64).find(|&n| a.contains(n) != b.contains(n))
}

fn fukui_witness(a: &FukuiTriple, b: &FukuiTriple) -> Option<Witness> {
    [
        (Component::Total, &a.total, &b.total),
        (Component::Plus, &a.plus, &b.plus),
        (Component::Minus, &a.minus, &b.minus),
    ]
    .into_iter()
    .find_map(|(set, x, y)| first_set_difference(x, y).map(|at| Witness::Fukui { set, at }))
}

/// First differing coefficient of `Z+`, then `Z-`, then `Z`.
pub fn zeta_witness(a: &ZetaTriple, b: &ZetaTriple, via_unsuspension: bool) -> Option<Witness> {
    [
        (Component::Plus, a.plus().clone(), b.plus().clone()),
        (Component::Minus, a.minus().clone(), b.minus().clone()),
        (Component::Total, a.total(), b.total()),
    ]
    .into_iter()
    .find_map(|(series, x, y)| {
        x.first_difference(&y)
            .map(|at| Witness::Zeta { series, at, via_unsuspension })
    })
}

fn check_regular(g: &BrieskornGerm) -> Result<(), ClassifyError> {
    if g.is_singular() {
        Ok(())
    } else {
        Err(ClassifyError::RegularGerm(format!("{g}")))
    }
}

fn check_dims(f: &BrieskornGerm, g: &BrieskornGerm, d: usize) -> Result<(), ClassifyError> {
    if f.dimension() != g.dimension() {
        return Err(ClassifyError::DimensionMismatch { left: f.dimension(), right: g.dimension() });
    }
    if f.dimension() != d {
        return Err(ClassifyError::UnsupportedDimension(f.dimension()));
    }
    check_regular(f)?;
    check_regular(g)
}

/// `x^p ± y^{kp}`, `p` odd >= 3, `k` even, in normal form.
fn exceptional_pair(g: &BrieskornGerm) -> Option<(u32, u32)> {
    let [x, y] = g.terms() else {
        return None;
    };
    (x.exp % 2 == 1 && x.exp >= 3 && y.exp % x.exp == 0 && (y.exp / x.exp) % 2 == 0).then_some((x.exp, y.exp))
}

/// `s(x^p + y^{kp})`, `p` even: the pairs only zeta of the suspended part separates.
fn suspension_family(g: &BrieskornGerm) -> Option<(u32, Sign)> {
    let [x, y] = g.terms() else {
        return None;
    };
    (x.exp % 2 == 0 && y.exp % x.exp == 0 && x.sign == y.sign).then_some((x.exp, x.sign))
}

fn compare_invariants(
    f: &BrieskornGerm,
    g: &BrieskornGerm,
    order: usize,
    via_unsuspension: bool,
) -> Result<Option<Witness>, ClassifyError> {
    if let Some(w) = fukui_witness(&fukui_brieskorn(f), &fukui_brieskorn(g)) {
        return Ok(Some(w));
    }
    let order = order.max(f.max_exponent().max(g.max_exponent()) as usize);
    let (zf, zg) = (zeta_brieskorn(f, order)?, zeta_brieskorn(g, order)?);
    Ok(zeta_witness(&zf, &zg, via_unsuspension))
}

/// Two-variable classification. `order` overrides [`policy_order`].
pub fn classify_pair_2var(f: &BrieskornGerm, g: &BrieskornGerm, order: Option<usize>) -> Result<Verdict, ClassifyError> {
    check_dims(f, g, 2)?;
    let (nf, ng) = (normalize_klein(f), normalize_klein(g));
    if nf == ng {
        return Ok(Verdict::Equivalent(EquivalenceReason::IdenticalAfterNormalization));
    }
    if let (Some(a), Some(b)) = (exceptional_pair(&nf), exceptional_pair(&ng)) {
        if a == b {
            return Ok(Verdict::Equivalent(EquivalenceReason::ExceptionalRule { odd_exp: a.0, even_multiple: a.1 }));
        }
    }
    let order = order.unwrap_or_else(|| policy_order(f, g));
    let via = matches!(
        (suspension_family(&nf), suspension_family(&ng)),
        (Some(a), Some(b)) if a == b
    );
    match compare_invariants(f, g, order, via)? {
        Some(w) => Ok(Verdict::NotEquivalent(w)),
        None => Err(ClassifyError::InconclusiveOrder { order }),
    }
}

/// `s(x^p + y^{kp} + z^{kp})`, `p` even, as `(p, s)`.
fn open_family(g: &BrieskornGerm) -> Option<Family> {
    let [x, y, z] = g.terms() else {
        return None;
    };
    let same_sign = x.sign == y.sign && y.sign == z.sign;
    (x.exp % 2 == 0 && y.exp == z.exp && y.exp % x.exp == 0 && same_sign).then_some(Family { p: x.exp, sign: x.sign })
}

/// Three-variable classification. `order` overrides [`policy_order`].
pub fn classify_pair_3var(f: &BrieskornGerm, g: &BrieskornGerm, order: Option<usize>) -> Result<Verdict, ClassifyError> {
    check_dims(f, g, 3)?;
    let (nf, ng) = (normalize_klein(f), normalize_klein(g));
    if nf == ng {
        return Ok(Verdict::Equivalent(EquivalenceReason::IdenticalAfterNormalization));
    }
    let order = order.unwrap_or_else(|| policy_order(f, g));
    if let Some(w) = compare_invariants(&nf, &ng, order, false)? {
        return Ok(Verdict::NotEquivalent(w));
    }
    if let (Some(a), Some(b)) = (open_family(&nf), open_family(&ng)) {
        if a == b {
            return Ok(Verdict::Unresolved(a));
        }
    }
    let same_exponents = nf.exponents().eq(ng.exponents());
    if !same_exponents {
        return Err(ClassifyError::InconclusiveOrder { order });
    }
    // signs differ at some even exponent; immaterial when it is a multiple of an odd one
    let odd: Vec<u32> = nf.exponents().filter(|e| e % 2 == 1).collect();
    let differing = nf
        .terms()
        .iter()
        .zip(ng.terms())
        .find(|(a, b)| a.sign != b.sign)
        .map(|(a, _)| a.exp);
    let reason = differing
        .and_then(|e| odd.iter().find(|&&o| e % o == 0).map(|&o| (o, e)))
        .map(|(odd_exp, even_multiple)| EquivalenceReason::ExceptionalRule { odd_exp, even_multiple })
        .unwrap_or(EquivalenceReason::InvariantsCoincide);
    Ok(Verdict::Equivalent(reason))
}

/// Dispatches on the number of variables.
pub fn classify_pair(f: &BrieskornGerm, g: &BrieskornGerm, order: Option<usize>) -> Result<Verdict, ClassifyError> {
    match f.dimension() {
        2 => classify_pair_2var(f, g, order),
        3 => classify_pair_3var(f, g, order),
        d if d == g.dimension() => Err(ClassifyError::UnsupportedDimension(d)),
        _ => Err(ClassifyError::DimensionMismatch { left: f.dimension(), right: g.dimension() }),
    }
}

/// Recomputes the named invariant and checks that it first differs at the
/// claimed place.
pub fn verify_witness(f: &BrieskornGerm, g: &BrieskornGerm, w: &Witness) -> bool {
    let pick_set = |t: FukuiTriple, c: Component| match c {
        Component::Total => t.total,
        Component::Plus => t.plus,
        Component::Minus => t.minus,
    };
    let pick_series = |z: &ZetaTriple, c: Component| match c {
        Component::Total => z.total(),
        Component::Plus => z.plus().clone(),
        Component::Minus => z.minus().clone(),
    };
    match *w {
        Witness::Fukui { set, at } => {
            let (a, b) = (pick_set(fukui_brieskorn(f), set), pick_set(fukui_brieskorn(g), set));
            first_set_difference(&a, &b) == Some(at)
        }
        Witness::Zeta { series, at, .. } => {
            let order = at.max(f.max_exponent() as usize).max(g.max_exponent() as usize);
            let (Ok(zf), Ok(zg)) = (zeta_brieskorn(f, order), zeta_brieskorn(g, order)) else {
                return false;
            };
            pick_series(&zf, series).first_difference(&pick_series(&zg, series)) == Some(at)
        }
    }
}

fn coeff_i64(s: &TruncSeries, n: usize) -> i64 {
    s.coeffs()[n - 1].to_i64().unwrap_or(i64::MAX)
}

fn two_term(a: (u32, Sign), b: (u32, Sign)) -> BrieskornGerm {
    BrieskornGerm::new(vec![BrieskornTerm::new(a.0, a.1), BrieskornTerm::new(b.0, b.1)]).expect("valid exponents")
}

/// Inverts `zeta_brieskorn` on two-variable germs: the normalized germs with
/// this zeta triple, one germ or the sign-immaterial pair `x^p ± y^{kp}`.
/// `fukui` is consulted only when the zeta triple vanishes.
pub fn recover_exponents_2var(z: &ZetaTriple, fukui: Option<&FukuiTriple>) -> Result<Vec<BrieskornGerm>, ClassifyError> {
    let order = z.order();
    let total = z.total();
    let Some(p) = total.valuation() else {
        let t = fukui.ok_or(ClassifyError::ZeroZetaAmbiguous)?;
        let p = t.total.min_finite().ok_or(ClassifyError::ZeroZetaAmbiguous)? as u32;
        let inf = ArithSet::infinity_only();
        let sign = match (t.plus == inf, t.minus == inf) {
            (false, true) => Sign::Plus,
            (true, false) => Sign::Minus,
            _ => return Err(ClassifyError::ZeroZetaAmbiguous),
        };
        return Ok(vec![two_term((p, sign), (p, sign))]);
    };
    let p32 = p as u32;
    let candidates: Vec<BrieskornGerm> = if p % 2 == 0 {
        let xsign = if z.plus().coeffs()[p - 1].is_zero() { Sign::Minus } else { Sign::Plus };
        let b = unsuspend_even(p32, xsign, &to_modified(z))?;
        let q = (1..=order)
            .find(|&n| coeff_i64(b.tplus(), n) != 1 || coeff_i64(b.tminus(), n) != 1)
            .ok_or(ClassifyError::InconclusiveOrder { order })?;
        // y^q: (0, 0) for odd q, (1, -1) or (-1, 1) for even q
        let ysign = if q % 2 == 0 && coeff_i64(b.tplus(), q) != 1 { Sign::Minus } else { Sign::Plus };
        vec![two_term((p32, xsign), (q as u32, ysign))]
    } else {
        let x = BrieskornGerm::new(vec![BrieskornTerm::new(p32, Sign::Plus)]).expect("valid");
        let r = recover_power_factor(&x, &to_modified(z), order as u32).map_err(|e| match e {
            ZetaError::Inconclusive { order } => ClassifyError::InconclusiveOrder { order },
            e => ClassifyError::Zeta(e),
        })?;
        match r.sign {
            FactorSign::Plus => vec![two_term((p32, Sign::Plus), (r.r, Sign::Plus))],
            FactorSign::Minus => vec![two_term((p32, Sign::Plus), (r.r, Sign::Minus))],
            FactorSign::Unknown => vec![
                two_term((p32, Sign::Plus), (r.r, Sign::Plus)),
                two_term((p32, Sign::Plus), (r.r, Sign::Minus)),
            ],
        }
    };
    let mut out = Vec::new();
    for c in candidates {
        let c = normalize_klein(&c);
        let zc = zeta_brieskorn(&c, order.max(c.max_exponent() as usize))?;
        if zc.truncate(order)? != *z {
            return Err(ClassifyError::Inconsistent(format!("{c}")));
        }
        out.push(c);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecondExponent {
    Exact(u32),
    /// `n = kp + 1`: the second exponent is `n - 1` or `n`.
    OneOf(u32, u32),
}

/// Reads the second exponent off `A(f)` when the multiplicity `p` is odd.
pub fn second_exponent_from_fukui(a: &ArithSet, p: u32) -> Result<SecondExponent, ClassifyError> {
    let horizon = (a.transient_max() + a.period() * p as usize + p as usize) as u64;
    let n = (1..=horizon)
        .find(|&n| a.contains(n) && n % u64::from(p) != 0)
        .ok_or(ClassifyError::NoNonMultiple { p })? as u32;
    if n % p == 1 {
        Ok(SecondExponent::OneOf(n - 1, n))
    } else {
        Ok(SecondExponent::Exact(n))
    }
}

/// `(Ã+_{kp+1}, Ã-_{kp+1}, Ã±_{kp+2}, kp+1 ∈ A+, kp+1 ∈ A-)` of `x^p + g2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fingerprint3 {
    pub a_plus_kp1: i64,
    pub a_minus_kp1: i64,
    pub a_kp2: i64,
    pub in_aplus: bool,
    pub in_aminus: bool,
}

pub fn fingerprint_3var(p: u32, k: u32, g2: &BrieskornGerm) -> Result<Fingerprint3, ClassifyError> {
    let f = BrieskornGerm::new(vec![BrieskornTerm::new(p, Sign::Plus)])
        .expect("valid")
        .join(g2);
    let kp1 = (k * p + 1) as usize;
    let m = modified_brieskorn(&f, kp1 + 1)?;
    let at = |s: &TruncSeries, n: usize| coeff_i64(s, n);
    let (a2p, a2m) = (at(m.tplus(), kp1 + 1), at(m.tminus(), kp1 + 1));
    if a2p != a2m {
        return Err(ClassifyError::FingerprintSplit { index: kp1 + 1 });
    }
    let t = fukui_brieskorn(&f);
    Ok(Fingerprint3 {
        a_plus_kp1: at(m.tplus(), kp1),
        a_minus_kp1: at(m.tminus(), kp1),
        a_kp2: a2p,
        in_aplus: t.plus.contains(kp1 as u64),
        in_aminus: t.minus.contains(kp1 as u64),
    })
}

/// One row shape of the three-variable table: a label and the tails
/// `g2(y, z)` it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table7Row {
    pub label: String,
    pub tails: Vec<BrieskornGerm>,
}

/// The twelve row shapes for odd `p`, `k`. Rows with `r > kp + 2` use
/// `r = kp + 3 ..= kp + 3 + extra`.
pub fn table7_rows(p: u32, k: u32, extra: u32) -> Vec<Table7Row> {
    let kp = k * p;
    let both = [Sign::Plus, Sign::Minus];
    let tails = |ys: &[Sign], ye: u32, zs: &[Sign], zes: &[u32]| -> Vec<BrieskornGerm> {
        let mut v = Vec::new();
        for &a in ys {
            for &b in zs {
                for &ze in zes {
                    v.push(two_term((ye, a), (ze, b)));
                }
            }
        }
        v
    };
    let big: Vec<u32> = (kp + 3..=kp + 3 + extra).collect();
    let row = |label: String, tails: Vec<BrieskornGerm>| Table7Row { label, tails };
    let (a, b, c) = (kp + 1, kp + 2, kp);
    vec![
        row(format!("±y^{c} ± z^{c}"), tails(&both, c, &both, &[c])),
        row(format!("±y^{c} + z^{a}"), tails(&both, c, &[Sign::Plus], &[a])),
        row(format!("±y^{c} - z^{a}"), tails(&both, c, &[Sign::Minus], &[a])),
        row(format!("±y^{c} ± z^{b}"), tails(&both, c, &both, &[b])),
        row(format!("±y^{c} ± z^r, r>{b}"), tails(&both, c, &both, &big)),
        row(format!("y^{a} + z^{a}"), tails(&[Sign::Plus], a, &[Sign::Plus], &[a])),
        row(format!("y^{a} - z^{a}"), tails(&[Sign::Plus], a, &[Sign::Minus], &[a])),
        row(format!("-y^{a} - z^{a}"), tails(&[Sign::Minus], a, &[Sign::Minus], &[a])),
        row(format!("y^{a} ± z^{b}"), tails(&[Sign::Plus], a, &both, &[b])),
        row(format!("-y^{a} ± z^{b}"), tails(&[Sign::Minus], a, &both, &[b])),
        row(format!("y^{a} ± z^r, r>{b}"), tails(&[Sign::Plus], a, &both, &big)),
        row(format!("-y^{a} ± z^r, r>{b}"), tails(&[Sign::Minus], a, &both, &big)),
    ]
}

/// `Z+ mod 2` of `f(x) + g(y)` from the two `Z+ mod 2` series.
pub fn plus_mod2_ts(f: &ZetaTriple, g: &ZetaTriple) -> Result<TruncSeries, ClassifyError> {
    Ok(crate::zeta::ts_mod2(&f.plus().mod2(), &g.plus().mod2())?)
}
