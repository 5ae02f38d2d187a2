//! JSON encodings. Integer fields are exact; coefficients of any size are
//! written as JSON integers. Unknown fields are rejected on input.

use blowzeta_core::classify::{Component, EquivalenceReason, Verdict, Witness};
use blowzeta_core::fukui::ArithSetError;
use blowzeta_core::resolution::{Divisor, Stratum};
use blowzeta_core::toric::Monomial;
use blowzeta_core::{
    ArithSet, BrieskornGerm, BrieskornTerm, FukuiTriple, GeomFactor, RationalZeta, ResolutionData, Sign,
    SupportPoly, TruncSeries, ZetaTerm, ZetaTriple,
};
use blowzeta_core::zeta::ModifiedTriple;
use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported version {0}, expected {VERSION}")]
    Version(u32),
    #[error("bit arrays hold 0 or 1, found {0}")]
    Bit(u8),
    #[error("transient_max {declared} disagrees with {found} transient bits")]
    TransientLength { declared: usize, found: usize },
    #[error("sign fields hold 1 or -1, found {0}")]
    Sign(i64),
    #[error("order {order} disagrees with {found} coefficients")]
    Order { order: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Arbitrary-size integer carried as a JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self.0.to_string().parse().map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.as_str()
            .parse::<BigInt>()
            .map(Int)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, found {n}")))
    }
}

fn ints(s: &TruncSeries) -> Vec<Int> {
    s.coeffs().iter().cloned().map(Int).collect()
}

fn series(order: usize, c: Vec<Int>) -> Result<TruncSeries, JsonError> {
    if c.len() != order {
        return Err(JsonError::Order { order, found: c.len() });
    }
    TruncSeries::from_coeffs(c.into_iter().map(|i| i.0).collect()).map_err(|e| JsonError::Invalid(e.to_string()))
}

fn sign_of(v: i64) -> Result<Sign, JsonError> {
    Sign::from_i64(v).ok_or(JsonError::Sign(v))
}

fn check_version(v: Option<u32>) -> Result<(), JsonError> {
    match v {
        None | Some(VERSION) => Ok(()),
        Some(v) => Err(JsonError::Version(v)),
    }
}

/// Adds `"version": 1` in front of an output object.
#[derive(Serialize)]
pub struct Versioned<T: Serialize> {
    pub version: u32,
    #[serde(flatten)]
    pub body: T,
}

pub fn versioned<T: Serialize>(body: T) -> Versioned<T> {
    Versioned { version: VERSION, body }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<Int>,
}

impl From<&TruncSeries> for SeriesJson {
    fn from(s: &TruncSeries) -> Self {
        SeriesJson { order: s.order(), coeffs: ints(s) }
    }
}

impl TryFrom<SeriesJson> for TruncSeries {
    type Error = JsonError;
    fn try_from(j: SeriesJson) -> Result<Self, JsonError> {
        series(j.order, j.coeffs)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaTripleJson {
    #[serde(default, skip_serializing)]
    pub version: Option<u32>,
    pub order: usize,
    pub plus: Vec<Int>,
    pub minus: Vec<Int>,
}

impl From<&ZetaTriple> for ZetaTripleJson {
    fn from(z: &ZetaTriple) -> Self {
        ZetaTripleJson { version: None, order: z.order(), plus: ints(z.plus()), minus: ints(z.minus()) }
    }
}

impl TryFrom<ZetaTripleJson> for ZetaTriple {
    type Error = JsonError;
    fn try_from(j: ZetaTripleJson) -> Result<Self, JsonError> {
        check_version(j.version)?;
        let (p, m) = (series(j.order, j.plus)?, series(j.order, j.minus)?);
        ZetaTriple::new(p, m).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModifiedJson {
    pub order: usize,
    pub tplus: Vec<Int>,
    pub tminus: Vec<Int>,
}

impl From<&ModifiedTriple> for ModifiedJson {
    fn from(m: &ModifiedTriple) -> Self {
        ModifiedJson { order: m.order(), tplus: ints(m.tplus()), tminus: ints(m.tminus()) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub exp: u64,
    pub eps: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaTermJson {
    pub coeff: Int,
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalZetaJson {
    pub terms: Vec<ZetaTermJson>,
}

impl From<&RationalZeta> for RationalZetaJson {
    fn from(r: &RationalZeta) -> Self {
        RationalZetaJson {
            terms: r
                .terms()
                .iter()
                .map(|t| ZetaTermJson {
                    coeff: Int(t.coeff().clone()),
                    factors: t.factors().iter().map(|f| FactorJson { exp: f.exp, eps: f.eps.to_i64() }).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<RationalZetaJson> for RationalZeta {
    type Error = JsonError;
    fn try_from(j: RationalZetaJson) -> Result<Self, JsonError> {
        let mut out = RationalZeta::default();
        for t in j.terms {
            let factors = t
                .factors
                .iter()
                .map(|f| GeomFactor::new(f.exp, sign_of(f.eps)?).map_err(|e| JsonError::Invalid(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(ZetaTerm::new(t.coeff.0, factors).map_err(|e| JsonError::Invalid(e.to_string()))?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermTermJson {
    pub exp: u32,
    pub sign: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermJson {
    pub terms: Vec<GermTermJson>,
}

impl From<&BrieskornGerm> for GermJson {
    fn from(g: &BrieskornGerm) -> Self {
        GermJson { terms: g.terms().iter().map(|t| GermTermJson { exp: t.exp, sign: t.sign.to_i64() }).collect() }
    }
}

impl TryFrom<GermJson> for BrieskornGerm {
    type Error = JsonError;
    fn try_from(j: GermJson) -> Result<Self, JsonError> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok(BrieskornTerm::new(t.exp, sign_of(t.sign)?)))
            .collect::<Result<Vec<_>, JsonError>>()?;
        BrieskornGerm::new(terms).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    pub i: u32,
    pub j: u32,
    pub coeff: Int,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportPolyJson {
    pub monomials: Vec<MonomialJson>,
}

impl From<&SupportPoly> for SupportPolyJson {
    fn from(s: &SupportPoly) -> Self {
        SupportPolyJson {
            monomials: s.monomials().iter().map(|m| MonomialJson { i: m.i, j: m.j, coeff: Int(m.coeff.clone()) }).collect(),
        }
    }
}

impl TryFrom<SupportPolyJson> for SupportPoly {
    type Error = JsonError;
    fn try_from(j: SupportPolyJson) -> Result<Self, JsonError> {
        let m = j.monomials.into_iter().map(|m| Monomial { i: m.i, j: m.j, coeff: m.coeff.0 }).collect();
        SupportPoly::new(m).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub id: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub nu: u64,
    pub exceptional: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    pub divisors: Vec<String>,
    pub chi_c: i64,
    pub alpha_plus: u64,
    pub alpha_minus: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub divisors: Vec<DivisorJson>,
    pub strata: Vec<StratumJson>,
}

impl From<&ResolutionData> for ResolutionJson {
    fn from(r: &ResolutionData) -> Self {
        ResolutionJson {
            version: Some(VERSION),
            divisors: r
                .divisors
                .iter()
                .map(|d| DivisorJson { id: d.id.clone(), n: d.n, nu: d.nu, exceptional: d.exceptional })
                .collect(),
            strata: r
                .strata
                .iter()
                .map(|s| StratumJson {
                    divisors: s.divisors.clone(),
                    chi_c: s.chi_c,
                    alpha_plus: s.alpha_plus,
                    alpha_minus: s.alpha_minus,
                })
                .collect(),
        }
    }
}

impl TryFrom<ResolutionJson> for ResolutionData {
    type Error = JsonError;
    fn try_from(j: ResolutionJson) -> Result<Self, JsonError> {
        check_version(j.version)?;
        Ok(ResolutionData {
            divisors: j
                .divisors
                .into_iter()
                .map(|d| Divisor { id: d.id, n: d.n, nu: d.nu, exceptional: d.exceptional })
                .collect(),
            strata: j
                .strata
                .into_iter()
                .map(|s| Stratum { divisors: s.divisors, chi_c: s.chi_c, alpha_plus: s.alpha_plus, alpha_minus: s.alpha_minus })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArithSetJson {
    pub transient_max: usize,
    pub transient_bits: Vec<u8>,
    pub period: usize,
    pub residue_bits: Vec<u8>,
    pub infinity: bool,
}

fn bits_out(b: &[bool]) -> Vec<u8> {
    b.iter().map(|&x| u8::from(x)).collect()
}

fn bits_in(b: &[u8]) -> Result<Vec<bool>, JsonError> {
    b.iter()
        .map(|&x| match x {
            0 => Ok(false),
            1 => Ok(true),
            x => Err(JsonError::Bit(x)),
        })
        .collect()
}

impl From<&ArithSet> for ArithSetJson {
    fn from(a: &ArithSet) -> Self {
        ArithSetJson {
            transient_max: a.transient_max(),
            transient_bits: bits_out(a.transient_bits()),
            period: a.period(),
            residue_bits: bits_out(a.residue_bits()),
            infinity: a.has_infinity(),
        }
    }
}

impl TryFrom<ArithSetJson> for ArithSet {
    type Error = JsonError;
    fn try_from(j: ArithSetJson) -> Result<Self, JsonError> {
        if j.transient_bits.len() != j.transient_max {
            return Err(JsonError::TransientLength { declared: j.transient_max, found: j.transient_bits.len() });
        }
        ArithSet::from_parts(bits_in(&j.transient_bits)?, j.period, bits_in(&j.residue_bits)?, j.infinity)
            .map_err(|e: ArithSetError| JsonError::Invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FukuiJson {
    pub total: ArithSetJson,
    pub plus: ArithSetJson,
    pub minus: ArithSetJson,
    pub rendered: RenderedFukui,
}

#[derive(Debug, Clone, Serialize)]
pub struct RenderedFukui {
    pub total: String,
    pub plus: String,
    pub minus: String,
}

impl From<&FukuiTriple> for FukuiJson {
    fn from(t: &FukuiTriple) -> Self {
        FukuiJson {
            total: (&t.total).into(),
            plus: (&t.plus).into(),
            minus: (&t.minus).into(),
            rendered: RenderedFukui { total: t.total.to_string(), plus: t.plus.to_string(), minus: t.minus.to_string() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub invariant: &'static str,
    pub at: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via_unsuspension: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ReasonJson {
    IdenticalAfterNormalization,
    ExceptionalRule { odd_exp: u32, even_multiple: u32 },
    InvariantsCoincide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyJson {
    pub p: u32,
    pub sign: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictJson {
    Equivalent { reason: ReasonJson },
    NotEquivalent { witness: WitnessJson },
    Unresolved { family: FamilyJson },
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        let via = match *w {
            Witness::Zeta { via_unsuspension, .. } => Some(via_unsuspension),
            Witness::Fukui { .. } => None,
        };
        WitnessJson { invariant: w.invariant_name(), at: w.at(), via_unsuspension: via }
    }
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Equivalent(r) => VerdictJson::Equivalent {
                reason: match *r {
                    EquivalenceReason::IdenticalAfterNormalization => ReasonJson::IdenticalAfterNormalization,
                    EquivalenceReason::ExceptionalRule { odd_exp, even_multiple } => {
                        ReasonJson::ExceptionalRule { odd_exp, even_multiple }
                    }
                    EquivalenceReason::InvariantsCoincide => ReasonJson::InvariantsCoincide,
                },
            },
            Verdict::NotEquivalent(w) => VerdictJson::NotEquivalent { witness: w.into() },
            Verdict::Unresolved(f) => VerdictJson::Unresolved { family: FamilyJson { p: f.p, sign: f.sign.to_i64() } },
        }
    }
}

/// Display name of a witness component, used in narratives.
pub fn component_name(c: Component) -> &'static str {
    match c {
        Component::Total => "total",
        Component::Plus => "plus",
        Component::Minus => "minus",
    }
}
