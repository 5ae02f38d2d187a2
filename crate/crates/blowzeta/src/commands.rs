//! Command implementations. Each returns the text to print and the exit code.

use std::fmt::Write as _;
use std::path::Path;

use blowzeta_core::classify::{
    classify_pair, fingerprint_3var, table7_rows, ClassifyError, EquivalenceReason, Fingerprint3, Verdict, Witness,
};
use blowzeta_core::fukui::{fukui_brieskorn, fukui_from_resolution, fukui_table_2var};
use blowzeta_core::resolution::InvalidResolution;
use blowzeta_core::toric::build_brieskorn_resolution;
use blowzeta_core::zeta::{to_modified, zeta_brieskorn, ZetaError};
use blowzeta_core::{
    build_resolution, dl_signed, expand_rational, BrieskornGerm, FukuiTriple, ResolutionData, Sign, ToricError,
    TruncSeries, WeightVector, ZetaTriple,
};
use serde::Serialize;

use crate::expr::{GermExpr, ParseError, ShapeError};
use crate::json::{
    component_name, versioned, FukuiJson, JsonError, ModifiedJson, ResolutionJson, VerdictJson, ZetaTripleJson,
};

pub const DEFAULT_ORDER: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Shape(#[from] ShapeError),
    #[error("{0}")]
    Toric(#[from] ToricError),
    #[error("{0}")]
    Zeta(#[from] ZetaError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Json(#[from] JsonError),
    #[error("{}", render_violations(.0))]
    Resolution(#[from] InvalidResolution),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

fn render_violations(r: &InvalidResolution) -> String {
    let mut s = String::from("invalid resolution data:");
    for v in &r.0 {
        let _ = write!(s, "\n  - {v}");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Where an invariant comes from.
pub enum Source {
    Brieskorn(BrieskornGerm),
    Resolution(ResolutionData),
}

pub struct GermArgs<'a> {
    pub germ: Option<&'a str>,
    pub weights: Option<(u64, u64)>,
    pub resolution: Option<&'a Path>,
}

pub fn read_resolution(path: &Path) -> Result<ResolutionData, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let j: ResolutionJson = serde_json::from_str(&text).map_err(JsonError::from)?;
    Ok(ResolutionData::try_from(j)?)
}

pub fn source(args: &GermArgs) -> Result<Source, CliError> {
    match (args.germ, args.resolution) {
        (Some(_), Some(_)) => Err(CliError::Usage("pass either --germ or --resolution, not both".into())),
        (None, None) => Err(CliError::Usage("one of --germ or --resolution is required".into())),
        (None, Some(p)) => Ok(Source::Resolution(read_resolution(p)?)),
        (Some(g), None) => {
            let e = GermExpr::parse(g)?;
            if let Some((m, k)) = args.weights {
                let w = WeightVector::new(m, k)?;
                return Ok(Source::Resolution(build_resolution(&e.to_support()?, w)?));
            }
            match e.to_brieskorn() {
                Ok(b) => Ok(Source::Brieskorn(b)),
                Err(err) if e.variables().len() <= 2 => Err(CliError::Usage(format!(
                    "{err}; weighted homogeneous polynomials in two variables need --weights m,k"
                ))),
                Err(err) => Err(err.into()),
            }
        }
    }
}

fn zeta_of(src: &Source, order: usize) -> Result<ZetaTriple, CliError> {
    match src {
        Source::Brieskorn(g) => {
            let z = zeta_brieskorn(g, order.max(g.max_exponent() as usize))?;
            Ok(z.truncate(order)?)
        }
        Source::Resolution(r) => {
            let s = dl_signed(r)?;
            let series = |z| expand_rational(z, order).map_err(ZetaError::from);
            Ok(ZetaTriple::new(series(&s.plus)?, series(&s.minus)?)?)
        }
    }
}

/// `2T^3 - T^6 + O(T^31)`.
pub fn render_series(s: &TruncSeries) -> String {
    let mut out = String::new();
    for (i, c) in s.coeffs().iter().enumerate() {
        if c.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let n = i + 1;
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude().to_string();
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if mag != "1" {
            out.push_str(&mag);
        }
        if n == 1 {
            out.push('T');
        } else {
            let _ = write!(out, "T^{n}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    let _ = write!(out, " + O(T^{})", s.order() + 1);
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZetaFlags {
    pub modified: bool,
    pub mod2: bool,
    pub json: bool,
}

pub fn cmd_zeta(args: &GermArgs, order: Option<usize>, flags: ZetaFlags) -> Result<Output, CliError> {
    if flags.modified && flags.mod2 {
        return Err(CliError::Usage("--modified and --mod2 are exclusive".into()));
    }
    let order = order.unwrap_or(DEFAULT_ORDER);
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let z = zeta_of(&source(args)?, order)?;
    let text = if flags.modified {
        let m = to_modified(&z);
        if flags.json {
            serde_json::to_string(&versioned(ModifiedJson::from(&m))).map_err(JsonError::from)?
        } else {
            format!("Ã+ = {}\nÃ- = {}", render_series(m.tplus()), render_series(m.tminus()))
        }
    } else {
        let z = if flags.mod2 { ZetaTriple::new(z.plus().mod2(), z.minus().mod2())? } else { z };
        let total = if flags.mod2 { z.total().mod2() } else { z.total() };
        if flags.json {
            #[derive(Serialize)]
            struct Body {
                #[serde(flatten)]
                triple: ZetaTripleJson,
                total: Vec<crate::json::Int>,
                mod2: bool,
            }
            let total = total.coeffs().iter().cloned().map(crate::json::Int).collect();
            serde_json::to_string(&versioned(Body { triple: (&z).into(), total, mod2: flags.mod2 }))
                .map_err(JsonError::from)?
        } else {
            let suffix = if flags.mod2 { " (mod 2)" } else { "" };
            format!(
                "Z+ = {}{suffix}\nZ- = {}{suffix}\nZ  = {}{suffix}",
                render_series(z.plus()),
                render_series(z.minus()),
                render_series(&total)
            )
        }
    };
    Ok(Output::ok(text))
}

fn fukui_of(src: &Source) -> Result<FukuiTriple, CliError> {
    match src {
        Source::Brieskorn(g) => Ok(fukui_brieskorn(g)),
        Source::Resolution(r) => Ok(fukui_from_resolution(r)?),
    }
}

pub fn cmd_fukui(args: &GermArgs, json: bool) -> Result<Output, CliError> {
    let t = fukui_of(&source(args)?)?;
    let text = if json {
        serde_json::to_string(&versioned(FukuiJson::from(&t))).map_err(JsonError::from)?
    } else {
        format!("A  = {}\nA+ = {}\nA- = {}", t.total, t.plus, t.minus)
    };
    Ok(Output::ok(text))
}

/// Resolution data for a two-variable polynomial; Brieskorn germs may omit
/// the weights.
pub fn cmd_resolve(germ: &str, weights: Option<(u64, u64)>) -> Result<Output, CliError> {
    let e = GermExpr::parse(germ)?;
    let r = match weights {
        Some((m, k)) => build_resolution(&e.to_support()?, WeightVector::new(m, k)?)?,
        None => {
            let g = e.to_brieskorn().map_err(|err| {
                CliError::Usage(format!("{err}; pass --weights m,k for a general weighted homogeneous polynomial"))
            })?;
            build_brieskorn_resolution(&g)
                .ok_or_else(|| CliError::Usage(format!("{g} is not a two-variable germ")))??
        }
    };
    let text = serde_json::to_string_pretty(&ResolutionJson::from(&r)).map_err(JsonError::from)?;
    Ok(Output::ok(text))
}

pub fn parse_brieskorn(s: &str) -> Result<BrieskornGerm, CliError> {
    Ok(GermExpr::parse(s)?.to_brieskorn()?)
}

fn sign_word(s: Sign) -> &'static str {
    if s.is_plus() {
        "+"
    } else {
        "-"
    }
}

pub fn verdict_exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Equivalent(_) => 0,
        Verdict::NotEquivalent(_) => 1,
        Verdict::Unresolved(_) => 2,
    }
}

pub fn narrate(v: &Verdict) -> String {
    match v {
        Verdict::Equivalent(EquivalenceReason::IdenticalAfterNormalization) => {
            "Equivalent: identical normal forms after sign and variable changes".into()
        }
        Verdict::Equivalent(EquivalenceReason::ExceptionalRule { odd_exp, even_multiple }) => format!(
            "Equivalent: x^{odd_exp} + y^{even_multiple} and x^{odd_exp} - y^{even_multiple} are blow-analytically equivalent (odd exponent, even multiple)"
        ),
        Verdict::Equivalent(EquivalenceReason::InvariantsCoincide) => {
            "Equivalent: all invariants coincide and the pair lies outside the open family".into()
        }
        Verdict::NotEquivalent(Witness::Fukui { set, at }) => {
            format!("NotEquivalent: Fukui set {} differs first at {at}", component_name(*set))
        }
        Verdict::NotEquivalent(Witness::Zeta { series, at, via_unsuspension }) => format!(
            "NotEquivalent: zeta function {} differs first at T^{at}{}",
            component_name(*series),
            if *via_unsuspension { " (separated by the suspended part)" } else { "" }
        ),
        Verdict::Unresolved(f) => format!(
            "Unresolved: both germs lie in the family {}(x^{p} + y^{{k{p}}} + z^{{k{p}}}), whose members are not separated by these invariants",
            sign_word(f.sign),
            p = f.p
        ),
    }
}

pub fn cmd_classify(f: &str, g: &str, order: Option<usize>, json: bool) -> Result<Output, CliError> {
    let (f, g) = (parse_brieskorn(f)?, parse_brieskorn(g)?);
    let v = classify_pair(&f, &g, order)?;
    let text = if json {
        serde_json::to_string(&versioned(VerdictJson::from(&v))).map_err(JsonError::from)?
    } else {
        narrate(&v)
    };
    Ok(Output { text, code: verdict_exit_code(&v) })
}

fn all_normal_forms_2var(pmax: u32) -> Vec<BrieskornGerm> {
    let mut out = Vec::new();
    for p in 2..=pmax {
        for q in p..=pmax {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let g = BrieskornGerm::from_signed(&[a * i64::from(p), b * i64::from(q)]).expect("valid");
                out.push(blowzeta_core::classify::normalize_klein(&g));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn cmd_table_fukui(pmax: u32, json: bool) -> Result<Output, CliError> {
    if pmax < 2 {
        return Err(CliError::Usage("--pmax must be at least 2".into()));
    }
    #[derive(Serialize)]
    struct Row {
        germ: String,
        total: String,
        plus: String,
        minus: String,
    }
    let rows: Vec<Row> = all_normal_forms_2var(pmax)
        .iter()
        .map(|g| {
            let t = fukui_table_2var(g).expect("two-variable germ");
            Row { germ: g.to_string(), total: t.total.to_string(), plus: t.plus.to_string(), minus: t.minus.to_string() }
        })
        .collect();
    if json {
        #[derive(Serialize)]
        struct Body {
            name: &'static str,
            rows: Vec<Row>,
        }
        let s = serde_json::to_string(&versioned(Body { name: "fukui-2var", rows })).map_err(JsonError::from)?;
        return Ok(Output::ok(s));
    }
    let w = rows.iter().map(|r| r.germ.len()).max().unwrap_or(4).max(4);
    let mut s = format!("{:<w$} | A | A+ | A-", "germ");
    for r in rows {
        let _ = write!(s, "\n{:<w$} | {} | {} | {}", r.germ, r.total, r.plus, r.minus);
    }
    Ok(Output::ok(s))
}

pub fn cmd_table7(p: u32, k: u32, json: bool) -> Result<Output, CliError> {
    if p < 3 || p.is_multiple_of(2) || k.is_multiple_of(2) {
        return Err(CliError::Usage("table7 needs odd p >= 3 and odd k >= 1".into()));
    }
    #[derive(Serialize)]
    struct Row {
        g2: String,
        a_plus_kp1: i64,
        a_minus_kp1: i64,
        a_kp2: i64,
        kp1_in_aplus: bool,
        kp1_in_aminus: bool,
    }
    let mut rows = Vec::new();
    for row in table7_rows(p, k, 5) {
        let prints: Vec<Fingerprint3> = row
            .tails
            .iter()
            .map(|g2| fingerprint_3var(p, k, g2))
            .collect::<Result<_, _>>()?;
        let first = prints[0];
        if prints.iter().any(|f| *f != first) {
            return Err(CliError::Usage(format!("row {} is not constant across its representatives", row.label)));
        }
        rows.push(Row {
            g2: row.label,
            a_plus_kp1: first.a_plus_kp1,
            a_minus_kp1: first.a_minus_kp1,
            a_kp2: first.a_kp2,
            kp1_in_aplus: first.in_aplus,
            kp1_in_aminus: first.in_aminus,
        });
    }
    if json {
        #[derive(Serialize)]
        struct Body {
            name: &'static str,
            p: u32,
            k: u32,
            rows: Vec<Row>,
        }
        let s = serde_json::to_string(&versioned(Body { name: "table7", p, k, rows })).map_err(JsonError::from)?;
        return Ok(Output::ok(s));
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    let kp = k * p;
    let head = format!("g2 (kp = {kp})");
    let w = rows.iter().map(|r| r.g2.chars().count()).chain([head.chars().count()]).max().unwrap_or(8);
    let mut s = format!("{head:<w$} | Ã+_{a} | Ã-_{a} | Ã±_{b} | {a} ∈ A+ | {a} ∈ A-", a = kp + 1, b = kp + 2);
    for r in rows {
        let _ = write!(
            s,
            "\n{:<w$} | {:>2} | {:>2} | {:>2} | {} | {}",
            r.g2,
            r.a_plus_kp1,
            r.a_minus_kp1,
            r.a_kp2,
            yn(r.kp1_in_aplus),
            yn(r.kp1_in_aminus)
        );
    }
    Ok(Output::ok(s))
}
