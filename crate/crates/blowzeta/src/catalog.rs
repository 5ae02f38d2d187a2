//! Equivalence-class catalogs of Brieskorn grids, one JSON record per line.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use blowzeta_core::classify::{classify_pair, normalize_klein, Verdict};
use blowzeta_core::fukui::fukui_brieskorn;
use blowzeta_core::zeta::zeta_brieskorn;
use blowzeta_core::{BrieskornGerm, BrieskornTerm, Sign};
use serde::Serialize;

use crate::commands::CliError;
use crate::json::{versioned, GermJson, RenderedFukui, ZetaTripleJson};

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub index: usize,
    pub germ: String,
    pub terms: GermJson,
    pub class: usize,
    pub unresolved_with: Vec<usize>,
    pub fukui: RenderedFukui,
    pub zeta: ZetaTripleJson,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub germs: usize,
    pub classes: usize,
}

/// Normal forms with `vars` terms and exponents in `2..=max_exp`, sorted.
pub fn grid(vars: usize, max_exp: u32) -> Vec<BrieskornGerm> {
    fn exps(vars: usize, lo: u32, hi: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == vars {
            out.push(acc.clone());
            return;
        }
        for e in lo..=hi {
            acc.push(e);
            exps(vars, e, hi, acc, out);
            acc.pop();
        }
    }
    let mut tuples = Vec::new();
    exps(vars, 2, max_exp, &mut Vec::new(), &mut tuples);
    let mut out = Vec::new();
    for t in tuples {
        for mask in 0..1u32 << vars {
            let terms = t
                .iter()
                .enumerate()
                .map(|(i, &e)| BrieskornTerm::new(e, if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus }))
                .collect();
            out.push(normalize_klein(&BrieskornGerm::new(terms).expect("valid exponents")));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Assigns classes in grid order: each germ joins the first earlier class
/// whose representative it is equivalent to.
pub fn build(vars: usize, max_exp: u32, order: Option<usize>, fingerprint_order: usize) -> Result<Vec<Record>, CliError> {
    if !(2..=3).contains(&vars) {
        return Err(CliError::Usage("--vars must be 2 or 3".into()));
    }
    if max_exp < 2 {
        return Err(CliError::Usage("--max-exp must be at least 2".into()));
    }
    let germs = grid(vars, max_exp);
    let zorder = fingerprint_order.max(max_exp as usize);
    let mut reps: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(germs.len());
    for (index, g) in germs.iter().enumerate() {
        let mut class = None;
        let mut unresolved_with = Vec::new();
        for (c, &r) in reps.iter().enumerate() {
            match classify_pair(&germs[r], g, order)? {
                Verdict::Equivalent(_) => {
                    class = Some(c);
                    break;
                }
                Verdict::Unresolved(_) => unresolved_with.push(c),
                Verdict::NotEquivalent(_) => {}
            }
        }
        let class = class.unwrap_or_else(|| {
            reps.push(index);
            reps.len() - 1
        });
        let t = fukui_brieskorn(g);
        let z = zeta_brieskorn(g, zorder)?;
        out.push(Record {
            index,
            germ: g.to_string(),
            terms: g.into(),
            class,
            unresolved_with,
            fukui: RenderedFukui { total: t.total.to_string(), plus: t.plus.to_string(), minus: t.minus.to_string() },
            zeta: (&z).into(),
        });
    }
    Ok(out)
}

fn partial_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".partial");
    out.with_file_name(name)
}

/// Writes the catalog through a sibling temporary file; nothing is left
/// behind on failure.
pub fn write(records: &[Record], out: &Path) -> Result<Summary, CliError> {
    let tmp = partial_path(out);
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| CliError::Io { path, source }
    };
    let result = (|| {
        let file = fs::File::create(&tmp).map_err(io(&tmp))?;
        let mut w = BufWriter::new(file);
        for r in records {
            let line = serde_json::to_string(&versioned(r)).map_err(crate::json::JsonError::from)?;
            writeln!(w, "{line}").map_err(io(&tmp))?;
        }
        w.into_inner().map_err(|e| io(&tmp)(e.into_error()))?.sync_all().map_err(io(&tmp))?;
        fs::rename(&tmp, out).map_err(io(out))
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result?;
    let classes = records.iter().map(|r| r.class + 1).max().unwrap_or(0);
    Ok(Summary { germs: records.len(), classes })
}
