use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use blowzeta::catalog;
use blowzeta::commands::{self, CliError, GermArgs, Output, ZetaFlags, DEFAULT_ORDER};
use blowzeta::json::versioned;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Zeta functions, Fukui invariants and blow-analytic classification of
/// real Brieskorn germs.
///
/// Exit codes: 0 success or Equivalent, 1 NotEquivalent, 2 Unresolved,
/// 3 error.
#[derive(Parser)]
#[command(name = "blowzeta", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation order (default 64 for display, the comparison policy for classify).
    #[arg(long, global = true)]
    order: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Germ {
    /// Germ expression, e.g. "x^3 - y^5" or "x^3 + x*y^5".
    #[arg(long, allow_hyphen_values = true)]
    germ: Option<String>,
    /// Weights m,k of a two-variable weighted homogeneous polynomial.
    #[arg(long, value_parser = parse_weights)]
    weights: Option<(u64, u64)>,
    /// Resolution data JSON file instead of a germ.
    #[arg(long)]
    resolution: Option<PathBuf>,
}

impl Germ {
    fn args(&self) -> GermArgs<'_> {
        GermArgs { germ: self.germ.as_deref(), weights: self.weights, resolution: self.resolution.as_deref() }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    #[value(name = "fukui-2var")]
    Fukui2Var,
    #[value(name = "table7")]
    Table7,
}

#[derive(Subcommand)]
enum Cmd {
    /// Z+, Z- and Z as truncated power series.
    Zeta {
        #[command(flatten)]
        germ: Germ,
        /// Print the modified series Ã+ and Ã-.
        #[arg(long)]
        modified: bool,
        /// Reduce coefficients mod 2.
        #[arg(long)]
        mod2: bool,
    },
    /// The Fukui invariants A, A+ and A-.
    Fukui {
        #[command(flatten)]
        germ: Germ,
    },
    /// Toric resolution data as JSON.
    Resolve {
        #[arg(long, allow_hyphen_values = true)]
        germ: String,
        #[arg(long, value_parser = parse_weights)]
        weights: Option<(u64, u64)>,
    },
    /// Decide blow-analytic equivalence of two Brieskorn germs.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Reproduce a reference table.
    Table {
        #[arg(long)]
        name: TableName,
        /// Largest exponent for fukui-2var.
        #[arg(long, default_value_t = 8)]
        pmax: u32,
        /// Odd exponent p for table7.
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Odd multiplier k for table7.
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Write the equivalence classes of a grid of germs as JSONL.
    Catalog {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        max_exp: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_weights(s: &str) -> Result<(u64, u64), String> {
    let (m, k) = s.split_once(',').ok_or("expected m,k")?;
    let n = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(m)?, n(k)?))
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.cmd {
        Cmd::Zeta { germ, modified, mod2 } => {
            commands::cmd_zeta(&germ.args(), cli.order, ZetaFlags { modified, mod2, json: cli.json })
        }
        Cmd::Fukui { germ } => commands::cmd_fukui(&germ.args(), cli.json),
        Cmd::Resolve { germ, weights } => commands::cmd_resolve(&germ, weights),
        Cmd::Classify { f, g } => commands::cmd_classify(&f, &g, cli.order, cli.json),
        Cmd::Table { name: TableName::Fukui2Var, pmax, .. } => commands::cmd_table_fukui(pmax, cli.json),
        Cmd::Table { name: TableName::Table7, p, k, .. } => commands::cmd_table7(p, k, cli.json),
        Cmd::Catalog { vars, max_exp, out } => {
            let records = catalog::build(vars, max_exp, None, cli.order.unwrap_or(DEFAULT_ORDER))?;
            let s = catalog::write(&records, &out)?;
            let text = if cli.json {
                #[derive(serde::Serialize)]
                struct Body {
                    germs: usize,
                    classes: usize,
                    out: String,
                }
                let body = Body { germs: s.germs, classes: s.classes, out: out.display().to_string() };
                serde_json::to_string(&versioned(body)).map_err(blowzeta::json::JsonError::from)?
            } else {
                format!("{} germs in {} classes written to {}", s.germs, s.classes, out.display())
            };
            Ok(Output { text, code: 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
