//! Command-line front end: catalog lookups, exact densities, k-tables,
//! bound calculators, identity checks, character tables, and empirical
//! statistics, with text or JSON output.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::catalog::{self, ExamplePair, PairModel};
use crate::charfn::{linear_characters, ClassFunction};
use crate::chebotarev::{agreement_density, value_distribution};
use crate::empirical::{
    self, ap_csv_string, dirichlet_report, empirical_agreement, load_ap_csv, CsvFormat,
};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::group::{builtin, Builtin};
use crate::lpole::{
    cauchy_schwarz_bound, k_table, verify_clebsch_identities, BoundInput, Theorem,
};

#[derive(Parser)]
#[command(
    name = "smone",
    about = "Exact finite-model computations for strong multiplicity one refinements on GL(2)",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonFlag {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Show a catalog example pair.
    Example {
        /// Catalog name, e.g. `octahedral`; see `verify` for the full list.
        name: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Recompute and check every catalog entry.
    Verify {
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Exact agreement density and trace distribution of a catalog pair.
    Density {
        name: String,
        /// Also print the joint trace-value distribution.
        #[arg(long)]
        distribution: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// k-table of a catalog pair.
    Ktable {
        #[arg(long)]
        example: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Cauchy-Schwarz density lower bound from a preset table or a pair.
    Bound {
        /// Preset worst-case table: 1, 2, 3i, 3ii, tetrahedral.
        #[arg(long, conflicts_with = "example")]
        theorem: Option<String>,
        /// Cross-multiplicity c for the 3ii preset.
        #[arg(long, default_value_t = 1)]
        c: u64,
        /// Compute the table from a catalog pair instead.
        #[arg(long)]
        example: Option<String>,
        /// Explain where the table comes from.
        #[arg(long)]
        explain: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Check the four Clebsch-Gordan trace identities on a catalog pair.
    Identities {
        #[arg(long)]
        example: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Conjugacy classes, defining traces, and linear characters of a
    /// built-in group.
    Chartable {
        /// Q8, S3, A4, BT/2T, BO/2O, BI/2I, C<n>, D<n>.
        group: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Compare two a_p CSV files.
    Empirical {
        file_a: String,
        file_b: String,
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        #[arg(long, default_value_t = 1.01)]
        s: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Write synthetic a_p CSV files sampled from a catalog pair.
    GenSynthetic {
        #[arg(long)]
        example: String,
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// decimal or rational.
        #[arg(long, default_value = "decimal")]
        format: String,
        /// Output prefix; writes <prefix>-a.csv and <prefix>-b.csv.
        #[arg(long)]
        out_prefix: String,
        #[command(flatten)]
        json: JsonFlag,
    },
}

fn rat_json(r: Rat) -> serde_json::Value {
    serde_json::json!([*r.numer(), *r.denom()])
}

fn model_of(pair: &ExamplePair) -> Result<&PairModel> {
    pair.model.as_ref().ok_or_else(|| {
        Error::InvalidArgument(format!("`{}` has no finite model", pair.name))
    })
}

fn parse_format(s: &str) -> Result<CsvFormat> {
    match s {
        "decimal" => Ok(CsvFormat::Decimal),
        "rational" => Ok(CsvFormat::Rational),
        other => Err(Error::InvalidArgument(format!(
            "unknown format `{other}` (expected decimal or rational)"
        ))),
    }
}

/// Run a parsed command line. Returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Example { name, json } => {
            let pair = catalog::example(&name)?;
            let computed = match &pair.model {
                Some(m) => Some(agreement_density(&m.chi1, &m.chi2)?.density),
                None => None,
            };
            if json.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "name": pair.name,
                        "agreement": rat_json(pair.expected_agreement),
                        "computed_agreement": computed.map(rat_json),
                        "twist_claim": pair.twist_claim.as_str(),
                        "group": pair.model.as_ref().map(|m| m.group.name()),
                        "group_order": pair.model.as_ref().map(|m| m.group.order()),
                        "note": pair.note,
                    })
                );
            } else {
                println!("{}", pair.name);
                if let Some(m) = &pair.model {
                    println!("  group: {} (order {})", m.group.name(), m.group.order());
                }
                println!("  expected agreement: {}", pair.expected_agreement);
                if let Some(c) = computed {
                    println!("  computed agreement: {c}");
                }
                println!("  twist: {}", pair.twist_claim.as_str());
                println!("  {}", pair.note);
            }
            Ok(0)
        }
        Command::Verify { json } => {
            let entries = catalog::verify_all()?;
            let all_pass = entries.iter().all(|e| e.pass);
            if json.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "entries": entries.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
                        "pass": all_pass,
                    })
                );
            } else {
                for e in &entries {
                    let status = if e.pass { "pass" } else { "FAIL" };
                    let computed = e
                        .computed_agreement
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "-".into());
                    println!(
                        "{status}  {:<20} computed {:>7}  expected {:>7}  twist {}",
                        e.name, computed, e.expected_agreement, e.twist_claim.as_str()
                    );
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Density { name, distribution, json } => {
            let pair = catalog::example(&name)?;
            let m = model_of(&pair)?;
            let rep = agreement_density(&m.chi1, &m.chi2)?;
            let dist = if distribution {
                Some(value_distribution(&[m.chi1.clone(), m.chi2.clone()])?)
            } else {
                None
            };
            if json.json {
                let mut obj = rep.to_json();
                if let Some(d) = &dist {
                    obj["distribution"] = d
                        .iter()
                        .map(|(vals, r)| {
                            serde_json::json!({
                                "values": vals.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
                                "density": rat_json(*r),
                            })
                        })
                        .collect();
                }
                println!("{obj}");
            } else {
                println!("agreement density: {}", rep.density);
                println!("disagreement density: {}", rep.complement_density);
                if let Some(d) = &dist {
                    println!("trace distribution:");
                    for (vals, r) in d {
                        let rendered: Vec<String> =
                            vals.iter().map(|v| v.to_string()).collect();
                        println!("  ({}) : {r}", rendered.join(", "));
                    }
                }
            }
            Ok(0)
        }
        Command::Ktable { example, json } => {
            let pair = catalog::example(&example)?;
            let m = model_of(&pair)?;
            let kt = k_table(&m.chi1, &m.chi2)?;
            if json.json {
                println!("{}", kt.to_json());
            } else {
                for (&t, &v) in &kt.entries {
                    println!("k{:?} = {v}", t);
                }
            }
            Ok(0)
        }
        Command::Bound { theorem, c, example, explain, json } => {
            let (input, label, description) = match (theorem, example) {
                (Some(t), None) => {
                    let mut th = Theorem::parse(&t)?;
                    if let Theorem::ThreeII { .. } = th {
                        th = Theorem::ThreeII { c };
                    }
                    (th.bound_input(), format!("theorem {t}"), Some(th.describe()))
                }
                (None, Some(name)) => {
                    let pair = catalog::example(&name)?;
                    let m = model_of(&pair)?;
                    let kt = k_table(&m.chi1, &m.chi2)?;
                    (BoundInput::from_k_table(&kt), name, None)
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "pass exactly one of --theorem or --example".into(),
                    ))
                }
            };
            let bound = cauchy_schwarz_bound(&input)?;
            if json.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "source": label,
                        "bound": rat_json(bound),
                        "plus_upper": input.plus_upper,
                        "minus_lower": input.minus_lower,
                        "explanation": if explain { description } else { None },
                    })
                );
            } else {
                println!("{bound}");
                if explain {
                    if let Some(d) = description {
                        println!("{d}");
                    }
                    println!(
                        "table: plus {:?}, minus {:?}, numerator order {}",
                        input.plus_upper, input.minus_lower, input.numerator_order
                    );
                }
            }
            Ok(0)
        }
        Command::Identities { example, json } => {
            let pair = catalog::example(&example)?;
            let m = model_of(&pair)?;
            let rep = verify_clebsch_identities(&m.chi1, &m.chi2)?;
            if json.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "quartic_self": rep.quartic_self,
                        "cubic_cross": rep.cubic_cross,
                        "square_square": rep.square_square,
                        "abs_square_pair": rep.abs_square_pair,
                        "all": rep.all(),
                    })
                );
            } else {
                println!("quartic self identity: {}", rep.quartic_self);
                println!("cubic cross identity: {}", rep.cubic_cross);
                println!("square-square identity: {}", rep.square_square);
                println!("abs-square pair identity: {}", rep.abs_square_pair);
            }
            Ok(if rep.all() { 0 } else { 1 })
        }
        Command::Chartable { group, json } => {
            let which: Builtin = group.parse()?;
            let b = builtin(which)?;
            let defining = match &b.traces {
                Some(t) => Some(ClassFunction::from_traces(Arc::clone(&b.group), t)?),
                None => None,
            };
            let linears = linear_characters(&b.group)?;
            if json.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "group": b.group.to_json(),
                        "defining_character": defining.as_ref().map(|c| c.to_json()),
                        "linear_characters": linears.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("{} (order {})", b.group.name(), b.group.order());
                for (i, class) in b.group.classes().iter().enumerate() {
                    let rep = b.group.class_rep(i);
                    let trace = defining
                        .as_ref()
                        .map(|c| format!("  trace {}", c.value(i)))
                        .unwrap_or_default();
                    println!(
                        "  class {i}: size {:>3}, rep {}{trace}",
                        class.len(),
                        b.group.label(rep)
                    );
                }
                println!("  linear characters: {}", linears.len());
            }
            Ok(0)
        }
        Command::Empirical { file_a, file_b, x, s, tol, json } => {
            let a = load_ap_csv(&file_a)?;
            let b = load_ap_csv(&file_b)?;
            let rep = empirical_agreement(&a, &b, x, tol)?;
            let dr = dirichlet_report(&a, &b, s, tol)?;
            if json.json {
                let mut obj = rep.to_json();
                obj["dirichlet_quotient"] = dr.quotient.into();
                obj["dirichlet_raw_quotient"] = dr.raw_quotient.into();
                obj["s"] = dr.s.into();
                println!("{obj}");
            } else {
                println!(
                    "primes <= {}: {} agree, {} disagree, {} skipped",
                    rep.x, rep.agree_count, rep.disagree_count, rep.skipped
                );
                println!("natural density estimate: {:.6}", rep.natural_density_estimate);
                println!("dirichlet quotient (s = {}): {:.6}", dr.s, dr.quotient);
                println!("raw quotient vs -log(s-1): {:.6}", dr.raw_quotient);
            }
            Ok(0)
        }
        Command::GenSynthetic { example, x, seed, format, out_prefix, json } => {
            let fmt = parse_format(&format)?;
            let pair = catalog::example(&example)?;
            let m = model_of(&pair)?;
            let (a, b) = empirical::synthesize(m, x, seed, &example)?;
            let path_a = format!("{out_prefix}-a.csv");
            let path_b = format!("{out_prefix}-b.csv");
            std::fs::write(&path_a, ap_csv_string(&a, fmt)?)?;
            std::fs::write(&path_b, ap_csv_string(&b, fmt)?)?;
            if json.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "example": example,
                        "X": x,
                        "seed": seed,
                        "files": [path_a, path_b],
                        "primes": a.entries.len(),
                    })
                );
            } else {
                println!("wrote {path_a} and {path_b} ({} primes)", a.entries.len());
            }
            Ok(0)
        }
    }
}

/// Parse arguments and run; maps domain errors to exit code 1 (clap maps
/// usage errors to 2 on its own).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
