//! Command-line front end.
//!
//! Exit codes: `0` success, `1` the mathematics disagrees (a violation or a
//! failed check), `2` usage or input error. Payloads go to stdout,
//! diagnostics to stderr.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{canonical_key, match_series, KeyJson};
use crate::enumerate::{enumerate_classes_with, enumerate_monoids_with, EnumOptions};
use crate::error::Error;
use crate::families::{
    make_b2tilde_4k3, make_borovik, make_star_form, make_xn, single_valued_order3, StarFormParams,
    StarShape,
};
use crate::io::{self, ParseOptions, TableJson, ViolationJson};
use crate::predicates::PredicateReport;
use crate::report;
use crate::table::MValTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn counterexample(stdout: String, stderr: String) -> Self {
        CommandOutcome {
            exit_code: 1,
            stdout,
            stderr,
        }
    }

    fn usage(stderr: String) -> Self {
        CommandOutcome {
            exit_code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nvalued", version, about = "n-valued monoids and groups of order 3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of a table and report its group-theoretic predicates
    Check(CheckArgs),
    /// Match an order-3 table against the series B1..B6
    Classify(TableArgs),
    /// Enumerate all n-valued monoids of order 3
    Enumerate(EnumerateArgs),
    /// Emit a named table as JSON
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Reproduce the classification and its corollaries
    Report {
        #[command(subcommand)]
        report: ReportKind,
    },
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Table file, or `-` for stdin
    table: String,
    /// Accept tables whose unit law fails
    #[arg(long)]
    allow_nonunital: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Table file, `-` for stdin, or `borovik` with `--n`
    table: String,
    /// Order of the mod-n magma when checking `borovik`
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    allow_nonunital: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: u64,
    /// Deduplicate into isomorphism classes
    #[arg(long)]
    classes: bool,
    /// Worker threads (0: all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Enumerate beyond n = 30
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Subcommand)]
enum Family {
    /// The non-reversible group X_n
    Xn {
        #[arg(long)]
        n: u64,
    },
    /// The non-associative mod-n magma
    Borovik {
        #[arg(long)]
        n: u64,
    },
    /// The seven single-valued monoids of order 3
    SingleValued,
    /// The (2k+1)-valued table (0,k,k+1),(1,k,k),(1,k,k),(0,k+1,k)
    B2tilde {
        #[arg(long)]
        k: u64,
    },
    /// The ~B1 star-involutive shape
    Starb1 {
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        m2: u64,
        #[arg(long)]
        n: u64,
    },
    /// The ~B2 star-involutive shape
    Starb2 {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ReportKind {
    /// Run every corollary check; exits 0 only if all pass
    Corollaries {
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 12)]
        xn_max: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

/// Parses `argv` (program name first) and executes, reading `-` tables from
/// `stdin`.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutcome::ok(text)
                }
                _ => CommandOutcome::usage(text),
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome::usage(format!("error: {e}\n")),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payload serializes");
    s.push('\n');
    s
}

fn read_table(source: &str, opts: ParseOptions, stdin: &mut dyn Read) -> Result<MValTable, Error> {
    let text = if source == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Error::Malformed(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| Error::Malformed(format!("reading {source}: {e}")))?
    };
    io::parse_table(&text, opts)
}

/// Unit and associativity verdicts; `Err` carries the exit-1 outcome.
fn axioms(table: &MValTable) -> Result<(), CommandOutcome> {
    let unit = table.check_unit();
    if !unit.is_empty() {
        let list: Vec<Value> = unit
            .iter()
            .map(|v| json!({"cell": [v.left, v.right], "found": v.found.counts(), "expected": v.expected.counts()}))
            .collect();
        return Err(CommandOutcome::counterexample(
            pretty(&json!({"unital": false, "unit_violations": list})),
            format!("unit law fails at {} cell(s)\n", unit.len()),
        ));
    }
    if let Some(v) = table.check_associativity() {
        let (x, y, z) = v.triple;
        return Err(CommandOutcome::counterexample(
            pretty(&json!({"unital": true, "associative": false, "violation": ViolationJson::from(&v)})),
            format!("associativity fails at ({x},{y},{z}): {} != {}\n", v.lhs, v.rhs),
        ));
    }
    Ok(())
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<CommandOutcome, Error> {
    match command {
        Command::Check(args) => {
            let table = if args.table == "borovik" {
                let n = args
                    .n
                    .ok_or_else(|| Error::InvalidArgument("check borovik needs --n".into()))?;
                make_borovik(n)?
            } else {
                let opts = ParseOptions {
                    allow_nonunital: args.allow_nonunital,
                };
                read_table(&args.table, opts, stdin)?
            };
            if let Err(outcome) = axioms(&table) {
                return Ok(outcome);
            }
            let mut v = serde_json::to_value(PredicateReport::of(&table)).expect("report serializes");
            v["unital"] = json!(true);
            v["associative"] = json!(true);
            if table.order() == 3 {
                v["matches"] = serde_json::to_value(match_series(&table)?).expect("matches serialize");
            }
            Ok(CommandOutcome::ok(pretty(&v)))
        }
        Command::Classify(args) => {
            let opts = ParseOptions {
                allow_nonunital: args.allow_nonunital,
            };
            let table = read_table(&args.table, opts, stdin)?;
            if let Err(outcome) = axioms(&table) {
                return Ok(outcome);
            }
            let matches = match_series(&table)?;
            let key = canonical_key(&table);
            let payload = json!({
                "n": table.n(),
                "matches": matches,
                "canonical_key": KeyJson(&key),
            });
            if matches.is_empty() {
                return Ok(CommandOutcome::counterexample(
                    pretty(&payload),
                    "associative order-3 table matches no series\n".into(),
                ));
            }
            Ok(CommandOutcome::ok(pretty(&payload)))
        }
        Command::Enumerate(args) => {
            let opts = EnumOptions {
                jobs: args.jobs,
                allow_large: args.allow_large,
            };
            let stdout = if args.classes {
                let classes = enumerate_classes_with(args.n, &opts)?;
                match args.format {
                    Format::Json => pretty(&classes),
                    Format::Csv => io::classes_to_csv(&classes)?,
                    Format::Table => io::classes_to_text(&classes),
                }
            } else {
                let tables = enumerate_monoids_with(args.n, &opts)?;
                match args.format {
                    Format::Json => {
                        let list: Vec<TableJson> = tables.iter().map(TableJson::from).collect();
                        pretty(&list)
                    }
                    Format::Csv => io::tables_to_csv(&tables)?,
                    Format::Table => io::tables_to_text(&tables),
                }
            };
            Ok(CommandOutcome::ok(stdout))
        }
        Command::Family { family } => {
            let stdout = match family {
                Family::SingleValued => {
                    let list: Vec<TableJson> = single_valued_order3().iter().map(TableJson::from).collect();
                    pretty(&list)
                }
                other => {
                    let table = match other {
                        Family::Xn { n } => make_xn(n)?,
                        Family::Borovik { n } => make_borovik(n)?,
                        Family::B2tilde { k } => make_b2tilde_4k3(k)?,
                        Family::Starb1 { m1, a1, m2, n } => {
                            make_star_form(&StarFormParams { m1, m2, a1, n }, StarShape::B1Tilde)?
                        }
                        Family::Starb2 { a, n } => make_star_form(&StarFormParams::b2(a, n)?, StarShape::B2Tilde)?,
                        Family::SingleValued => unreachable!(),
                    };
                    pretty(&TableJson::from(&table))
                }
            };
            Ok(CommandOutcome::ok(stdout))
        }
        Command::Report {
            report: ReportKind::Corollaries { n_max, xn_max, jobs },
        } => {
            if n_max == 0 {
                return Err(Error::InvalidArgument("--n-max must be at least 1".into()));
            }
            let opts = EnumOptions {
                jobs,
                allow_large: false,
            };
            let r = report::corollaries(n_max, xn_max, &opts)?;
            let mut stderr = String::new();
            for c in &r.checks {
                stderr.push_str(&format!(
                    "[{}] {} ({})\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            for note in &r.notes {
                stderr.push_str(&format!("[NOTE] {note}\n"));
            }
            let stdout = pretty(&r);
            Ok(if r.passed() {
                CommandOutcome {
                    exit_code: 0,
                    stdout,
                    stderr,
                }
            } else {
                CommandOutcome::counterexample(stdout, stderr)
            })
        }
    }
}
