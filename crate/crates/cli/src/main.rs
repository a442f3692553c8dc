//! `nhol`: holomorphs, regular subgroups and fixed point free endomorphisms
//! from the command line.
//!
//! Exit codes: 0 every claim holds, 1 a claim failed (or a formula's
//! hypotheses do not hold), 2 the element budget was exceeded, 3 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use nhol_core::report::RowStatus;
use nhol_core::verify::{self, FpfMethod, HSet};
use nhol_core::{Budget, Error, VerificationReport};

#[derive(Parser, Debug)]
#[command(name = "nhol", version, about = "Holomorphs, regular subgroups and fixed point free endomorphisms")]
struct Cli {
    /// Maximum number of group elements any single computation may produce.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_MAX_ELEMENTS)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a group: order, element orders, automorphisms, socle.
    Group {
        /// Group descriptor, e.g. S5, A5, PGL(2,5), C2xS3.
        spec: String,
        /// Print the full structural summary.
        #[arg(long)]
        info: bool,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Enumerate H0, H1 or H2 of a group.
    Enumerate {
        #[arg(long, value_enum)]
        set: SetArg,
        #[arg(long)]
        group: String,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Count fixed point free endomorphisms.
    CountFpf {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Check one of the two main statements on a concrete group.
    Verify {
        #[arg(value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        group: String,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Reproduce the sporadic Aut(T) table from element-order counts.
    Table {
        /// CSV with header `group,element_order,count`.
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetArg {
    H0,
    H1,
    H2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Brute,
    Formula,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    Theorem1,
    Theorem2,
}

const EXIT_FAIL: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_budget() => EXIT_BUDGET,
        Some(
            Error::UnknownGroup(_)
            | Error::UnsupportedField(_)
            | Error::InvalidArgument(_)
            | Error::Parse { .. }
            | Error::DuplicateRecord { .. }
            | Error::Io(_),
        ) => EXIT_USAGE,
        Some(_) => EXIT_FAIL,
        None if err.downcast_ref::<std::io::Error>().is_some() => EXIT_USAGE,
        None => EXIT_FAIL,
    }
}

fn write_json<T: serde::Serialize>(path: Option<&PathBuf>, value: &T) -> anyhow::Result<()> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn print_claims(report: &VerificationReport) {
    for c in &report.claims {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        println!("  [{mark}] {}: expected {}, computed {}", c.id, c.expected, c.computed);
    }
    println!("{} ({} ms)", if report.passed() { "PASS" } else { "FAIL" }, report.timing_ms);
}

fn verdict(report: &VerificationReport) -> u8 {
    if report.passed() {
        0
    } else {
        EXIT_FAIL
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let budget = Budget::new(cli.budget);
    match cli.command {
        Command::Group { spec, info, json } => {
            let g = verify::group_info(&spec, &budget)?;
            println!("{}: order {}", g.name, g.order);
            if info {
                println!("  generators: {}", g.generators.join(", "));
                println!("  abelian: {}, center order: {}", g.abelian, g.center_order);
                let orders: Vec<String> = g.element_orders.iter().map(|(o, n)| format!("{o}:{n}")).collect();
                println!("  element orders (order:count): {}", orders.join(" "));
                println!("  |Aut| = {}, |Inn| = {}", g.aut_order, g.inner_order);
                println!("  normal subgroup orders: {:?}", g.normal_subgroup_orders);
                println!("  socle order: {}, simple: {}, almost simple: {}", g.socle_order, g.simple, g.almost_simple);
            }
            write_json(json.as_ref(), &g)?;
            Ok(0)
        }
        Command::Enumerate { set, group, json } => {
            let set = match set {
                SetArg::H0 => HSet::H0,
                SetArg::H1 => HSet::H1,
                SetArg::H2 => HSet::H2,
            };
            let e = verify::enumerate(&group, set, &budget)?;
            println!("{:?}({}): {} subgroups", e.set, e.group, e.count);
            for (i, m) in e.members.iter().enumerate() {
                println!(
                    "  #{i}: {:?}, order {}, regular {}, normal in Hol {}, isomorphic to G {}",
                    m.tag, m.order, m.regular, m.normal_in_hol, m.isomorphic_to_g
                );
            }
            if let Some(t) = &e.t {
                println!("  T(G) ≅ {} (order {}), |Hol| = {}, |NHol| = {}", t.structure, t.order, t.hol_order, t.nhol_order);
            }
            print_claims(&e.report);
            write_json(json.as_ref(), &e)?;
            Ok(verdict(&e.report))
        }
        Command::CountFpf { group, method, json } => {
            let method = match method {
                MethodArg::Brute => FpfMethod::Brute,
                MethodArg::Formula => FpfMethod::Formula,
                MethodArg::Both => FpfMethod::Both,
            };
            let (counts, report) = verify::count_fpf(&group, method, &budget)?;
            for c in &counts {
                let buckets: Vec<String> =
                    c.by_kernel.iter().map(|b| format!("|ker|={}:{}", b.kernel.len(), b.count)).collect();
                println!("{} by {:?}: {} [{}]", c.group, c.method, c.total, buckets.join(", "));
            }
            print_claims(&report);
            write_json(json.as_ref(), &serde_json::json!({ "counts": counts, "report": report }))?;
            Ok(verdict(&report))
        }
        Command::Verify { theorem, group, json } => {
            let report = match theorem {
                TheoremArg::Theorem1 => verify::verify_theorem1(&group, &budget)?,
                TheoremArg::Theorem2 => verify::verify_theorem2(&group, &budget)?,
            };
            println!("{theorem:?} on {}", report.group);
            print_claims(&report);
            write_json(json.as_ref(), &report)?;
            Ok(verdict(&report))
        }
        Command::Table { data, json } => {
            let (rows, report) = verify::table(&data, &budget)?;
            for r in &rows {
                let shown = match r.status {
                    RowStatus::NoData => "no data".to_string(),
                    _ => r.computed.map_or_else(String::new, |c| c.to_string()),
                };
                println!("  {:<6} {:>16} -> {:>18} (expected {})", r.group, r.involutions.map_or_else(String::new, |c| c.to_string()), shown, r.expected);
            }
            let matched = rows.iter().filter(|r| r.status == RowStatus::Match).count();
            println!("{matched}/{} rows match", rows.len());
            print_claims(&report);
            write_json(json.as_ref(), &report)?;
            Ok(verdict(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
