//! `nearopt`: membership checks, certified colorings, decompositions, exact
//! oracles, named graphs and property sweeps from the command line.
//!
//! Exit codes: 0 success, 1 not a class member, 2 unreadable or malformed
//! input, 3 lemma violation, 4 sweep failures, 5 oracle budget exhausted.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nearopt_core::colorer::{color_with_options, ColorError, ColorOptions};
use nearopt_core::decompose::{decompose_c5, decompose_c7, DecomposeError};
use nearopt_core::detect::check_class_membership;
use nearopt_core::dimacs::{parse_any, write_dimacs, write_json};
use nearopt_core::harness::{run_sweep, SweepConfig};
use nearopt_core::oracles::{budget_from_env, chromatic_number, clique_number};
use nearopt_core::witnesses::{complete_graph, cycle_graph, gstar, schlafli_complement};
use nearopt_core::Graph;

#[derive(Parser)]
#[command(name = "nearopt", version, about = "Coloring (P2+P4, K4-e)-free graphs with at most max(6, omega) colors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report class membership, with a forbidden induced subgraph if any.
    Check {
        /// DIMACS or JSON graph file; `-` reads stdin.
        file: String,
    },
    /// Color a class member and print its certificate.
    Color {
        file: String,
        /// Write the certificate JSON here instead of stdout.
        #[arg(long)]
        certificate: Option<String>,
        /// Replace a failing leaf by an exact coloring and log the discrepancy.
        #[arg(long)]
        fallback_exact: bool,
    },
    /// Print the C5 or C7 decomposition around a labeled induced cycle.
    Decompose {
        file: String,
        /// Cycle vertices in order, 0-indexed: 5 or 7 comma-separated ids.
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<usize>,
    },
    /// Exact chromatic or clique number.
    Oracle {
        #[arg(value_enum)]
        which: OracleKind,
        file: String,
    },
    /// Print a named graph (DIMACS by default).
    Witness {
        #[arg(value_enum)]
        family: Family,
        /// Order for `kn` and `cn`.
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Random property sweep; prints the JSON report.
    Sweep {
        /// Vertex-count range, inclusive: `A..B`, `A..=B` or `N`.
        #[arg(long = "n", default_value = "5..12", value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare every sample with the exact chromatic number.
        #[arg(long)]
        exact: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Chi,
    Omega,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Schlafli,
    Gstar,
    Kn,
    Cn,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

enum Failure {
    NotMember(String),
    Input(String),
    Lemma(String),
    Sweep(usize),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::NotMember(_) => 1,
            Failure::Input(_) => 2,
            Failure::Lemma(_) => 3,
            Failure::Sweep(_) => 4,
            Failure::Budget(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::NotMember(s) | Failure::Input(s) | Failure::Lemma(s) | Failure::Budget(s) => s.clone(),
            Failure::Sweep(n) => format!("{n} sweep failures"),
        }
    }
}

fn read_graph(file: &str) -> Result<Graph, Failure> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{file}: {e}")))?
    };
    parse_any(&text).map_err(|e| Failure::Input(format!("{file}: {e}")))
}

fn write_out(path: &str, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file } => {
            let g = read_graph(&file)?;
            let report = check_class_membership(&g);
            println!("{}", json(&report));
            if !report.is_member() {
                let w = report.violation.as_ref().expect("non-members carry a witness");
                return Err(Failure::NotMember(format!("induced {} at {:?}", w.pattern, w.map)));
            }
        }
        Command::Color {
            file,
            certificate,
            fallback_exact,
        } => {
            let g = read_graph(&file)?;
            let opts = ColorOptions {
                fallback_exact,
                budget: budget_from_env(),
            };
            let cert = color_with_options(&g, &opts).map_err(|e| match e {
                ColorError::NotAMember(r) => Failure::NotMember(format!("not a class member: {}", json(&r))),
                ColorError::LemmaViolation(v) => Failure::Lemma(format!("lemma violation: {v}")),
                ColorError::Decompose(e) => Failure::Lemma(format!("decomposition failed: {e}")),
                ColorError::Oracle(e) => Failure::Budget(e.to_string()),
            })?;
            let text = json(&cert);
            match certificate {
                Some(path) => {
                    write_out(&path, &text)?;
                    println!(
                        "case {} leaf {} colors_used {} omega {} claim {}",
                        cert.case,
                        cert.leaf,
                        cert.colors_used,
                        cert.omega.map_or("?".into(), |w| w.to_string()),
                        cert.bound_claim
                    );
                }
                None => println!("{text}"),
            }
        }
        Command::Decompose { file, cycle } => {
            let g = read_graph(&file)?;
            if let Some(&v) = cycle.iter().find(|&&v| v >= g.n()) {
                return Err(Failure::Input(format!("cycle vertex {v} out of range")));
            }
            let out = match cycle.len() {
                5 => decompose_c5(&g, cycle.clone().try_into().unwrap()).map(|d| json(&d)),
                7 => decompose_c7(&g, cycle.clone().try_into().unwrap()).map(|d| json(&d)),
                k => return Err(Failure::Input(format!("--cycle needs 5 or 7 vertices, got {k}"))),
            };
            match out {
                Ok(text) => println!("{text}"),
                Err(e @ DecomposeError::NotAnInducedCycle(_)) => return Err(Failure::Input(e.to_string())),
                Err(e) => return Err(Failure::NotMember(e.to_string())),
            }
        }
        Command::Oracle { which, file } => {
            let g = read_graph(&file)?;
            match which {
                OracleKind::Omega => println!("{}", clique_number(&g).0),
                OracleKind::Chi => {
                    let c = chromatic_number(&g, budget_from_env()).map_err(|e| Failure::Budget(e.to_string()))?;
                    println!("{}", c.chi);
                }
            }
        }
        Command::Witness { family, n, json: as_json } => {
            let need = || n.ok_or_else(|| Failure::Input("this family needs an order N".into()));
            let g = match family {
                Family::Schlafli => schlafli_complement(),
                Family::Gstar => gstar(),
                Family::Kn => complete_graph(need()?).map_err(|e| Failure::Input(e.to_string()))?,
                Family::Cn => cycle_graph(need()?).map_err(|e| Failure::Input(e.to_string()))?,
            };
            if as_json {
                println!("{}", write_json(&g));
            } else {
                print!("{}", write_dimacs(&g));
            }
        }
        Command::Sweep {
            n: (n_min, n_max),
            p,
            count,
            seed,
            exact,
            report,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Input(format!("--p must lie in [0, 1], got {p}")));
            }
            let cfg = SweepConfig {
                n_min,
                n_max,
                p,
                count,
                seed,
                exact,
                budget: budget_from_env(),
                ..SweepConfig::default()
            };
            let r = run_sweep(&cfg);
            let text = r.to_json();
            match report {
                Some(path) => write_out(&path, &text)?,
                None => println!("{text}"),
            }
            eprintln!(
                "{} samples, {} members, {} failures, cases {:?}",
                r.counters.samples,
                r.counters.members,
                r.failures.len(),
                r.case_histogram
            );
            if !r.passed() {
                return Err(Failure::Sweep(r.failures.len()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("nearopt: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
