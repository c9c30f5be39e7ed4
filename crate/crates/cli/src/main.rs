use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kdis_core::bounds::{self, BoundFn};
use kdis_core::enumeration::enumerate_kdis;
use kdis_core::generate::generate_graphs;
use kdis_core::products::{lexicographic_product, tensor_product};
use kdis_core::search::{compute_m, compute_mi_table};
use kdis_core::{graph6, FamilyFilter};
use serde::Serialize;

mod verify;

/// Exit status for usage and parse errors; clap uses the same code.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "kdis", version, about = "Count, search and verify k-dominating independent sets")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the k-DISes of a graph6 graph, or of each graph6 line on stdin.
    Count {
        graph6: Option<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Also print every k-DIS.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite and print a per-check table.
    Verify {
        suite: verify::Suite,
        /// Largest order for the family searches.
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest order searched for m(k, t).
        #[arg(long, default_value_t = 9)]
        n_budget: usize,
        /// Largest k for m(k, 2) and m(k, 3).
        #[arg(long, default_value_t = 2)]
        k_max: u32,
        #[arg(long)]
        json: bool,
    },
    /// Maximum k-DIS count over one family and order, with witnesses (JSON).
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = FamilyFilter::All)]
        family: FamilyFilter,
    },
    /// Smallest order with at least t k-DISes (JSON).
    M {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 9)]
        n_budget: usize,
    },
    /// Product of two graph6 graphs, printed as graph6.
    Product {
        kind: ProductKind,
        a: String,
        b: String,
    },
    /// Print one graph6 line per isomorphism class.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = FamilyFilter::All)]
        family: FamilyFilter,
    },
    /// Evaluate a bound function over a range of k (JSON summary or CSV values).
    Sweep {
        #[arg(long, value_parser = parse_bound)]
        function: BoundFn,
        #[arg(long, default_value_t = 3)]
        k_lo: u64,
        #[arg(long)]
        k_hi: u64,
        #[arg(long, default_value_t = bounds::EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = bounds::BETA)]
        beta: f64,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    /// G·H: (u,v)~(x,y) iff u~x, or u=x and v~y.
    Lex,
    /// G×H: (u,v)~(x,y) iff u~x and v~y.
    Tensor,
}

fn parse_bound(s: &str) -> Result<BoundFn, String> {
    s.parse().map_err(|e: kdis_core::Error| e.to_string())
}

/// A failed command: message plus exit status.
struct Failure(String, u8);

impl From<kdis_core::Error> for Failure {
    fn from(e: kdis_core::Error) -> Self {
        Failure(e.to_string(), USAGE)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string(), 1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure(e.to_string(), 1))?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct CountReport {
    graph6: String,
    n: usize,
    k: u32,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sets: Option<Vec<Vec<usize>>>,
}

fn count_one(text: &str, k: u32, list: bool, json: bool, out: &mut impl Write) -> Result<(), Failure> {
    let g = graph6::decode(text)?;
    let found = enumerate_kdis(&g, k);
    if json {
        let report = CountReport {
            graph6: graph6::encode(&g),
            n: g.n(),
            k,
            count: found.len(),
            sets: list.then(|| found.sets.iter().map(|s| s.to_vec()).collect()),
        };
        writeln!(out, "{}", serde_json::to_string(&report).map_err(|e| Failure(e.to_string(), 1))?)?;
    } else {
        writeln!(out, "{}", found.len())?;
        if list {
            for s in &found.sets {
                writeln!(out, "{s}")?;
            }
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Count { graph6, k, list, json } => match graph6 {
            Some(text) => count_one(&text, k, list, json, &mut out)?,
            None => {
                for (i, line) in io::stdin().lock().lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    count_one(&line, k, list, json, &mut out)
                        .map_err(|Failure(msg, code)| Failure(format!("line {}: {msg}", i + 1), code))?;
                }
            }
        },
        Command::Verify { suite, n_max, n_budget, k_max, json } => {
            let budgets = verify::Budgets { n_max, n_budget, k_max };
            let report = verify::run(suite, budgets)?;
            if json {
                print_json(&report)?;
            } else {
                write!(out, "{}", verify::render_table(&report))?;
            }
            return Ok(if report.passed { 0 } else { 1 });
        }
        Command::Search { n, k, family } => print_json(&compute_mi_table(n, k, family)?)?,
        Command::M { k, t, n_budget } => print_json(&compute_m(k, t, n_budget)?)?,
        Command::Product { kind, a, b } => {
            let (g, h) = (graph6::decode(&a)?, graph6::decode(&b)?);
            let p = match kind {
                ProductKind::Lex => lexicographic_product(&g, &h)?,
                ProductKind::Tensor => tensor_product(&g, &h)?,
            };
            writeln!(out, "{}", graph6::encode(&p))?;
        }
        Command::Generate { n, family } => {
            for g in generate_graphs(n, family)? {
                writeln!(out, "{}", graph6::encode(&g))?;
            }
        }
        Command::Sweep { function, k_lo, k_hi, epsilon, beta, csv } => {
            let report = bounds::sweep_positivity(function, k_lo, k_hi, epsilon, beta)?;
            if csv {
                writeln!(out, "k,{}", function.name())?;
                for (k, v) in bounds::sweep_values(function, k_lo, k_hi, epsilon, beta) {
                    writeln!(out, "{k},{v:e}")?;
                }
            } else {
                print_json(&report)?;
            }
        }
    }
    Ok(0)
}
