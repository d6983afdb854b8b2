use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperdual::export;
use hyperdual::hmap::serialize;
use hyperdual::parallel::{self, Engine};
use hyperdual::{load, load_flags};
use hyperdual_core::census::CensusOptions;
use hyperdual_core::structure::intersection_graph;
use hyperdual_core::verify::{hex, Suite, Verifier};
use hyperdual_core::{
    arrows_from_flags, canonical_form, count_summary, flags_from_arrows, is_isomorphic, partial_dual,
    retrace_partial_dual,
};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "hyperdual", version, about = "Partial duals and genus polynomials of ribbon hypermaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print v, e, f, d, k, Euler characteristic, Euler genus and orientability.
    Stats {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the flag structure as JSON.
    Flags { file: PathBuf },
    /// Write the partial dual with respect to the given hyperedges.
    Dual {
        file: PathBuf,
        /// Comma-separated hyperedge labels; empty for the identity.
        #[arg(long, value_delimiter = ',', num_args = 0..=1, default_value = "")]
        edges: Vec<String>,
        /// Also build the dual by retracing curves and compare.
        #[arg(long)]
        oracle: bool,
        /// Emit the dual's flag structure as JSON instead of hmap text.
        #[arg(long)]
        json: bool,
    },
    /// Print the partial-dual genus polynomial.
    Poly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        #[arg(long)]
        json: bool,
        #[arg(long, env = "HYPERDUAL_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Print the intersection graph of a hyper-bouquet.
    Igraph {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
    },
    /// Run every applicable property suite on one hypermap.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two files describe isomorphic hypermaps (exit 0 or 1).
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate hypermaps up to isomorphism and run property suites on them.
    Census {
        #[arg(long)]
        max_flags: usize,
        /// Keep only orientable hypermaps.
        #[arg(long)]
        orientable: bool,
        /// Keep only connected hypermaps.
        #[arg(long)]
        connected: bool,
        /// Keep only hyper-bouquets.
        #[arg(long)]
        bouquets: bool,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "HYPERDUAL_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow flag bounds above the guard.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Formula,
    Both,
}

struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn input(e: impl std::fmt::Display) -> Self {
        Self { code: EXIT_INPUT, message: e.to_string() }
    }

    fn violation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VIOLATION, message: message.into() }
    }
}

type Outcome = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("hyperdual: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Stats { file, json } => stats(&file, json),
        Command::Flags { file } => {
            let (_, fs) = load_flags(&file).map_err(Fail::input)?;
            println!("{}", serde_json::to_string_pretty(&export::flags_json(&fs)).expect("json"));
            Ok(0)
        }
        Command::Dual { file, edges, oracle, json } => dual(&file, &edges, oracle, json),
        Command::Poly { file, method, json, jobs } => parallel::with_jobs(jobs, || poly(&file, method, json)),
        Command::Igraph { file, dot, json } => igraph(&file, dot, json),
        Command::Check { file, json } => check(&file, json),
        Command::Iso { first, second, json } => {
            let (_, a) = load_flags(&first).map_err(Fail::input)?;
            let (_, b) = load_flags(&second).map_err(Fail::input)?;
            let iso = is_isomorphic(&a, &b);
            if json {
                println!("{}", json!({"isomorphic": iso}));
            } else {
                println!("{}", if iso { "isomorphic" } else { "not isomorphic" });
            }
            Ok(if iso { 0 } else { 1 })
        }
        Command::Census { max_flags, orientable, connected, bouquets, suite, jobs, out, force, json } => {
            let opts = CensusOptions {
                max_flags,
                connected_only: connected,
                orientable_only: orientable,
                bouquets_only: bouquets,
                force,
            };
            parallel::with_jobs(jobs, || census(&opts, &suite, out.as_deref(), json))
        }
    }
}

fn stats(file: &Path, json: bool) -> Outcome {
    let (_, fs) = load_flags(file).map_err(Fail::input)?;
    let c = count_summary(&fs);
    if json {
        println!("{}", export::counts_json(&c));
    } else {
        println!("{}", export::counts_text(&c));
    }
    Ok(0)
}

fn dual(file: &Path, edges: &[String], oracle: bool, json: bool) -> Outcome {
    let ap = load(file).map_err(Fail::input)?;
    let edges: Vec<&str> = edges.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
    let fs = flags_from_arrows(&ap);
    let subset = fs.edge_set(&edges).map_err(Fail::input)?;
    let dual = partial_dual(&fs, &subset).map_err(Fail::input)?;
    if oracle {
        let retraced = retrace_partial_dual(&ap, &edges).map_err(Fail::input)?;
        let (want, got) = (canonical_form(&dual), canonical_form(&flags_from_arrows(&retraced)));
        if want != got {
            return Err(Fail::violation(format!(
                "retraced dual {} differs from swapped dual {}",
                hex(&got),
                hex(&want)
            )));
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&export::flags_json(&dual)).expect("json"));
    } else {
        let out = arrows_from_flags(&dual).map_err(Fail::input)?.with_name(ap.name().map(String::from));
        print!("{}", serialize(&out));
    }
    Ok(0)
}

fn poly(file: &Path, method: Method, json: bool) -> Outcome {
    let (_, fs) = load_flags(file).map_err(Fail::input)?;
    let run = |engine| parallel::polynomial(&fs, engine).map_err(Fail::input);
    let p = match method {
        Method::Direct => run(Engine::Direct)?,
        Method::Formula => run(Engine::Formula)?,
        Method::Both => {
            let (direct, formula) = (run(Engine::Direct)?, run(Engine::Formula)?);
            if direct != formula {
                return Err(Fail::violation(format!("engines disagree: direct {direct}, formula {formula}")));
            }
            formula
        }
    };
    if json {
        println!("{}", export::poly_json(&p));
    } else {
        println!("{p}");
    }
    Ok(0)
}

fn igraph(file: &Path, dot: bool, json: bool) -> Outcome {
    let (_, fs) = load_flags(file).map_err(Fail::input)?;
    let g = intersection_graph(&fs).map_err(Fail::input)?;
    if dot {
        println!("{}", export::igraph_dot(&g));
    } else if json {
        println!("{}", export::igraph_json(&g));
    } else {
        println!("{}", export::igraph_text(&g));
    }
    Ok(0)
}

fn check(file: &Path, json: bool) -> Outcome {
    let (_, fs) = load_flags(file).map_err(Fail::input)?;
    let verifier = Verifier::default();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for suite in Suite::ALL {
        if !suite.applies(&fs) {
            rows.push((suite, "skip", 0));
            continue;
        }
        let found = verifier.check(suite, &fs);
        rows.push((suite, if found.is_empty() { "pass" } else { "fail" }, found.len()));
        failures.extend(found);
    }
    if json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(s, status, n)| json!({"suite": s.name(), "status": status, "failures": n}))
            .collect();
        let details: Vec<_> = failures.iter().map(export::failure_json).collect();
        println!("{}", serde_json::to_string_pretty(&json!({"suites": rows, "failures": details})).expect("json"));
    } else {
        let width = Suite::ALL.iter().map(|s| s.name().len()).max().unwrap_or(0);
        for (suite, status, n) in &rows {
            if *n > 0 {
                println!("{:width$}  {status} ({n})", suite.name());
            } else {
                println!("{:width$}  {status}", suite.name());
            }
        }
        for f in &failures {
            println!("  {}: {} at {}: expected {}, got {}", f.suite, f.check, f.witness, f.expected, f.actual);
        }
    }
    Ok(if failures.is_empty() { 0 } else { EXIT_VIOLATION })
}

fn census(opts: &CensusOptions, suite: &str, out: Option<&Path>, json: bool) -> Outcome {
    let suites = Suite::parse_selection(suite).map_err(Fail::input)?;
    let instances = parallel::census(opts).map_err(Fail::input)?;
    let report = parallel::verify(&Verifier::default(), &instances, &suites, suite);
    let value = export::report_json(&report);
    let pretty = serde_json::to_string_pretty(&value).expect("json");
    if let Some(path) = out {
        std::fs::write(path, format!("{pretty}\n"))
            .map_err(|e| Fail { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })?;
    }
    if json {
        println!("{pretty}");
    } else {
        println!(
            "{} instances, suite {}: {} ({} failures)",
            report.instances,
            report.suite,
            if report.passed() { "pass" } else { "fail" },
            report.failures.len()
        );
        for f in report.failures.iter().take(20) {
            println!("  {} [{}] {}: expected {}, got {}", f.check, hex(&f.canonical_form), f.witness, f.expected, f.actual);
        }
    }
    Ok(if report.passed() { 0 } else { EXIT_VIOLATION })
}
