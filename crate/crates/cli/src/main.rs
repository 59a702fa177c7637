//! `p7col`: list 3-colouring of triangle-free, P7-free graphs from the shell.
//!
//! Exit codes: 0 decided (SAT or UNSAT, or a passed check), 2 invalid input
//! or rejected certificate, 1 usage, parse or internal error.

mod bench;
mod explain;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use p7col::instance::{emit_instance, emit_result, parse_colouring, parse_instance, witness_line, Format, ParseError};
use p7col::testkit::{generate, oracle_solve, GenKind, GenSpec, ListSpec, TestkitError};
use p7col::{check_promise, solve, ColourMask, Graph, Mode, Outcome, SolveOptions, Stats, Verdict};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Generate(#[from] TestkitError),
    #[error("{0}")]
    Usage(String),
    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Parser)]
#[command(name = "p7col", version, about = "Exact list 3-colouring for {P7, triangle}-free graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Trust,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListsArg {
    /// Every vertex gets {1,2,3}.
    Full,
    /// 70% full lists, the rest random.
    Mixed,
    /// 30% full lists, the rest random.
    Sparse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Generated instances, engine against the backtracking oracle.
    Oracle,
    /// Growing blown-up five-cycles.
    Scale,
    /// Blown-up seven-cycles with random lists.
    C7,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance and print a colouring when one exists.
    Solve {
        #[arg(long, value_enum, default_value = "trust")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
        /// Worker threads for the branch search.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        parallel: u16,
        /// Print search counters to stderr (always included with --json).
        #[arg(long)]
        stats: bool,
        file: PathBuf,
    },
    /// Check a colouring file against an instance.
    Verify { file: PathBuf, colouring: PathBuf },
    /// Check that the graph has no triangle and no induced P7.
    CheckPromise {
        /// Print the decomposition each component is solved with.
        #[arg(long)]
        explain: bool,
        /// Emit the decomposition as a DOT graph instead of JSON.
        #[arg(long, requires = "explain")]
        dot: bool,
        file: PathBuf,
    },
    /// Write a generated instance in the instance format.
    Generate {
        #[arg(long)]
        kind: GenKind,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_enum, default_value = "full")]
        lists: ListsArg,
        #[arg(long)]
        density: Option<f64>,
        /// Class sizes for blow-ups, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
    /// Decide an instance by plain backtracking.
    Oracle {
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Run a timing suite.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn load(path: &Path) -> Result<(Graph, Vec<ColourMask>), CliError> {
    let text = read_input(path)?;
    parse_instance(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn exit_for(v: &Verdict) -> u8 {
    match v {
        Verdict::InvalidInput(_) => 2,
        _ => 0,
    }
}

fn stats_line(s: &Stats) -> String {
    format!(
        "c branches={} survived={} propagations={} sat_instances={} fallback_used={} millis={}",
        s.branches, s.survived, s.propagations, s.sat_instances, s.fallback_used, s.millis
    )
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, CliError> {
    let w = |out: &mut dyn Write, s: &str| {
        out.write_all(s.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
    };
    match cli.cmd {
        Cmd::Solve { mode, json, parallel, stats, file } => {
            let (g, lists) = load(&file)?;
            let mode = match mode {
                ModeArg::Trust => Mode::Trust,
                ModeArg::Verify => Mode::Verify,
            };
            let opts = SolveOptions { mode, threads: parallel as usize, ..Default::default() };
            let outcome = solve(&g, &lists, &opts);
            let format = if json { Format::Json } else { Format::Text };
            w(out, &emit_result(&outcome, format))?;
            if stats && !json {
                eprintln!("{}", stats_line(&outcome.stats));
            }
            Ok(exit_for(&outcome.verdict))
        }
        Cmd::Verify { file, colouring } => {
            let (g, lists) = load(&file)?;
            let text = read_input(&colouring)?;
            let f = parse_colouring(&text, g.n())
                .map_err(|source| CliError::Parse { path: colouring.display().to_string(), source })?;
            match first_defect(&g, &lists, &f) {
                None => {
                    w(out, "VALID\n")?;
                    Ok(0)
                }
                Some(why) => {
                    w(out, &format!("REJECTED\n{why}\n"))?;
                    Ok(2)
                }
            }
        }
        Cmd::CheckPromise { explain, dot, file } => {
            let (g, _) = load(&file)?;
            if let Err(v) = check_promise(&g) {
                w(out, &format!("INVALID\n{}\n", witness_line(&v)))?;
                return Ok(2);
            }
            if !explain {
                w(out, "OK\n")?;
                return Ok(0);
            }
            let report = explain::explain(&g).map_err(|v| CliError::Internal(witness_line(&v)))?;
            if dot {
                w(out, &explain::to_dot(&g, &report))?;
            } else {
                let body = serde_json::to_string_pretty(&report.json()).expect("report serialises");
                w(out, &format!("OK\n{body}\n"))?;
            }
            Ok(0)
        }
        Cmd::Generate { kind, seed, n, lists, density, sizes } => {
            let mut spec = GenSpec::new(kind, n, seed).with_lists(match lists {
                ListsArg::Full => ListSpec::Full,
                ListsArg::Mixed => ListSpec::Random { full: 0.7 },
                ListsArg::Sparse => ListSpec::Random { full: 0.3 },
            });
            if let Some(d) = density {
                if !(0.0..=1.0).contains(&d) {
                    return Err(CliError::Usage(format!("--density must lie in [0, 1], got {d}")));
                }
                spec = spec.with_density(d);
            }
            if let Some(sizes) = sizes {
                spec = spec.with_sizes(sizes);
            }
            let inst = generate(&spec)?;
            w(out, &format!("c {} seed {}\n", kind.name(), seed))?;
            w(out, &emit_instance(&inst.graph, &inst.lists))?;
            Ok(0)
        }
        Cmd::Oracle { json, file } => {
            let (g, lists) = load(&file)?;
            let verdict = match oracle_solve(&g, &lists) {
                Some(f) => Verdict::Colouring(f),
                None => Verdict::Uncolourable,
            };
            let format = if json { Format::Json } else { Format::Text };
            w(out, &emit_result(&Outcome { verdict, stats: Stats::default() }, format))?;
            Ok(0)
        }
        Cmd::Bench { suite, count, parallel, seed } => {
            let report = match suite {
                Suite::Oracle => bench::oracle(count, parallel, seed),
                Suite::Scale => bench::scale(parallel),
                Suite::C7 => bench::c7(count, parallel, seed),
            }
            .map_err(CliError::Internal)?;
            w(out, &report)?;
            Ok(0)
        }
    }
}

fn first_defect(g: &Graph, lists: &[ColourMask], f: &[u8]) -> Option<String> {
    for (v, (&c, m)) in f.iter().zip(lists).enumerate() {
        if !m.contains(c) {
            return Some(format!("vertex {} has colour {} outside its list {:?}", v + 1, c, m));
        }
    }
    g.edges().find(|&(u, v)| f[u] == f[v]).map(|(u, v)| format!("edge {} {} has both ends coloured {}", u + 1, v + 1, f[u]))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; 2 here means an invalid instance.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("p7col: {e}");
            ExitCode::from(1)
        }
    }
}
