//! `eds-audit`: run the reduction procedure and the exact oracle over graph
//! corpora and record where they agree.

mod input;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use eds_core::harness::{
    audit_graph, compare_graph, decide_report, oracle_row, CompareOptions, CompareOutcome, CompareRow, CompareSummary,
    ErrorRow, TraceDocument,
};
use eds_core::oracle::{OracleOptions, MAX_N_ENV, NAIVE_MAX_N};
use eds_core::registry::{EdsDecider, EdsOracle, Registry};
use eds_core::{encode_graph6, Graph};

use input::{collect_jobs, Format, Job};

#[derive(Debug)]
pub enum CliError {
    /// Bad input or usage; exit code 2.
    Input(String),
    /// Size guard or retry budget exceeded; exit code 3.
    Capacity(String),
    /// Filesystem failure; exit code 1.
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Input(_) => 2,
            CliError::Capacity(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Capacity(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

fn io_err(what: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", what.display()))
}

#[derive(Parser)]
#[command(name = "eds-audit", version, about = "Efficient domination: reduction procedure vs exact oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// graph6 string, file of graph6 lines, or edge-list file; stdin if omitted
    input: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Generator spec such as random-regular:n=12,r=3,seed=1..500 (repeatable)
    #[arg(long = "gen")]
    gens: Vec<String>,
    /// Oracle vertex limit (overrides EDS_AUDIT_MAX_N)
    #[arg(long)]
    max_n: Option<usize>,
    /// Write records to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the reduction procedure on each input graph.
    Decide {
        #[command(flatten)]
        input: InputArgs,
        /// smallest-id or seeded:<seed>
        #[arg(long, default_value = "smallest-id")]
        decider: String,
        /// Accepted for symmetry with the other commands; decide output has no timings.
        #[arg(long)]
        deterministic: bool,
    },
    /// Run the exact oracle on each input graph.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// List every efficient dominating set
        #[arg(long)]
        enumerate: bool,
        /// exact or naive
        #[arg(long, default_value = "exact")]
        oracle: String,
        /// Oracle vertex limit (overrides EDS_AUDIT_MAX_N)
        #[arg(long)]
        max_n: Option<usize>,
        /// Report zero elapsed time
        #[arg(long)]
        deterministic: bool,
    },
    /// Compare the reduction against the oracle and write JSONL records.
    Compare {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Seed range for random-regular specs that omit seed=
        #[arg(long)]
        seeds: Option<String>,
        /// Directory receiving graph6, outputs and trace of each disagreement
        #[arg(long)]
        save_counterexamples: Option<PathBuf>,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Single-threaded with zeroed timings, for byte-stable output
        #[arg(long)]
        deterministic: bool,
        /// smallest-id or seeded:<seed>
        #[arg(long, default_value = "smallest-id")]
        decider: String,
        /// exact or naive
        #[arg(long, default_value = "exact")]
        oracle: String,
        /// Seeded drop orders used for the confluence flag
        #[arg(long, default_value = "1..5")]
        confluence_seeds: String,
    },
    /// Check the sound reduction steps against full enumeration.
    AuditFacts {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Seeded drop orders for the confluence check
        #[arg(long, default_value = "1..20")]
        seeds: String,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// exact or naive
        #[arg(long, default_value = "exact")]
        oracle: String,
    },
    /// Print graph6 lines for generator specs.
    Gen {
        /// Generator specs, e.g. cycle:n=6 or random-regular:n=10,r=3,seed=7
        #[arg(required = true)]
        specs: Vec<String>,
        /// Seed range for random-regular specs that omit seed=
        #[arg(long)]
        seeds: Option<String>,
        /// Write graph6 lines to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(raw: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Input(format!("invalid seed range {raw:?}"));
    match raw.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi): (u64, u64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
            Ok((lo..=hi).collect())
        }
        None => raw.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect(),
    }
}

fn oracle_options(max_n: Option<usize>, default_max: usize) -> Result<OracleOptions, CliError> {
    let mut opts = OracleOptions { max_n: default_max, ..OracleOptions::default() };
    if std::env::var_os(MAX_N_ENV).is_some() {
        opts.max_n = OracleOptions::from_env()?.max_n;
    }
    if let Some(m) = max_n {
        opts.max_n = m;
    }
    Ok(opts)
}

/// Output sink: a file when `--out` is given, else stdout.
fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(io_err(p))?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn write_line(w: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(w, "{line}").map_err(|e| CliError::Io(format!("write failed: {e}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types serialize")
}

fn decide_line(g: &Graph, decider: &dyn EdsDecider) -> Result<String, String> {
    match decide_report(g, decider) {
        Ok((report, _)) => Ok(to_json(&report)),
        Err(e) => Err(to_json(&ErrorRow { graph6: encode_graph6(g), n: g.n(), error: e.to_string() })),
    }
}

fn oracle_line(g: &Graph, oracle: &dyn EdsOracle, enumerate: bool, deterministic: bool) -> Result<String, CliError> {
    Ok(to_json(&oracle_row(g, oracle, enumerate, deterministic)?))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Decide { input, decider, deterministic: _ } => {
            let registry = Registry::default();
            let decider = registry.decider(&decider)?;
            let graphs = input::read_graphs(input.input.as_deref(), input.format)?;
            let mut out = sink(None)?;
            let mut failed = None;
            for g in &graphs {
                match decide_line(g, decider.as_ref()) {
                    Ok(line) => write_line(&mut out, &line)?,
                    Err(line) => {
                        write_line(&mut out, &line)?;
                        failed = Some(line);
                    }
                }
            }
            out.flush().map_err(|e| CliError::Io(e.to_string()))?;
            match failed {
                Some(line) => Err(CliError::Input(format!("precondition violated: {line}"))),
                None => Ok(()),
            }
        }
        Command::Oracle { input, enumerate, oracle, max_n, deterministic } => {
            let default_max = if oracle == "naive" { NAIVE_MAX_N } else { eds_core::oracle::DEFAULT_MAX_N };
            let registry = Registry::new(oracle_options(max_n, default_max)?);
            let oracle = registry.oracle(&oracle)?;
            let graphs = input::read_graphs(input.input.as_deref(), input.format)?;
            let mut out = sink(None)?;
            for g in &graphs {
                write_line(&mut out, &oracle_line(g, oracle.as_ref(), enumerate, deterministic)?)?;
            }
            out.flush().map_err(|e| CliError::Io(e.to_string()))
        }
        Command::Compare {
            corpus,
            seeds,
            save_counterexamples,
            jobs,
            deterministic,
            decider,
            oracle,
            confluence_seeds,
        } => {
            let registry = Registry::new(oracle_options(corpus.max_n, eds_core::oracle::DEFAULT_MAX_N)?);
            let decider = registry.decider(&decider)?;
            let oracle = registry.oracle(&oracle)?;
            let opts = CompareOptions { confluence_seeds: parse_range(&confluence_seeds)?, deterministic };
            // fail on unwritable destinations before doing any work
            let mut out = sink(corpus.out.as_deref())?;
            if let Some(dir) = &save_counterexamples {
                std::fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            let jobs_list =
                collect_jobs(&registry, corpus.input.input.as_deref(), corpus.input.format, &corpus.gens, seeds.as_deref())?;

            let work = |job: &Job| compare_graph(&job.graph, job.genspec.clone(), decider.as_ref(), oracle.as_ref(), &opts);
            let results: Vec<_> = if deterministic || jobs <= 1 {
                jobs_list.iter().map(work).collect()
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
                pool.install(|| jobs_list.par_iter().map(work).collect())
            };

            let mut summary = CompareSummary::default();
            for (index, (job, result)) in jobs_list.iter().zip(results).enumerate() {
                let outcome = result?;
                write_line(&mut out, &to_json(&outcome.row))?;
                summary.add(&outcome.row);
                if let (Some(dir), true) = (&save_counterexamples, outcome.is_counterexample()) {
                    save_counterexample(dir, index + 1, &job.graph, &outcome, decider.as_ref(), oracle.as_ref())?;
                }
            }
            out.flush().map_err(|e| CliError::Io(e.to_string()))?;
            drop(out);
            let line = to_json(&serde_json::json!({ "summary": summary }));
            if corpus.out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::AuditFacts { corpus, seeds, jobs, oracle } => {
            let registry = Registry::new(oracle_options(corpus.max_n, NAIVE_MAX_N)?);
            let oracle = registry.oracle(&oracle)?;
            let seeds = parse_range(&seeds)?;
            let mut out = sink(corpus.out.as_deref())?;
            let jobs_list = collect_jobs(&registry, corpus.input.input.as_deref(), corpus.input.format, &corpus.gens, None)?;
            let work = |job: &Job| audit_graph(&job.graph, job.genspec.clone(), oracle.as_ref(), &seeds);
            let results: Vec<_> = if jobs <= 1 {
                jobs_list.iter().map(work).collect()
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
                pool.install(|| jobs_list.par_iter().map(work).collect())
            };
            let (mut soundness, mut converse, mut confluence, mut graphs) = (0, 0, 0, 0);
            for result in results {
                let row = result?;
                graphs += 1;
                soundness += row.soundness_violations();
                converse += row.prop24_converse_violations.len();
                confluence += row.confluence_violations.len();
                write_line(&mut out, &to_json(&row))?;
            }
            out.flush().map_err(|e| CliError::Io(e.to_string()))?;
            drop(out);
            let line = to_json(&serde_json::json!({ "summary": {
                "graphs": graphs,
                "soundness_violations": soundness,
                "prop24_converse_violations": converse,
                "confluence_violations": confluence,
            }}));
            if corpus.out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::Gen { specs, seeds, out } => {
            let registry = Registry::default();
            let mut lines = Vec::new();
            for raw in &specs {
                for spec in input::expand_spec(raw, seeds.as_deref())? {
                    lines.push(encode_graph6(&registry.generate(&spec)?.0));
                }
            }
            let mut w = sink(out.as_deref())?;
            for l in &lines {
                write_line(&mut w, l)?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Writes `cx-NNNNN.g6` plus the exact `decide --deterministic` and
/// `oracle --deterministic` outputs and the full trace, so the finding can
/// be replayed from the graph6 file alone.
fn save_counterexample(
    dir: &Path,
    index: usize,
    g: &Graph,
    outcome: &CompareOutcome,
    decider: &dyn EdsDecider,
    oracle: &dyn EdsOracle,
) -> Result<(), CliError> {
    let stem = dir.join(format!("cx-{index:05}"));
    let write = |ext: &str, body: String| {
        let path = stem.with_extension(ext);
        std::fs::write(&path, body).map_err(io_err(&path))
    };
    write("g6", format!("{}\n", encode_graph6(g)))?;
    let decide = match decide_line(g, decider) {
        Ok(l) | Err(l) => l,
    };
    write("decide.json", format!("{decide}\n"))?;
    write("oracle.json", format!("{}\n", oracle_line(g, oracle, false, true)?))?;
    if let Some(d) = &outcome.decision {
        write("trace.json", format!("{}\n", to_json(&TraceDocument::new(g, decider, d))))?;
    }
    if let CompareRow::Record(r) = &outcome.row {
        write("record.json", format!("{}\n", to_json(r)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eds-audit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
