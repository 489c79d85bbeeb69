mod error;
mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use recip_lab::distributions::{delta_r, delta_trace, run_experiment, ExperimentConfig, ExperimentReport};
use recip_lab::fppoly::{count_irreducible_reciprocal, Prime};
use recip_lab::hyperoct::{classify_galois, GaloisReport};
use recip_lab::limits;
use recip_lab::verify::{run_suite, Suite, SuiteReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::input::{literal_or_file, load_config, parse_measure, parse_poly, Layout};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const GIT: &str = env!("RECIP_LAB_GIT_DESCRIBE");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonlines,
}

#[derive(Parser, Debug)]
#[command(
    name = "recip-lab",
    version,
    about = "Random reciprocal polynomials: checks, experiments, counts"
)]
struct Cli {
    /// Seed for randomized checks; overrides the seed in an experiment config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a property suite: chebyshev, trace, euclid, residues, crossing,
    /// fourier, discriminant, hyperoct, counts, or all.
    Verify { suite: String },
    /// Run an experiment described by a JSON config file.
    Experiment { config: PathBuf },
    /// Galois report for a monic reciprocal polynomial, given as a
    /// comma-separated coefficient list or a file containing one.
    Classify {
        poly: String,
        /// Read the list as half coefficients a_0..a_m.
        #[arg(long, conflicts_with = "full")]
        half: bool,
        /// Read the list as the full palindromic coefficient list.
        #[arg(long)]
        full: bool,
    },
    /// Exact equidistribution defect as n/d.
    Delta {
        /// Measure spec as JSON, or a file containing it.
        #[arg(long)]
        measure: String,
        #[arg(long)]
        m: usize,
        /// Comma-separated primes (at most two).
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        kmax: usize,
        /// The trace-side defect instead.
        #[arg(long)]
        trace: bool,
    },
    /// Number of monic irreducible reciprocal polynomials of degree 2m over F_p.
    Count { p: u64, m: u64 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("recip-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn apply_cap_env() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("RECIP_LAB_CAP") {
        let cap: u64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("RECIP_LAB_CAP={v:?} is not a nonnegative integer")))?;
        limits::set_enum_cap(cap);
        limits::set_state_cap(cap);
    }
    Ok(())
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(CliError::io(path))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_target(out: &Option<PathBuf>) -> PathBuf {
    out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    apply_cap_env()?;
    match &cli.command {
        Command::Verify { suite } => cmd_verify(&cli, suite),
        Command::Experiment { config } => cmd_experiment(&cli, config),
        Command::Classify { poly, half, full } => {
            let layout = match (half, full) {
                (true, _) => Layout::Half,
                (_, true) => Layout::Full,
                _ => Layout::Auto,
            };
            cmd_classify(&cli, poly, layout)
        }
        Command::Delta {
            measure,
            m,
            primes,
            kmax,
            trace,
        } => {
            let mus = parse_measure(measure)?;
            mus.check_len(*m)?;
            let value = if *trace {
                delta_trace(&mus, *m, primes, *kmax)?
            } else {
                delta_r(&mus, *m, primes, *kmax)?
            };
            emit_line(&cli.out, &value.to_string())
        }
        Command::Count { p, m } => {
            if *m == 0 {
                return Err(CliError::usage("m must be at least 1"));
            }
            let n = count_irreducible_reciprocal(Prime::new(*p)?, *m);
            emit_line(&cli.out, &n.to_string())
        }
    }
}

fn emit_line(out: &Option<PathBuf>, line: &str) -> Result<u8, CliError> {
    let mut w = sink(out)?;
    writeln!(w, "{line}")
        .and_then(|_| w.flush())
        .map_err(CliError::io(io_target(out)))?;
    Ok(0)
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<u8, CliError> {
    let suites = Suite::parse_list(suite).map_err(|_| {
        CliError::usage(format!(
            "unknown suite {suite:?}; expected one of chebyshev, trace, euclid, residues, crossing, \
             fourier, discriminant, hyperoct, counts, all"
        ))
    })?;
    let seed = cli.seed.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    let mut reports = Vec::new();
    let stdout = io::stdout();
    for s in suites {
        let report = pool.install(|| run_suite(s, seed))?;
        print_summary(&mut stdout.lock(), &report).map_err(CliError::io("<stdout>"))?;
        reports.push(report);
    }
    let failed: usize = reports.iter().flat_map(|r| &r.checks).filter(|c| !c.passed()).count();
    println!(
        "verify: {}",
        if failed == 0 {
            "all checks passed".into()
        } else {
            format!("{failed} checks failed")
        }
    );
    if cli.out.is_some() {
        write_verify(cli, &reports).map_err(CliError::io(io_target(&cli.out)))?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn print_summary(w: &mut impl Write, report: &SuiteReport) -> io::Result<()> {
    writeln!(w, "== {}", report.suite)?;
    for line in &report.notes {
        writeln!(w, "   {line}")?;
    }
    for c in &report.checks {
        if c.passed() {
            writeln!(w, "PASS {} ({} cases)", c.name, c.cases)?;
        } else {
            writeln!(w, "FAIL {} ({} of {} cases)", c.name, c.failed, c.cases)?;
            for f in &c.failures {
                writeln!(w, "     {f}")?;
            }
        }
    }
    Ok(())
}

fn write_verify(cli: &Cli, reports: &[SuiteReport]) -> io::Result<()> {
    let mut w = sink(&cli.out).map_err(|e| io::Error::other(e.to_string()))?;
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["suite", "check", "cases", "failed", "first_failure"])?;
            for r in reports {
                for c in &r.checks {
                    let first = c.failures.first().map(String::as_str).unwrap_or("");
                    csv.write_record([
                        r.suite.name(),
                        &c.name,
                        &c.cases.to_string(),
                        &c.failed.to_string(),
                        first,
                    ])?;
                }
            }
            csv.flush()?;
        }
        Format::Jsonlines => {
            for r in reports {
                for c in &r.checks {
                    let line = serde_json::json!({ "suite": r.suite, "check": c });
                    writeln!(w, "{line}")?;
                }
            }
        }
    }
    w.flush()
}

fn config_hash(cfg: &ExperimentConfig) -> String {
    let canonical = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn cmd_experiment(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let mut config = load_config(path)?;
    if let Some(seed) = cli.seed {
        config.experiment.seed = seed;
    }
    let cfg = &config.experiment;
    cfg.validate()?;
    let format = cli.format.or(config.format).unwrap_or(Format::Csv);
    let report = run_experiment(cfg, cli.workers)?;
    write_experiment(&cli.out, format, cfg, &report).map_err(CliError::io(io_target(&cli.out)))?;
    for v in &report.structural_violations {
        eprintln!("structural violation: {v}");
    }
    Ok(if report.structural_violations.is_empty() { 0 } else { 1 })
}

fn write_experiment(
    out: &Option<PathBuf>,
    format: Format,
    cfg: &ExperimentConfig,
    report: &ExperimentReport,
) -> io::Result<()> {
    let mut w = sink(out).map_err(|e| io::Error::other(e.to_string()))?;
    let hash = config_hash(cfg);
    let config_json = serde_json::to_string(cfg)?;
    match format {
        Format::Csv => {
            writeln!(w, "# recip-lab {VERSION} git {GIT}")?;
            writeln!(w, "# config_sha256 {hash}")?;
            writeln!(w, "# seed {}", cfg.seed)?;
            writeln!(w, "# config {config_json}")?;
            let mut csv = csv::Writer::from_writer(&mut w);
            for row in &report.rows {
                csv.serialize(row)?;
            }
            csv.flush()?;
        }
        Format::Jsonlines => {
            let meta = serde_json::json!({
                "recip_lab": VERSION,
                "git": GIT,
                "config_sha256": hash,
                "seed": cfg.seed,
                "config": cfg,
            });
            writeln!(w, "{meta}")?;
            for row in &report.rows {
                writeln!(w, "{}", serde_json::to_string(row)?)?;
            }
        }
    }
    w.flush()
}

fn cmd_classify(cli: &Cli, arg: &str, layout: Layout) -> Result<u8, CliError> {
    let a = parse_poly(&literal_or_file(arg)?, layout)?;
    let report = classify_galois(&a)?;
    write_classify(&cli.out, cli.format.unwrap_or(Format::Jsonlines), &report)
        .map_err(CliError::io(io_target(&cli.out)))?;
    Ok(if report.contradictions().is_empty() { 0 } else { 1 })
}

fn write_classify(out: &Option<PathBuf>, format: Format, report: &GaloisReport) -> io::Result<()> {
    let mut w = sink(out).map_err(|e| io::Error::other(e.to_string()))?;
    let value = serde_json::to_value(report)?;
    match format {
        Format::Jsonlines => writeln!(w, "{value}")?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["field", "value"])?;
            for (k, v) in value.as_object().expect("report is an object") {
                let v = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                csv.write_record([k.as_str(), &v])?;
            }
            csv.flush()?;
        }
    }
    w.flush()
}
