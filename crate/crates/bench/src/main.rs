use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dpsimplex::pivot::LongestStepFilter;
use dpsimplex_bench::{
    compare, compare_rules, read_records, run_suite, write_aggregates_csv, write_csv, BenchError, Comparison,
    Rule, Suite, SuiteConfig, SuiteReport,
};

#[derive(Debug, Parser)]
#[command(name = "dpbench", about = "Run simplex benchmark suites under Dantzig and double-pivot rules")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[arg(long, value_enum)]
    suite: Option<SuiteArg>,
    #[arg(long, value_enum, default_value = "both")]
    rule: RuleArg,
    /// Comma-separated problem sizes.
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    /// Number of random instances per size (seeds 0..N).
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    /// Klee–Minty variant (1, 2 or 3); all three when omitted.
    #[arg(long)]
    variant: Option<u8>,
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Longest-step candidate filter: a fraction in (0, 1], or `off`.
    #[arg(long = "ls-filter", default_value = "0.99")]
    ls_filter: String,
    #[arg(long, value_enum, default_value = "off")]
    presolve: OnOff,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Directory for result files; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory with `.mps` fixtures and `manifest.json`.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two result files (CSV or JSON), reporting improvement of B over A.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Kleeminty,
    Random,
    Netlib,
    Cycling,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RuleArg {
    Dantzig,
    Double,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Config(String),
    Solve(String),
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Config(_) | BenchError::Mismatch { .. } | BenchError::Csv(_) | BenchError::Json(_) => {
                Failure::Config(e.to_string())
            }
            BenchError::Io { .. } => Failure::Config(e.to_string()),
            BenchError::Solver(_) => Failure::Solve(e.to_string()),
        }
    }
}

fn parse_filter(s: &str) -> Result<LongestStepFilter, Failure> {
    if s.eq_ignore_ascii_case("off") {
        return Ok(LongestStepFilter::off());
    }
    let f: f64 = s.parse().map_err(|_| Failure::Config(format!("invalid --ls-filter value {:?}", s)))?;
    if !(f > 0.0 && f <= 1.0) {
        return Err(Failure::Config(format!("--ls-filter must lie in (0, 1], got {}", f)));
    }
    Ok(LongestStepFilter { fraction: Some(f), ..LongestStepFilter::default() })
}

fn config(cli: &Cli) -> Result<SuiteConfig, Failure> {
    let suite = match cli.suite {
        Some(SuiteArg::Kleeminty) => Suite::Kleeminty,
        Some(SuiteArg::Random) => Suite::Random,
        Some(SuiteArg::Netlib) => Suite::Netlib,
        Some(SuiteArg::Cycling) => Suite::Cycling,
        None => return Err(Failure::Config("--suite is required".into())),
    };
    let mut cfg = SuiteConfig::new(suite);
    cfg.rules = match cli.rule {
        RuleArg::Dantzig => vec![Rule::Dantzig],
        RuleArg::Double => vec![Rule::Double],
        RuleArg::Both => vec![Rule::Dantzig, Rule::Double],
    };
    cfg.sizes = cli.m.clone();
    cfg.seeds = cli.seeds;
    cfg.variant = cli.variant;
    cfg.max_iterations = cli.max_iter;
    cfg.ls_filter = parse_filter(&cli.ls_filter)?;
    cfg.presolve = cli.presolve == OnOff::On;
    cfg.fixtures = cli.fixtures.clone();
    Ok(cfg)
}

fn open_out(dir: &Option<PathBuf>, name: &str) -> Result<Box<dyn Write>, Failure> {
    match dir {
        None => Ok(Box::new(io::stdout().lock())),
        Some(d) => {
            std::fs::create_dir_all(d).map_err(|e| Failure::Config(format!("{}: {}", d.display(), e)))?;
            let path = d.join(name);
            let f = File::create(&path).map_err(|e| Failure::Config(format!("{}: {}", path.display(), e)))?;
            Ok(Box::new(f))
        }
    }
}

fn write_report(report: &SuiteReport, format: Format, out: &Option<PathBuf>) -> Result<(), Failure> {
    let suite = report.suite.as_str();
    match format {
        Format::Csv => {
            write_csv(&report.records, open_out(out, &format!("{}.csv", suite))?)?;
            if out.is_some() {
                write_aggregates_csv(&report.aggregates, open_out(out, &format!("{}_summary.csv", suite))?)?;
            }
        }
        Format::Json => {
            let mut w = open_out(out, &format!("{}.json", suite))?;
            serde_json::to_writer_pretty(&mut w, report).map_err(BenchError::from)?;
            writeln!(w).map_err(|e| Failure::Config(e.to_string()))?;
        }
    }
    Ok(())
}

fn print_summary(report: &SuiteReport) {
    let mut err = io::stderr().lock();
    for a in &report.aggregates {
        let _ = writeln!(
            err,
            "{:<14} {:<8} runs {:>4}  mean iter {:>10.2}  median iter {:>8.1}  mean time {:>9.3} ms",
            a.group,
            a.rule.as_str(),
            a.runs,
            a.mean_iterations,
            a.median_iterations,
            a.mean_time_ms
        );
    }
    if let Ok(c) = compare_rules(&report.records) {
        let _ = writeln!(
            err,
            "double vs dantzig: iterations {:+.1}%, time {:+.1}%",
            c.iteration_improvement, c.time_improvement
        );
    }
    if report.dominance_violations > 0 {
        let _ = writeln!(err, "dominance violations: {}", report.dominance_violations);
    }
    for m in &report.mismatches {
        let _ = writeln!(err, "mismatch: {}", m);
    }
    for e in &report.errors {
        let _ = writeln!(err, "error: {}", e);
    }
}

fn write_comparison(c: &Comparison, format: Format) -> Result<(), Failure> {
    let stdout = io::stdout();
    match format {
        Format::Json => {
            let mut w = stdout.lock();
            serde_json::to_writer_pretty(&mut w, c).map_err(BenchError::from)?;
            writeln!(w).map_err(|e| Failure::Config(e.to_string()))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout.lock());
            for r in &c.rows {
                w.serialize(r).map_err(BenchError::from)?;
            }
            w.flush().map_err(|e| Failure::Config(e.to_string()))?;
        }
    }
    eprintln!(
        "mean iterations {:.2} -> {:.2} ({:+.1}%), mean time {:.3} -> {:.3} ms ({:+.1}%)",
        c.mean_iterations_a,
        c.mean_iterations_b,
        c.iteration_improvement,
        c.mean_time_a_ms,
        c.mean_time_b_ms,
        c.time_improvement
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(Command::Compare { a, b, format }) = cli.command {
        let ra = read_records(&a)?;
        let rb = read_records(&b)?;
        return write_comparison(&compare(&ra, &rb)?, format);
    }
    let cfg = config(&cli)?;
    let report = run_suite(&cfg)?;
    write_report(&report, cli.format, &cli.out)?;
    print_summary(&report);
    if report.all_ok() {
        Ok(())
    } else {
        Err(Failure::Solve(format!(
            "{} run(s) without a definitive verdict, {} objective mismatch(es), {} error(s)",
            report.records.iter().filter(|r| !dpsimplex_bench::is_acceptable(&r.status)).count(),
            report.mismatches.len(),
            report.errors.len()
        )))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("dpbench: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Solve(msg)) => {
            eprintln!("dpbench: {}", msg);
            ExitCode::from(1)
        }
    }
}
