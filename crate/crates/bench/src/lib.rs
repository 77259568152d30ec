//! Benchmark suites comparing Dantzig's rule with the double-pivot rule.
//!
//! A suite runs every problem under each selected rule and produces one
//! [`RunRecord`] per (problem, rule), plus per-group aggregates in the style
//! of the random-LP iteration table.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use dpsimplex::engine::{solve, PivotRule, SolveResult, SolveStatus, SolverOptions};
use dpsimplex::generators::{klee_minty, random_lp, RandomLpSpec};
use dpsimplex::model::{to_standard_form, GeneralLp, StandardFormLp};
use dpsimplex::mps_io::{postsolve, presolve, read_mps_file};
use dpsimplex::pivot::LongestStepFilter;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("problem sets differ: only in first {only_a:?}, only in second {only_b:?}")]
    Mismatch { only_a: Vec<String>, only_b: Vec<String> },
    #[error(transparent)]
    Solver(#[from] dpsimplex::Error),
}

pub type Result<T> = std::result::Result<T, BenchError>;

fn io_err(path: &Path, e: impl std::fmt::Display) -> BenchError {
    BenchError::Io { path: path.display().to_string(), message: e.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Dantzig,
    Double,
}

impl Rule {
    pub fn pivot_rule(self) -> PivotRule {
        match self {
            Rule::Dantzig => PivotRule::Dantzig,
            Rule::Double => PivotRule::DoublePivot,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Dantzig => "dantzig",
            Rule::Double => "double",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kleeminty,
    Random,
    Netlib,
    Cycling,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Kleeminty => "kleeminty",
            Suite::Random => "random",
            Suite::Netlib => "netlib",
            Suite::Cycling => "cycling",
        }
    }
}

/// One solve. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub rule: Rule,
    pub status: String,
    pub objective: f64,
    pub iterations: usize,
    pub double_pivots: usize,
    pub infeasibility: f64,
    pub time_ms: f64,
    pub seed: Option<u64>,
}

impl RunRecord {
    fn key(&self) -> (String, Option<u64>) {
        (self.problem.clone(), self.seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub rules: Vec<Rule>,
    /// Sizes for generated suites; empty means the suite default.
    pub sizes: Vec<usize>,
    pub seeds: u64,
    /// Klee–Minty variant; `None` runs all three.
    pub variant: Option<u8>,
    pub max_iterations: Option<usize>,
    pub ls_filter: LongestStepFilter,
    pub presolve: bool,
    pub fixtures: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            rules: vec![Rule::Dantzig, Rule::Double],
            sizes: Vec::new(),
            seeds: 100,
            variant: None,
            max_iterations: None,
            ls_filter: LongestStepFilter::default(),
            presolve: false,
            fixtures: None,
        }
    }

    fn sizes(&self) -> Vec<usize> {
        if !self.sizes.is_empty() {
            return self.sizes.clone();
        }
        match self.suite {
            Suite::Kleeminty => (3..=10).collect(),
            _ => vec![100],
        }
    }

    fn fixture_dir(&self) -> PathBuf {
        self.fixtures.clone().unwrap_or_else(|| PathBuf::from("data").join(self.suite.as_str()))
    }

    fn options(&self, rule: Rule) -> SolverOptions {
        SolverOptions {
            rule: rule.pivot_rule(),
            ls_filter: self.ls_filter,
            max_iterations: self.max_iterations,
            ..SolverOptions::default()
        }
    }
}

/// Means over the runs of one group (a named problem, or one random size
/// across seeds) under one rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub group: String,
    pub rule: Rule,
    pub runs: usize,
    pub failures: usize,
    pub mean_iterations: f64,
    pub median_iterations: f64,
    pub mean_time_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub records: Vec<RunRecord>,
    pub aggregates: Vec<Aggregate>,
    /// Double steps whose subproblem value exceeded `min(f₁, f₂)`.
    pub dominance_violations: usize,
    /// Steps that carried all three candidate objectives.
    pub dominance_audited: usize,
    /// Problems whose optimal objective disagrees with a known value.
    pub mismatches: Vec<String>,
    pub errors: Vec<String>,
}

impl SuiteReport {
    /// All runs reached a definitive verdict and known optima matched.
    pub fn all_ok(&self) -> bool {
        self.errors.is_empty()
            && self.mismatches.is_empty()
            && self.records.iter().all(|r| is_acceptable(&r.status))
    }
}

pub fn is_acceptable(status: &str) -> bool {
    matches!(status, "optimal" | "unbounded" | "infeasible")
}

/// `(t_D − t_2) / t_D` in percent; negative when the second is slower.
pub fn improvement(t_dantzig: f64, t_double: f64) -> f64 {
    if t_dantzig == 0.0 {
        if t_double == 0.0 {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    } else {
        (t_dantzig - t_double) / t_dantzig * 100.0
    }
}

/// Number of double steps in `r` that violate `f₃ ≤ min(f₁, f₂) + 1e−9(1 + |f₁|)`.
pub fn dominance_violations(r: &SolveResult) -> usize {
    r.records
        .iter()
        .filter(|rec| match (rec.step.f1, rec.step.f2, rec.step.f3) {
            (Some(f1), Some(f2), Some(f3)) => f3 > f1.min(f2) + 1e-9 * (1.0 + f1.abs()),
            _ => false,
        })
        .count()
}

struct Problem {
    name: String,
    seed: Option<u64>,
    group: String,
    source: Source,
    known_objective: Option<f64>,
    tie_keys: Option<Vec<usize>>,
}

enum Source {
    Standard(StandardFormLp),
    Model(Box<GeneralLp>),
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn load_manifest(dir: &Path) -> Result<Option<Vec<serde_json::Value>>> {
    let path = dir.join("manifest.json");
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
    Ok(Some(serde_json::from_str(&text)?))
}

/// `(name, path, known optimum)` for each fixture in `dir`: the manifest
/// order when one exists, otherwise every `.mps`/`.mps.gz` file by name.
pub fn list_fixtures(dir: &Path) -> Result<Vec<(String, PathBuf, Option<f64>)>> {
    if let Some(entries) = load_manifest(dir)? {
        return Ok(entries
            .iter()
            .filter_map(|e| {
                let name = e.get("name")?.as_str()?.to_string();
                let known = e.get("netlib_optimum").or_else(|| e.get("optimum")).and_then(|v| v.as_f64());
                let plain = dir.join(format!("{}.mps", name));
                let path = if plain.exists() { plain } else { dir.join(format!("{}.mps.gz", name)) };
                Some((name, path, known))
            })
            .collect());
    }
    let read = std::fs::read_dir(dir).map_err(|e| io_err(dir, e))?;
    let mut out = Vec::new();
    for entry in read {
        let path = entry.map_err(|e| io_err(dir, e))?.path();
        let file = path.file_name().and_then(|f| f.to_str()).unwrap_or("").to_string();
        if let Some(stem) = file.strip_suffix(".mps.gz").or_else(|| file.strip_suffix(".mps")) {
            out.push((stem.to_string(), path.clone(), None));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn build_problems(cfg: &SuiteConfig, errors: &mut Vec<String>) -> Result<Vec<Problem>> {
    let mut out = Vec::new();
    match cfg.suite {
        Suite::Kleeminty => {
            let variants: Vec<u8> = match cfg.variant {
                Some(v) => vec![v],
                None => vec![1, 2, 3],
            };
            for v in variants {
                for m in cfg.sizes() {
                    let km = klee_minty(v, m).map_err(|e| BenchError::Config(e.to_string()))?;
                    out.push(Problem {
                        name: km.lp.name.clone(),
                        seed: None,
                        group: km.lp.name.clone(),
                        known_objective: Some(km.known_obj),
                        tie_keys: Some(km.tie_order()),
                        source: Source::Standard(km.lp),
                    });
                }
            }
        }
        Suite::Random => {
            for m in cfg.sizes() {
                if m == 0 {
                    return Err(BenchError::Config("random LP size must be positive".into()));
                }
                for seed in 0..cfg.seeds {
                    let lp = random_lp(RandomLpSpec { m, seed })?;
                    out.push(Problem {
                        name: format!("RAND{}", m),
                        seed: Some(seed),
                        group: format!("RAND{}", m),
                        known_objective: None,
                        tie_keys: None,
                        source: Source::Standard(lp),
                    });
                }
            }
        }
        Suite::Netlib | Suite::Cycling => {
            let dir = cfg.fixture_dir();
            if !dir.is_dir() {
                return Err(BenchError::Config(format!("fixture directory {} not found", dir.display())));
            }
            for (name, path, known) in list_fixtures(&dir)? {
                match read_mps_file(&path) {
                    Ok(g) => out.push(Problem {
                        name: name.clone(),
                        seed: None,
                        group: name,
                        known_objective: known,
                        tie_keys: None,
                        source: Source::Model(Box::new(g)),
                    }),
                    Err(e) => errors.push(format!("{}: {}", name, e)),
                }
            }
        }
    }
    Ok(out)
}

struct Outcome {
    status: SolveStatus,
    objective: f64,
    infeasibility: f64,
    iterations: usize,
    double_pivots: usize,
    time: Duration,
    dominance: usize,
    audited: usize,
}

impl Outcome {
    fn from_result(r: &SolveResult, objective: f64, infeasibility: f64) -> Self {
        Outcome {
            status: r.status,
            objective,
            infeasibility,
            iterations: r.iterations,
            double_pivots: r.double_pivots,
            time: r.time,
            dominance: dominance_violations(r),
            audited: r.records.iter().filter(|rec| rec.step.f3.is_some()).count(),
        }
    }
}

fn run_model(g: &GeneralLp, options: &SolverOptions, use_presolve: bool) -> Result<Outcome> {
    let (reduced, report) = if use_presolve {
        let (r, rep) = presolve(g)?;
        (r, Some(rep))
    } else {
        (g.clone(), None)
    };
    if report.as_ref().is_some_and(|r| r.infeasible) {
        return Ok(Outcome {
            status: SolveStatus::Infeasible,
            objective: f64::NAN,
            infeasibility: f64::NAN,
            iterations: 0,
            double_pivots: 0,
            time: Duration::ZERO,
            dominance: 0,
            audited: 0,
        });
    }
    let (lp, map) = to_standard_form(&reduced)?;
    let result = solve(&lp, options)?;
    let x_reduced = map.recover(&result.x);
    let x = match &report {
        Some(rep) => postsolve(rep, &x_reduced)?,
        None => x_reduced,
    };
    Ok(Outcome::from_result(&result, g.objective_value(&x), g.max_violation(&x)))
}

fn run_one(p: &Problem, cfg: &SuiteConfig, rule: Rule) -> Result<(RunRecord, usize, usize)> {
    let mut options = cfg.options(rule);
    options.tie_keys = p.tie_keys.clone();
    let outcome = match &p.source {
        Source::Standard(lp) => {
            let result = solve(lp, &options)?;
            Outcome::from_result(&result, result.objective, result.infeasibility)
        }
        Source::Model(g) => run_model(g, &options, cfg.presolve)?,
    };
    let record = RunRecord {
        problem: p.name.clone(),
        rule,
        status: outcome.status.as_str().to_string(),
        objective: outcome.objective,
        iterations: outcome.iterations,
        double_pivots: outcome.double_pivots,
        infeasibility: outcome.infeasibility,
        time_ms: duration_ms(outcome.time),
        seed: p.seed,
    };
    Ok((record, outcome.dominance, outcome.audited))
}

fn duration_ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs every problem of the suite under each configured rule.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.rules.is_empty() {
        return Err(BenchError::Config("no rules selected".into()));
    }
    if let Some(v) = cfg.variant {
        if !(1..=3).contains(&v) {
            return Err(BenchError::Config(format!("variant must be 1, 2 or 3, got {}", v)));
        }
    }
    let mut errors = Vec::new();
    let problems = build_problems(cfg, &mut errors)?;
    let mut records = Vec::new();
    let mut groups: Vec<String> = Vec::new();
    let mut dominance = 0;
    let mut audited = 0;
    let mut mismatches = Vec::new();
    for p in &problems {
        for &rule in &cfg.rules {
            match run_one(p, cfg, rule) {
                Ok((rec, dom, aud)) => {
                    dominance += dom;
                    audited += aud;
                    if let (Some(known), "optimal") = (p.known_objective, rec.status.as_str()) {
                        if relative_gap(rec.objective, known) > 1e-6 {
                            mismatches.push(format!(
                                "{} ({}): objective {} differs from {}",
                                rec.problem,
                                rule.as_str(),
                                rec.objective,
                                known
                            ));
                        }
                    }
                    records.push(rec);
                    groups.push(p.group.clone());
                }
                Err(e) => {
                    errors.push(format!("{} ({}): {}", p.name, rule.as_str(), e));
                    records.push(RunRecord {
                        problem: p.name.clone(),
                        rule,
                        status: "error".into(),
                        objective: f64::NAN,
                        iterations: 0,
                        double_pivots: 0,
                        infeasibility: f64::NAN,
                        time_ms: 0.0,
                        seed: p.seed,
                    });
                    groups.push(p.group.clone());
                }
            }
        }
    }
    let aggregates = aggregate(&records, &groups);
    Ok(SuiteReport {
        suite: cfg.suite,
        records,
        aggregates,
        dominance_violations: dominance,
        dominance_audited: audited,
        mismatches,
        errors,
    })
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn aggregate(records: &[RunRecord], groups: &[String]) -> Vec<Aggregate> {
    let mut order: Vec<(String, Rule)> = Vec::new();
    let mut by: BTreeMap<(String, Rule), Vec<&RunRecord>> = BTreeMap::new();
    for (r, g) in records.iter().zip(groups) {
        let key = (g.clone(), r.rule);
        if !by.contains_key(&key) {
            order.push(key.clone());
        }
        by.entry(key).or_default().push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let rs = &by[&key];
            let n = rs.len() as f64;
            let mut iters: Vec<f64> = rs.iter().map(|r| r.iterations as f64).collect();
            Aggregate {
                group: key.0.clone(),
                rule: key.1,
                runs: rs.len(),
                failures: rs.iter().filter(|r| !is_acceptable(&r.status)).count(),
                mean_iterations: iters.iter().sum::<f64>() / n,
                median_iterations: median(&mut iters),
                mean_time_ms: rs.iter().map(|r| r.time_ms).sum::<f64>() / n,
            }
        })
        .collect()
}

pub fn write_csv<W: std::io::Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| BenchError::Io { path: "<csv>".into(), message: e.to_string() })?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    rd.deserialize().map(|r| r.map_err(BenchError::from)).collect()
}

pub fn write_aggregates_csv<W: std::io::Write>(aggs: &[Aggregate], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for a in aggs {
        w.serialize(a)?;
    }
    w.flush().map_err(|e| BenchError::Io { path: "<csv>".into(), message: e.to_string() })?;
    Ok(())
}

/// Reads records from a `.csv` file or from the `records` array of a
/// `.json` report.
pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    if path.extension().is_some_and(|e| e == "json") {
        let v: serde_json::Value = serde_json::from_str(&text)?;
        let records = v.get("records").cloned().unwrap_or(v);
        Ok(serde_json::from_value(records)?)
    } else {
        read_csv(text.as_bytes())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub problem: String,
    pub seed: Option<u64>,
    pub iterations_a: usize,
    pub iterations_b: usize,
    pub iteration_improvement: f64,
    pub time_a_ms: f64,
    pub time_b_ms: f64,
    pub time_improvement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub mean_iterations_a: f64,
    pub mean_iterations_b: f64,
    pub iteration_improvement: f64,
    pub mean_time_a_ms: f64,
    pub mean_time_b_ms: f64,
    pub time_improvement: f64,
}

/// Per-problem and aggregate improvement of `b` over `a`. Problems are
/// matched by name and seed.
pub fn compare(a: &[RunRecord], b: &[RunRecord]) -> Result<Comparison> {
    let ka: BTreeMap<_, _> = a.iter().map(|r| (r.key(), r)).collect();
    let kb: BTreeMap<_, _> = b.iter().map(|r| (r.key(), r)).collect();
    let sa: BTreeSet<_> = ka.keys().cloned().collect();
    let sb: BTreeSet<_> = kb.keys().cloned().collect();
    if sa != sb || ka.len() != a.len() || kb.len() != b.len() {
        let show = |k: &(String, Option<u64>)| match k.1 {
            Some(s) => format!("{}#{}", k.0, s),
            None => k.0.clone(),
        };
        let mut only_a: Vec<String> = sa.difference(&sb).map(show).collect();
        let mut only_b: Vec<String> = sb.difference(&sa).map(show).collect();
        if ka.len() != a.len() {
            only_a.push("<duplicate entries>".into());
        }
        if kb.len() != b.len() {
            only_b.push("<duplicate entries>".into());
        }
        return Err(BenchError::Mismatch { only_a, only_b });
    }
    if a.is_empty() {
        return Err(BenchError::Config("nothing to compare".into()));
    }
    // keep the order of the first report
    let rows: Vec<ComparisonRow> = a
        .iter()
        .map(|ra| {
            let rb = kb[&ra.key()];
            ComparisonRow {
                problem: ra.problem.clone(),
                seed: ra.seed,
                iterations_a: ra.iterations,
                iterations_b: rb.iterations,
                iteration_improvement: improvement(ra.iterations as f64, rb.iterations as f64),
                time_a_ms: ra.time_ms,
                time_b_ms: rb.time_ms,
                time_improvement: improvement(ra.time_ms, rb.time_ms),
            }
        })
        .collect();
    let n = rows.len() as f64;
    let mean = |f: &dyn Fn(&ComparisonRow) -> f64| rows.iter().map(f).sum::<f64>() / n;
    let (ia, ib) = (mean(&|r| r.iterations_a as f64), mean(&|r| r.iterations_b as f64));
    let (ta, tb) = (mean(&|r| r.time_a_ms), mean(&|r| r.time_b_ms));
    Ok(Comparison {
        rows,
        mean_iterations_a: ia,
        mean_iterations_b: ib,
        iteration_improvement: improvement(ia, ib),
        mean_time_a_ms: ta,
        mean_time_b_ms: tb,
        time_improvement: improvement(ta, tb),
    })
}

/// Splits one report by rule and compares Dantzig (first) with double.
pub fn compare_rules(records: &[RunRecord]) -> Result<Comparison> {
    let d: Vec<RunRecord> = records.iter().filter(|r| r.rule == Rule::Dantzig).cloned().collect();
    let p: Vec<RunRecord> = records.iter().filter(|r| r.rule == Rule::Double).cloned().collect();
    compare(&d, &p)
}
