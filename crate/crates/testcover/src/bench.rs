//! Benchmark harness: runs the requested solvers over a directory of
//! instance files and renders one CSV row per (instance, solver, k) run.

use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{decide_nk_brute, min_test_cover_exact};
use crate::fpt::{fpt_decide, RuleKind};
use crate::greedy::greedy_setcover_approx;
use crate::instance::Instance;
use crate::io::parse_instance;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Exact,
    Greedy,
    Fpt,
    Brute,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Exact => "exact",
            Solver::Greedy => "greedy",
            Solver::Fpt => "fpt",
            Solver::Brute => "brute",
        }
    }

    pub fn parse(word: &str) -> Result<Solver> {
        match word {
            "exact" => Ok(Solver::Exact),
            "greedy" => Ok(Solver::Greedy),
            "fpt" => Ok(Solver::Fpt),
            "brute" => Ok(Solver::Brute),
            other => Err(Error::InvalidArgument(format!(
                "unknown solver `{other}` (expected exact, greedy, fpt, or brute)"
            ))),
        }
    }

    /// Greedy ignores k entirely; the deciders cannot run without one.
    fn k_use(self) -> KUse {
        match self {
            Solver::Greedy => KUse::Never,
            Solver::Exact => KUse::Optional,
            Solver::Fpt | Solver::Brute => KUse::Required,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum KUse {
    Never,
    Optional,
    Required,
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub timeout_ms: u64,
    pub cap_m: usize,
    /// Worker threads; 0 picks the pool's default.
    pub threads: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            timeout_ms: 10_000,
            cap_m: 24,
            threads: 0,
        }
    }
}

pub const CSV_HEADER: &str = "id,n,m,k,solver,answer,size,micros,path_rule_fires,sibling_rule_fires";

#[derive(Clone, Debug, Default)]
pub struct BenchRow {
    pub id: String,
    pub n: Option<u32>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub solver: &'static str,
    pub answer: String,
    pub size: Option<usize>,
    pub micros: u128,
    pub path_rule_fires: Option<usize>,
    pub sibling_rule_fires: Option<usize>,
}

impl BenchRow {
    pub fn to_csv_line(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.id,
            opt(&self.n),
            opt(&self.m),
            opt(&self.k),
            self.solver,
            self.answer,
            opt(&self.size),
            self.micros,
            opt(&self.path_rule_fires),
            opt(&self.sibling_rule_fires),
        )
    }
}

struct Job<'a> {
    id: &'a str,
    inst: &'a Instance,
    solver: Solver,
    k: Option<usize>,
}

fn answer_for(err: &Error) -> String {
    match err {
        Error::Timeout => "timeout".into(),
        Error::ResourceLimit { .. } => "resource_limit".into(),
        _ => "error".into(),
    }
}

fn run_job(job: &Job<'_>, opts: &BenchOptions) -> BenchRow {
    let limits = Limits {
        max_tests: opts.cap_m,
        deadline: Some(Instant::now() + Duration::from_millis(opts.timeout_ms)),
        ..Limits::default()
    };
    let mut row = BenchRow {
        id: job.id.to_string(),
        n: Some(job.inst.n()),
        m: Some(job.inst.m()),
        k: job.k,
        solver: job.solver.name(),
        ..BenchRow::default()
    };
    let start = Instant::now();
    match job.solver {
        Solver::Exact => match min_test_cover_exact(job.inst, &limits) {
            Ok(res) => {
                row.size = Some(res.optimum);
                if let Some(k) = job.k {
                    let yes = k <= job.inst.n() as usize
                        && res.optimum <= job.inst.n() as usize - k;
                    row.answer = if yes { "yes".into() } else { "no".into() };
                }
            }
            Err(e) => row.answer = answer_for(&e),
        },
        Solver::Greedy => match greedy_setcover_approx(job.inst) {
            Ok(sel) => row.size = Some(sel.len()),
            Err(e) => row.answer = answer_for(&e),
        },
        Solver::Brute => match decide_nk_brute(job.inst, job.k.unwrap(), &limits) {
            Ok(yes) => row.answer = if yes { "yes".into() } else { "no".into() },
            Err(e) => row.answer = answer_for(&e),
        },
        Solver::Fpt => match fpt_decide(job.inst, job.k.unwrap(), &limits) {
            Ok(out) => {
                row.answer = if out.answer { "yes".into() } else { "no".into() };
                row.size = out.witness.as_ref().map(|w| w.len());
                row.path_rule_fires = Some(
                    out.traces.iter().filter(|t| t.rule == RuleKind::Path).count(),
                );
                row.sibling_rule_fires = Some(
                    out.traces
                        .iter()
                        .filter(|t| t.rule == RuleKind::Sibling)
                        .count(),
                );
            }
            Err(e) => row.answer = answer_for(&e),
        },
    }
    row.micros = start.elapsed().as_micros();
    row
}

/// Runs every requested solver on every instance file in `dir` (each k in
/// `ks` for the parameterized ones) and returns the CSV. Files are visited
/// in name order and rows come out in (file, solver, k) order no matter how
/// the pool schedules them. Files that fail to parse produce a single
/// `parse_error` row; files whose full collection is not a test cover
/// produce a single `invalid` row.
pub fn run_bench(dir: &Path, ks: &[usize], solvers: &[Solver], opts: &BenchOptions) -> Result<String> {
    let mut files: Vec<std::path::PathBuf> = std::fs::read_dir(dir)?
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();

    let mut ks: Vec<usize> = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();

    let mut loaded: Vec<(String, std::result::Result<Instance, String>)> = Vec::new();
    for path in &files {
        let id: String = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .chars()
            .map(|c| if c == ',' || c == '"' { '_' } else { c })
            .collect();
        let outcome = match std::fs::read_to_string(path) {
            Err(_) => Err("parse_error".to_string()),
            Ok(text) => match parse_instance(&text) {
                Err(_) => Err("parse_error".to_string()),
                Ok(mut inst) => {
                    if inst.validate().is_valid() {
                        Ok(inst)
                    } else {
                        Err("invalid".to_string())
                    }
                }
            },
        };
        loaded.push((id, outcome));
    }

    let mut jobs: Vec<Job<'_>> = Vec::new();
    let mut jobs_per_file: Vec<usize> = Vec::with_capacity(loaded.len());
    for (id, outcome) in &loaded {
        let before = jobs.len();
        if let Ok(inst) = outcome {
            for &solver in solvers {
                match solver.k_use() {
                    KUse::Never => jobs.push(Job { id, inst, solver, k: None }),
                    KUse::Optional if ks.is_empty() => {
                        jobs.push(Job { id, inst, solver, k: None })
                    }
                    KUse::Required if ks.is_empty() => {}
                    _ => {
                        for &k in &ks {
                            jobs.push(Job { id, inst, solver, k: Some(k) });
                        }
                    }
                }
            }
        }
        jobs_per_file.push(jobs.len() - before);
    }

    let mut builder = rayon::ThreadPoolBuilder::new();
    if opts.threads > 0 {
        builder = builder.num_threads(opts.threads);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot build worker pool: {e}")))?;
    let rows: Vec<BenchRow> = pool.install(|| jobs.par_iter().map(|j| run_job(j, opts)).collect());

    // rows is in job order and a file's jobs are consecutive, so error rows
    // interleave back by walking a cursor
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let mut cursor = 0;
    for ((id, outcome), &count) in loaded.iter().zip(&jobs_per_file) {
        if let Err(answer) = outcome {
            let row = BenchRow {
                id: id.clone(),
                answer: answer.clone(),
                ..BenchRow::default()
            };
            let _ = writeln!(out, "{}", row.to_csv_line());
        }
        for row in &rows[cursor..cursor + count] {
            let _ = writeln!(out, "{}", row.to_csv_line());
        }
        cursor += count;
    }
    Ok(out)
}
