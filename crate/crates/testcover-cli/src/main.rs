//! Command-line front end: validate and solve instance files, decide the
//! parameterized "cover of size ≤ n − k" question, translate between
//! encodings, generate random instances, and batch-benchmark directories.
//!
//! Exit codes: 0 for YES/success, 1 for NO (or an instance that fails
//! validation), 2 for any error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use testcover::bench::{run_bench, BenchOptions, Solver};
use testcover::exact::{decide_nk_brute, find_k_mini_brute, min_test_cover_exact};
use testcover::fpt::fpt_decide;
use testcover::greedy::greedy_setcover_approx;
use testcover::io::{
    gen_random, parse_graph, parse_instance, write_instance, write_setcover,
};
use testcover::reductions::{is_to_tc, tc_to_sc};
use testcover::{Instance, Limits, TestRef};

#[derive(Parser)]
#[command(name = "testcover", version, about = "Test cover solvers and tooling")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an instance file and report what validation found
    Validate { file: PathBuf },
    /// Compute a test cover of the instance
    Solve {
        #[command(subcommand)]
        with: SolveCmd,
    },
    /// Decide parameterized cover questions
    Decide {
        #[command(subcommand)]
        question: DecideCmd,
    },
    /// Search for a k-mini witness: at most 2k tests inducing ≥ |F| + k classes
    Mini {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Translate between problem encodings
    Reduce {
        #[command(subcommand)]
        direction: ReduceCmd,
    },
    /// Generate a seeded random instance
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run solvers over every instance file in a directory, emitting CSV
    Bench {
        dir: PathBuf,
        /// Parameter values, comma separated
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        /// Solvers to run: exact, greedy, fpt, brute
        #[arg(long, value_delimiter = ',', default_value = "exact,fpt")]
        solvers: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Exact minimum test cover by bounded exhaustive search
    Exact {
        file: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Greedy most-new-separations heuristic
    Greedy { file: PathBuf },
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Is there a test cover of size at most n − k?
    Nk {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Fpt)]
        mode: Mode,
        /// Echo one line per reduction-rule firing
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fpt,
    Brute,
    Both,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Graph file (independent set / vertex cover) to a test cover instance
    Is2tc {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test cover instance to set cover over its item pairs
    Tc2sc {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunFlags {
    /// Largest test count the exhaustive solvers accept
    #[arg(long, default_value_t = 24)]
    cap_m: usize,
    /// Wall clock budget per solver run, in milliseconds
    #[arg(long, default_value_t = 10_000)]
    timeout_ms: u64,
}

impl RunFlags {
    fn limits(&self) -> Limits {
        Limits {
            max_tests: self.cap_m,
            deadline: Some(Instant::now() + Duration::from_millis(self.timeout_ms)),
            ..Limits::default()
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

const YES: ExitCode = ExitCode::SUCCESS;
const NO: ExitCode = ExitCode::FAILURE;

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_validated(path: &PathBuf) -> Result<Instance, String> {
    let mut inst = parse_instance(&read(path)?).map_err(|e| e.to_string())?;
    let report = inst.validate();
    if !report.is_valid() {
        return Err(report.to_string());
    }
    Ok(inst)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tests_line(refs: &[TestRef]) -> String {
    if refs.is_empty() {
        return "tests".into();
    }
    let ids: Vec<String> = refs.iter().map(|r| (r.0 + 1).to_string()).collect();
    format!("tests {}", ids.join(" "))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let mut inst = parse_instance(&read(&file)?).map_err(|e| e.to_string())?;
            let report = inst.validate();
            println!("{report}");
            Ok(if report.is_valid() { YES } else { NO })
        }
        Cmd::Solve { with } => match with {
            SolveCmd::Exact { file, run } => {
                let inst = load_validated(&file)?;
                let res = min_test_cover_exact(&inst, &run.limits()).map_err(|e| e.to_string())?;
                println!("optimum {}", res.optimum);
                println!("{}", tests_line(&res.witness));
                Ok(YES)
            }
            SolveCmd::Greedy { file } => {
                let inst = load_validated(&file)?;
                let sel = greedy_setcover_approx(&inst).map_err(|e| e.to_string())?;
                println!("size {}", sel.len());
                println!("{}", tests_line(&sel));
                Ok(YES)
            }
        },
        Cmd::Decide { question } => match question {
            DecideCmd::Nk {
                file,
                k,
                mode,
                trace,
                run,
            } => {
                let inst = load_validated(&file)?;
                let mut answer = None;
                if mode == Mode::Fpt || mode == Mode::Both {
                    let out = fpt_decide(&inst, k, &run.limits()).map_err(|e| e.to_string())?;
                    if trace {
                        for t in &out.traces {
                            println!("{}", t.to_log_line());
                        }
                    }
                    if let Some(w) = &out.witness {
                        println!("{}", tests_line(w));
                    }
                    answer = Some(out.answer);
                }
                if mode == Mode::Brute || mode == Mode::Both {
                    let brute =
                        decide_nk_brute(&inst, k, &run.limits()).map_err(|e| e.to_string())?;
                    if let Some(fpt) = answer {
                        if fpt != brute {
                            return Err(format!(
                                "solver disagreement: fpt says {fpt}, brute force says {brute}"
                            ));
                        }
                    }
                    answer = Some(brute);
                }
                let yes = answer.expect("some mode always runs");
                println!("{}", if yes { "yes" } else { "no" });
                Ok(if yes { YES } else { NO })
            }
        },
        Cmd::Mini { file, k, run } => {
            let inst = load_validated(&file)?;
            match find_k_mini_brute(&inst, k, &run.limits()).map_err(|e| e.to_string())? {
                Some(refs) => {
                    println!("yes");
                    println!("{}", tests_line(&refs));
                    Ok(YES)
                }
                None => {
                    println!("no");
                    Ok(NO)
                }
            }
        }
        Cmd::Reduce { direction } => match direction {
            ReduceCmd::Is2tc { graph, out } => {
                let g = parse_graph(&read(&graph)?).map_err(|e| e.to_string())?;
                let (inst, map) = is_to_tc(&g).map_err(|e| e.to_string())?;
                let mut text = String::new();
                text.push_str(&format!(
                    "# items: edge i -> item i, primed copy -> item {} + i\n",
                    g.q()
                ));
                if !map.omitted.is_empty() {
                    let list: Vec<String> = map.omitted.iter().map(u32::to_string).collect();
                    text.push_str(&format!("# isolated vertices omitted: {}\n", list.join(" ")));
                }
                for (v, rep) in &map.folded {
                    text.push_str(&format!("# vertex {v} folded into vertex {rep}\n"));
                }
                text.push_str(&write_instance(&inst, false));
                emit(&out, &text)?;
                Ok(YES)
            }
            ReduceCmd::Tc2sc { file, out } => {
                let inst = load_validated(&file)?;
                let sc = tc_to_sc(&inst).map_err(|e| e.to_string())?;
                emit(&out, &write_setcover(&sc))?;
                Ok(YES)
            }
        },
        Cmd::Gen {
            n,
            m,
            density,
            seed,
            out,
        } => {
            let (inst, appended) = gen_random(n, m, density, seed).map_err(|e| e.to_string())?;
            let mut text = String::new();
            if appended > 0 {
                text.push_str(&format!(
                    "# appended {appended} singleton test(s) to reach a cover\n"
                ));
            }
            text.push_str(&write_instance(&inst, false));
            emit(&out, &text)?;
            Ok(YES)
        }
        Cmd::Bench {
            dir,
            k,
            solvers,
            out,
            threads,
            run,
        } => {
            let solvers: Vec<Solver> = solvers
                .iter()
                .map(|w| Solver::parse(w).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let opts = BenchOptions {
                timeout_ms: run.timeout_ms,
                cap_m: run.cap_m,
                threads,
            };
            let csv = run_bench(&dir, &k, &solvers, &opts).map_err(|e| e.to_string())?;
            emit(&out, &csv)?;
            Ok(YES)
        }
    }
}
