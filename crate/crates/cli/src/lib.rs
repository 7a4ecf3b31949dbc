//! Command-line front end: run an algorithm on a generated or loaded graph,
//! verify estimates against the exact oracle, and write CSV reports.

use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use apsp_core::apsp::{
    dhz_sparse_apsp, exact_apsp_oracle, plus2_apsp_traced, plus2k_apsp_traced, BranchPolicy,
    ClassRun, ParamOverrides, ParamPolicy, Plus2Variant,
};
use apsp_core::harness::{
    append_report, generate, load_edge_list, load_estimates, save_edge_list, save_estimates,
    verify, verify_against, write_edge_list, write_reports, ErrorReport, GenSpec,
};
use apsp_core::matmul::MMCostModel;
use apsp_core::{DistanceMatrix, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status when verification finds violations.
pub const EXIT_VIOLATIONS: i32 = 1;
/// Exit status for usage and input errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "apsp",
    version,
    about = "Additive-error all-pairs shortest paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an algorithm and optionally verify it against the exact oracle.
    Run(RunArgs),
    /// Verify an estimate matrix against the exact oracle.
    Verify(VerifyArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Exact,
    Dhz,
    Plus2Warmup,
    Plus2Fast,
    Plus2k,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Auto,
    Sparse,
    Matrix,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator spec, e.g. `er:n=300,p=0.1,seed=1`.
    #[arg(long)]
    gen: Option<GenSpec>,
}

impl Source {
    fn load(&self) -> Result<(Graph, String)> {
        match (&self.input, &self.gen) {
            (Some(path), _) => {
                let g =
                    load_edge_list(path).with_context(|| format!("reading {}", path.display()))?;
                Ok((g, path.display().to_string()))
            }
            (None, Some(spec)) => Ok((generate(spec)?, spec.to_string())),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Approximation level; defaults to 1 for dhz and 2 for plus2k.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    source: Source,
    /// Seed for randomized steps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check estimates against the exact oracle; exit 1 on violations.
    #[arg(long)]
    verify: bool,
    /// Append the report row to this CSV file (implies --verify).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the estimate matrix as CSV.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Matrix multiplication exponent for the cost model.
    #[arg(long)]
    omega: Option<f64>,
    /// Degree classes at or above this take the matrix branch.
    #[arg(long = "D")]
    crossover: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long, value_enum, default_value_t = BranchArg::Auto)]
    branch: BranchArg,
    /// Verify graphs larger than the oracle limit.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    estimates: PathBuf,
    /// Allowed additive error.
    #[arg(long)]
    bound: u32,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    spec: GenSpec,
    /// Destination file; stdout if absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parses `argv` (including the program name) and runs it, returning the
/// process exit status.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Verify(args) => verify_file(args),
        Command::Gen(args) => gen(args),
    }
}

fn policy(args: &RunArgs, variant: Plus2Variant) -> Result<ParamPolicy> {
    let model = match args.omega {
        Some(w) => MMCostModel::square_omega(w)?,
        None => MMCostModel::default(),
    };
    Ok(ParamPolicy {
        model,
        branch: match args.branch {
            BranchArg::Auto => BranchPolicy::Auto,
            BranchArg::Sparse => BranchPolicy::Sparse,
            BranchArg::Matrix => BranchPolicy::Matrix,
        },
        variant,
        overrides: ParamOverrides {
            crossover: args.crossover,
            d: args.d,
            q: args.q,
            delta: args.delta,
        },
        seed: args.seed,
    })
}

fn describe(trace: &[ClassRun]) -> String {
    trace
        .iter()
        .map(ClassRun::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// Runs the chosen algorithm; returns estimates, the parameter summary and `k`.
fn execute(args: &RunArgs, g: &Graph) -> Result<(DistanceMatrix, String, usize)> {
    let algo = args.algo;
    if args.k.is_some() && matches!(algo, Algo::Exact | Algo::Plus2Warmup | Algo::Plus2Fast) {
        bail!("--k applies only to dhz and plus2k");
    }
    Ok(match algo {
        Algo::Exact => (exact_apsp_oracle(g), String::new(), 0),
        Algo::Dhz => {
            let k = args.k.unwrap_or(1);
            (dhz_sparse_apsp(g, k, None)?, format!("k={k}"), k)
        }
        Algo::Plus2Warmup | Algo::Plus2Fast => {
            let variant = if algo == Algo::Plus2Warmup {
                Plus2Variant::Warmup
            } else {
                Plus2Variant::Fast
            };
            let (est, trace) = plus2_apsp_traced(g, &policy(args, variant)?)?;
            (est, describe(&trace), 1)
        }
        Algo::Plus2k => {
            let k = args.k.unwrap_or(2);
            let (est, trace) = plus2k_apsp_traced(g, k, &policy(args, Plus2Variant::Fast)?)?;
            (est, describe(&trace), k)
        }
    })
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Exact => "exact",
        Algo::Dhz => "dhz",
        Algo::Plus2Warmup => "plus2-warmup",
        Algo::Plus2Fast => "plus2-fast",
        Algo::Plus2k => "plus2k",
    }
}

fn check(g: &Graph, est: &DistanceMatrix, bound: u32, force: bool) -> Result<ErrorReport> {
    if force {
        let truth = exact_apsp_oracle(g);
        Ok(verify_against(g, &truth, est, bound)?)
    } else {
        Ok(verify(g, est, bound)?)
    }
}

fn emit(report: &ErrorReport, path: Option<&PathBuf>) -> Result<()> {
    write_reports(std::slice::from_ref(report), io::stdout().lock())?;
    if let Some(path) = path {
        append_report(report, path).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<i32> {
    let (g, label) = args.source.load()?;
    let start = Instant::now();
    let (est, params, k) = execute(&args, &g)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    eprintln!(
        "{}: {label} n={} m={} in {wall_ms:.1} ms",
        algo_name(args.algo),
        g.n(),
        g.m()
    );

    if let Some(path) = &args.output {
        save_estimates(&est, path).with_context(|| format!("writing {}", path.display()))?;
    }
    if !args.verify && args.report.is_none() {
        return Ok(0);
    }
    let bound = 2 * k as u32;
    let report =
        check(&g, &est, bound, args.force)?.with_run(algo_name(args.algo), params, k, wall_ms);
    emit(&report, args.report.as_ref())?;
    Ok(if report.passed() { 0 } else { EXIT_VIOLATIONS })
}

fn verify_file(args: VerifyArgs) -> Result<i32> {
    let g =
        load_edge_list(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let est = load_estimates(&args.estimates)
        .with_context(|| format!("reading {}", args.estimates.display()))?;
    let report = check(&g, &est, args.bound, args.force)?.with_run(
        "estimates",
        args.estimates.display().to_string(),
        args.bound.div_ceil(2) as usize,
        0.0,
    );
    emit(&report, args.report.as_ref())?;
    Ok(if report.passed() { 0 } else { EXIT_VIOLATIONS })
}

fn gen(args: GenArgs) -> Result<i32> {
    let g = generate(&args.spec)?;
    match &args.output {
        Some(path) => {
            save_edge_list(&g, path).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let mut out = io::stdout().lock();
            write_edge_list(&g, &mut out)?;
            out.flush()?;
        }
    }
    Ok(0)
}
