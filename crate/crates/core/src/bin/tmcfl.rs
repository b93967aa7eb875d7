use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tmcfl::harness::{
    bench_run, generate_general_instance, generate_metric_instance, BenchConfig, GenParams,
    ValueCaps,
};
use tmcfl::model::{verify, Instance, Kind, Solution};
use tmcfl::reductions::{cflmc_to_cfl, reduce, translate, Mode, ReductionCertificate};
use tmcfl::solvers::{
    approx_tmc_pipeline, exact, greedy_ufl, local_search_cfl, Heuristic, Neighborhood,
    SolverParams, ENUMERATION_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "tmcfl",
    version,
    about = "TMC and capacitated facility location toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Generate(GenerateArgs),
    /// Reduce an instance, writing the reduced instance and its certificate.
    Reduce(ReduceArgs),
    /// Solve an instance.
    Solve(SolveArgs),
    /// Translate a reduced-instance solution back to the original instance.
    Translate(TranslateArgs),
    /// Check a solution; exits 1 when it is invalid.
    Verify(VerifyArgs),
    /// Run a benchmark config.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CostModel {
    Metric,
    General,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = CostModel::Metric)]
    costs: CostModel,
    #[arg(long, default_value_t = 4)]
    grid: i64,
    #[arg(long, default_value_t = 5)]
    max_capacity: i64,
    #[arg(long, default_value_t = 5)]
    max_demand: i64,
    #[arg(long, default_value_t = 5)]
    max_penalty: i64,
    #[arg(long, default_value_t = 5)]
    max_opening_cost: i64,
    #[arg(long, default_value_t = 5)]
    max_cost: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    instance: PathBuf,
    #[arg(long)]
    mode: Mode,
    /// Reduced instance file.
    #[arg(long)]
    out: PathBuf,
    /// Certificate file.
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverName {
    Exact,
    LocalSearch,
    Greedy,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    solver: SolverName,
    /// Reduction mode for heuristics on TMC-type instances; defaults to
    /// metric when the instance claims the metric property.
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long, default_value_t = ENUMERATION_LIMIT)]
    limit: usize,
    #[arg(long, default_value_t = 1000)]
    max_iterations: usize,
    #[arg(long, value_parser = parse_neighborhood, default_value = "all")]
    neighborhood: Neighborhood,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TranslateArgs {
    /// Certificate produced by `reduce`.
    #[arg(long)]
    cert: PathBuf,
    /// Reduced instance produced by `reduce`.
    #[arg(long)]
    reduced: PathBuf,
    /// Solution of the reduced instance.
    solution: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    solution: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    config: PathBuf,
    /// JSON-lines report; the text table goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override every suite's oracle limit.
    #[arg(long)]
    limit: Option<usize>,
    /// Directory for offending instances; defaults to the report's directory.
    #[arg(long)]
    repro_dir: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_neighborhood(s: &str) -> Result<Neighborhood, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    Instance::from_json(&read(path)?)
        .with_context(|| format!("loading instance {}", path.display()))
}

fn load_solution(path: &Path) -> Result<Solution> {
    Solution::from_json(&read(path)?)
        .with_context(|| format!("loading solution {}", path.display()))
}

fn generate(args: GenerateArgs) -> Result<()> {
    let params = GenParams {
        kind: args.kind,
        m: args.m,
        n: args.n,
        grid: args.grid,
        caps: ValueCaps {
            capacity: args.max_capacity,
            demand: args.max_demand,
            penalty: args.max_penalty,
            opening_cost: args.max_opening_cost,
            cost: args.max_cost,
        },
        seed: args.seed,
    };
    let inst = match args.costs {
        CostModel::Metric => generate_metric_instance(&params)?,
        CostModel::General => generate_general_instance(&params)?,
    };
    emit(args.out.as_deref(), &inst.to_json())
}

fn reduce_cmd(args: ReduceArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let (reduced, cert) = reduce(&inst, args.mode)?;
    emit(Some(&args.out), &reduced.to_json())?;
    emit(Some(&args.cert), &cert.to_json())
}

fn solve(args: SolveArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let params = SolverParams {
        max_iterations: args.max_iterations,
        neighborhood: args.neighborhood,
        seed: args.seed,
    };
    let mode = args.mode.unwrap_or(if inst.is_metric_claimed() {
        Mode::Metric
    } else {
        Mode::General
    });
    let heuristic = match args.solver {
        SolverName::Exact => None,
        SolverName::LocalSearch => Some(Heuristic::LocalSearch),
        SolverName::Greedy => Some(Heuristic::Greedy),
    };
    let sol = match (heuristic, inst.kind()) {
        (None, _) => exact(&inst, args.limit)?,
        (Some(h), Kind::Tmc | Kind::Utmc) => approx_tmc_pipeline(&inst, mode, h, &params)?.solution,
        (Some(Heuristic::LocalSearch), Kind::Cfl | Kind::Ufl) => local_search_cfl(&inst, &params)?,
        (Some(Heuristic::Greedy), Kind::Ufl) => greedy_ufl(&inst)?,
        (Some(Heuristic::LocalSearch), Kind::Cflmc) => {
            let (reduced, cert) = cflmc_to_cfl(&inst, mode)?;
            let reduced_sol = local_search_cfl(&reduced, &params)?;
            translate(&cert, &reduced, &reduced_sol)?
        }
        (Some(Heuristic::Greedy), kind) => {
            bail!("greedy needs a ufl, tmc or utmc instance, got {kind}")
        }
    };
    emit(args.out.as_deref(), &sol.to_json())
}

fn translate_cmd(args: TranslateArgs) -> Result<()> {
    let cert = ReductionCertificate::from_json(&read(&args.cert)?)?;
    let reduced = load_instance(&args.reduced)?;
    let sol = load_solution(&args.solution)?;
    let back = translate(&cert, &reduced, &sol)?;
    emit(args.out.as_deref(), &back.to_json())
}

fn verify_cmd(args: VerifyArgs) -> Result<bool> {
    let inst = load_instance(&args.instance)?;
    let sol = load_solution(&args.solution)?;
    let report = verify(&inst, &sol);
    emit(args.out.as_deref(), &report.to_json())?;
    if !report.ok {
        eprintln!("{report}");
    }
    Ok(report.ok)
}

fn bench(args: BenchArgs) -> Result<bool> {
    let mut config = BenchConfig::from_json(&read(&args.config)?)?;
    if let Some(limit) = args.limit {
        for suite in &mut config.suites {
            suite.limit = limit;
        }
    }
    let (report, offenders) = match bench_run(&config)? {
        Ok(report) => (report, Vec::new()),
        Err(failure) => (failure.report, failure.offenders),
    };
    emit(args.out.as_deref(), &report.to_json_lines())?;
    if args.out.is_some() {
        print!("{}", report.render_table());
    } else {
        eprint!("{}", report.render_table());
    }
    if offenders.is_empty() {
        return Ok(true);
    }
    let dir = args.repro_dir.clone().unwrap_or_else(|| {
        args.out
            .as_deref()
            .and_then(Path::parent)
            .map(Path::to_path_buf)
            .unwrap_or_default()
    });
    for offender in &offenders {
        let path = dir.join(format!("{}.instance.json", offender.id));
        fs::write(&path, offender.instance.to_json())?;
        eprintln!(
            "{}: {} (instance written to {})",
            offender.id,
            offender.detail,
            path.display()
        );
    }
    Ok(false)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate(args) => generate(args).map(|_| true),
        Command::Reduce(args) => reduce_cmd(args).map(|_| true),
        Command::Solve(args) => solve(args).map(|_| true),
        Command::Translate(args) => translate_cmd(args).map(|_| true),
        Command::Verify(args) => verify_cmd(args),
        Command::Bench(args) => bench(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
