use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use qals::config::{parse_experiment_config, parse_range};
use qals::harness::{run_experiment, BackendSpec, GraphSpec};
use qals::{parse_qubo_file, write_qubo_file};
use qals_core::rng::{root_stream, Substream};
use qals_core::{brute_force_min, random_qubo, solve, QalsParams, QuboProblem, SaScheduleParams, SolveError};

#[derive(Parser)]
#[command(name = "qals", version, about = "QUBO solving by annealer-guided learning search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a QUBO file
    Solve(Box<SolveArgs>),
    /// Generate a random QUBO file on stdout
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force minimum of a QUBO file (n <= 24)
    Oracle { file: PathBuf },
    /// Run a replicated experiment described by a `key = value` file
    Bench {
        config: PathBuf,
        /// Also write one CSV row per replica here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SolveArgs {
    file: PathBuf,
    /// complete | chimera:<m> | file:<path>
    #[arg(long, default_value = "complete")]
    graph: String,
    /// exact | sa | random | remote:<url>
    #[arg(long, default_value = "sa")]
    sampler: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p_delta: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Iterations per p level
    #[arg(long = "N")]
    n_per_level: Option<u64>,
    #[arg(long)]
    lambda0: Option<f64>,
    #[arg(long)]
    i_max: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    d_min: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// SA sweeps per read
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long)]
    beta_start: Option<f64>,
    #[arg(long)]
    beta_end: Option<f64>,
    /// Record per-iteration trace
    #[arg(long)]
    trace: bool,
    /// Print the full report as JSON
    #[arg(long)]
    json: bool,
}

enum Failure {
    Input(anyhow::Error),
    Sampler(anyhow::Error),
}

fn input(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Input(e.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Sampler(e)) => {
            eprintln!("sampler error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve(args) => run_solve(*args),
        Command::Gen { n, density, range, seed } => {
            let range = parse_range(&range).map_err(|e| input(anyhow!(e)))?;
            let mut rng = root_stream(seed, Substream::Instance);
            let problem = random_qubo(n, density, range, &mut rng).map_err(input)?;
            print!("{}", write_qubo_file(&problem));
            Ok(())
        }
        Command::Oracle { file } => {
            let problem = load_problem(&file)?;
            let (z, f) = brute_force_min(&problem).map_err(input)?;
            println!("f_min: {f}");
            println!("z_min: {z}");
            Ok(())
        }
        Command::Bench { config, csv } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("cannot read {}", config.display()))
                .map_err(input)?;
            let spec = parse_experiment_config(&text).with_context(|| config.display().to_string()).map_err(input)?;
            let report = run_experiment(&spec).map_err(|e| {
                if e.is_sampler_failure() {
                    Failure::Sampler(e.into())
                } else {
                    input(e)
                }
            })?;
            if let Some(path) = csv {
                fs::write(&path, report.to_csv())
                    .with_context(|| format!("cannot write {}", path.display()))
                    .map_err(input)?;
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(())
        }
    }
}

fn load_problem(path: &Path) -> Result<QuboProblem, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(input)?;
    parse_qubo_file(&text).with_context(|| path.display().to_string()).map_err(input)
}

fn run_solve(args: SolveArgs) -> Result<(), Failure> {
    let problem = load_problem(&args.file)?;
    let graph = args.graph.parse::<GraphSpec>().map_err(|e| input(anyhow!(e)))?.build(problem.dim()).map_err(input)?;
    let mut backend: BackendSpec = args.sampler.parse().map_err(|e: String| input(anyhow!(e)))?;
    let schedule_flags = [args.sweeps.is_some(), args.beta_start.is_some(), args.beta_end.is_some()];
    match &mut backend {
        BackendSpec::Sa(schedule) => {
            let d = SaScheduleParams::default();
            *schedule = SaScheduleParams {
                sweeps: args.sweeps.unwrap_or(d.sweeps),
                beta_start: args.beta_start.unwrap_or(d.beta_start),
                beta_end: args.beta_end.unwrap_or(d.beta_end),
            };
        }
        _ if schedule_flags.contains(&true) => {
            return Err(input(anyhow!("--sweeps, --beta-start and --beta-end apply only to --sampler sa")));
        }
        _ => {}
    }
    let sampler = backend.sampler().map_err(input)?;

    let d = QalsParams::default();
    let params = QalsParams {
        p_delta: args.p_delta.unwrap_or(d.p_delta),
        eta: args.eta.unwrap_or(d.eta),
        q: args.q.unwrap_or(d.q),
        n_per_level: args.n_per_level.unwrap_or(d.n_per_level),
        lambda0: args.lambda0.unwrap_or(d.lambda0),
        k: args.k.unwrap_or(d.k),
        i_max: args.i_max.unwrap_or(d.i_max),
        n_max: args.n_max.unwrap_or(d.n_max),
        d_min: args.d_min.unwrap_or(d.d_min),
        seed: args.seed,
        trace: args.trace,
    };
    let report = solve(&problem, &graph, sampler, &params).map_err(|e| match e {
        SolveError::Sampler { .. } => Failure::Sampler(e.into()),
        SolveError::Input(_) => input(e),
    })?;

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(());
    }
    println!("z_best: {}", report.z_best);
    println!("f_best: {}", report.f_best);
    println!("iterations: {} ({:?})", report.iterations, report.termination);
    for t in report.trace.iter().flatten() {
        println!(
            "{:>6} p={:.4} lambda={:.4} {:?} f*={} best={}",
            t.iteration, t.p, t.lambda, t.outcome, t.f_star, t.f_best
        );
    }
    Ok(())
}
