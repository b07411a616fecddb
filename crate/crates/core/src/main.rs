use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rdzq::harness::config::{parse_list, ConfigError};
use rdzq::harness::output::{create_dir, write_text};
use rdzq::harness::{convergence_study, run, HarnessError, RunConfig};
use rdzq::models::ProblemKind;

#[derive(Debug, Parser)]
#[command(name = "rdzq", version, about = "Steady-state solver for hyperbolic conservation laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one problem to steady state and write CSV output.
    Run(RunArgs),
    /// Measure errors and orders over dyadic grid levels.
    Converge(ConvergeArgs),
    /// List the registered problems.
    ListProblems,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Problem name (see `list-problems`).
    #[arg(long)]
    problem: Option<ProblemKind>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Residue tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Output directory [default: out/<problem>].
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key = value` configuration file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    solver: SolverArgs,
    /// Cells per direction.
    #[arg(long, conflicts_with_all = ["nx", "ny"])]
    n: Option<usize>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[command(flatten)]
    solver: SolverArgs,
    /// Comma-separated cell counts, each twice the previous.
    #[arg(long)]
    levels: String,
}

fn load(args: &SolverArgs) -> Result<RunConfig, HarnessError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| {
                HarnessError::Output(rdzq::harness::OutputError::Io {
                    path: path.clone(),
                    source,
                })
            })?;
            RunConfig::parse_str(&text)?
        }
        None => RunConfig::default(),
    };
    Ok(file.merged(RunConfig {
        problem: args.problem,
        cfl: args.cfl,
        max_iters: args.max_iters,
        tol: args.tol,
        out_dir: args.out.clone(),
        ..RunConfig::default()
    }))
}

fn parse_levels(text: &str) -> Result<Vec<usize>, ConfigError> {
    parse_list("levels", text)?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(ConfigError::BadValue {
                    key: "levels".into(),
                    value: v.to_string(),
                    reason: "expected a positive integer".into(),
                })
            }
        })
        .collect()
}

fn execute(command: Command) -> Result<(), HarnessError> {
    match command {
        Command::ListProblems => {
            for kind in ProblemKind::ALL {
                println!("{:<18} {}", kind.name(), kind.description());
            }
        }
        Command::Run(args) => {
            let cfg = load(&args.solver)?.merged(RunConfig {
                n: args.n,
                nx: args.nx,
                ny: args.ny,
                ..RunConfig::default()
            });
            let (outcome, written) = run(&cfg)?;
            println!("{}", outcome.report);
            for path in written {
                println!("wrote        {}", path.display());
            }
        }
        Command::Converge(args) => {
            let cfg = load(&args.solver)?;
            let kind = cfg.problem()?;
            let levels = parse_levels(&args.levels)?;
            let table = convergence_study(kind, &levels, &cfg)?;
            print!("{table}");
            if let Some(dir) = &cfg.out_dir {
                create_dir(dir)?;
                let path = dir.join("convergence.csv");
                write_text(&path, &table.to_csv())?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
