use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use segdp_cli::{commands, init_threads, CliResult};

#[derive(Parser)]
#[command(
    name = "segdp",
    version,
    about = "Constrained segmentation and clustering of multivariate series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic well-log dataset from a TOML spec.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run restarts at the configured (N, C) and keep their consensus.
    Fit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Grid search over (N, C) and select the dense, diverse cost region.
    Grid {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the summary of a grid run directory.
    Report {
        #[arg(long)]
        run: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    match cli.command {
        Command::Simulate { spec, out } => commands::simulate(&spec, &out),
        Command::Fit {
            config,
            series,
            out,
        } => commands::fit(&config, &series, &out),
        Command::Grid {
            config,
            series,
            truth,
            out,
        } => commands::grid(&config, &series, truth.as_deref(), &out),
        Command::Report { run } => commands::report(&run),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
