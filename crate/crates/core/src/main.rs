use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cultevo::cli::{self, CliError};

#[derive(Parser)]
#[command(
    name = "cultevo",
    version,
    about = "Simulate micro-society interaction logs and fit the variant-choice model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic log, quality table, and truth file
    Simulate {
        /// key = value configuration file
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the configured seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Grid-search fit every (society, concept) data-structure in a log
    Fit {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        quality: PathBuf,
        /// Configuration file for grid overrides, innovation mass, threshold
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the Bayes-factor evidence threshold
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Aggregate fits.csv into histogram, class, and summary tables
    Report {
        /// Path to fits.csv (defaults to <out>/fits.csv)
        fits: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Simulate fresh replicates, fit each, and report parameter recovery
    Recover {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        replicates: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the built-in brute-force oracle checks
    Check,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate { config, out, seed } => {
            let mut config = cli::load_config(config.as_deref())?;
            if let Some(seed) = seed {
                config.seed = seed;
            }
            cli::cmd_simulate(&config, &out)
        }
        Command::Fit {
            log,
            quality,
            config,
            out,
            threshold,
        } => {
            let mut config = cli::load_config(config.as_deref())?;
            if let Some(threshold) = threshold {
                config.threshold = threshold;
            }
            cli::cmd_fit(&log, &quality, &config, &out)
        }
        Command::Report { fits, config, out } => {
            let config = cli::load_config(config.as_deref())?;
            let fits = fits.unwrap_or_else(|| out.join("fits.csv"));
            cli::cmd_report(&fits, &config, &out)
        }
        Command::Recover {
            config,
            replicates,
            out,
            seed,
        } => {
            let mut config = cli::load_config(config.as_deref())?;
            if let Some(seed) = seed {
                config.seed = seed;
            }
            cli::cmd_recover(&config, replicates, out.as_deref())
        }
        Command::Check => cli::cmd_check(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
