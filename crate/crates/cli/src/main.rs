use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use equistab::config::JobConfig;
use equistab::report::run;
use equistab::verify::{require_pass, verify};
use equistab::{Error, Result};

/// Stable-range certificates and limit groups for equivariant self-maps of linear spheres.
#[derive(Parser)]
#[command(name = "equistab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the report for a job configuration.
    Run {
        config: PathBuf,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest block index scanned by the stable-range search.
        #[arg(long)]
        horizon: Option<usize>,
        /// Largest group order enumerated.
        #[arg(long)]
        cap: Option<usize>,
        /// Also run the verification suites.
        #[arg(long)]
        verify: bool,
    },
    /// Run the verification suites and print the table.
    Verify {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn load(path: &Path, seed: Option<u64>, horizon: Option<usize>, cap: Option<usize>) -> Result<JobConfig> {
    let mut config = JobConfig::from_path(path)?;
    config.seed = seed.or(config.seed);
    config.horizon = horizon.or(config.horizon);
    config.cap = cap.or(config.cap);
    config.validate()?;
    Ok(config)
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run { config, out, seed, horizon, cap, verify: with_verify } => {
            let config = load(&config, seed, horizon, cap)?;
            let report = run(&config)?;
            let json = report.to_json()?;
            match out {
                Some(path) => std::fs::write(&path, json)?,
                None => print!("{json}"),
            }
            eprint!("{}", report.summary());
            let code = report.exit_code();
            if code != 0 {
                return Ok(code);
            }
            if with_verify || config.verify {
                let table = verify(&config, config.seed())?;
                eprint!("{table}");
                require_pass(&table)?;
            }
            Ok(0)
        }
        Command::Verify { config, seed } => {
            let config = load(&config, seed, None, None)?;
            let table = verify(&config, config.seed())?;
            print!("{table}");
            require_pass(&table)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::SearchLimit { .. } = e {
                eprintln!("hint: raise --horizon");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
