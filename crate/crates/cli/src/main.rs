use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use photonwave_cli::{output, presets, run, Config, RunError};

/// Photon wavefunctions from classical fields: scenario runner.
#[derive(Debug, Parser)]
#[command(name = "photonwave", version)]
struct Cli {
    /// Output directory; overrides `output_dir` from the config.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Seed for random fields; overrides `seed` from the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Only print errors.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario and write report.txt plus CSV files.
    Run { config: PathBuf },
    /// Validate a config and print the derived grid and mode summary.
    Check { config: PathBuf },
    /// Write one example config per scenario into a directory.
    Presets { dir: PathBuf },
}

const EXIT_INVARIANT: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn load(path: &Path, seed: Option<u64>) -> Result<Config, RunError> {
    let mut cfg = Config::load(path)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

/// `--out`, else `output_dir` relative to the config file, else `out/<scenario>` next to it.
fn output_dir(cli_out: Option<PathBuf>, cfg: &Config, config_path: &Path) -> PathBuf {
    if let Some(o) = cli_out {
        return o;
    }
    let base = config_path.parent().unwrap_or(Path::new("."));
    match &cfg.output_dir {
        Some(d) if d.is_absolute() => d.clone(),
        Some(d) => base.join(d),
        None => base.join("out").join(cfg.scenario.name()),
    }
}

fn execute(cli: Cli) -> Result<u8, RunError> {
    match cli.command {
        Command::Check { config } => {
            let cfg = load(&config, cli.seed)?;
            if !cli.quiet {
                print!("{}", cfg.summary());
                println!("{:<16}{}", "output_dir", output_dir(cli.out, &cfg, &config).display());
            }
            Ok(0)
        }
        Command::Run { config } => {
            let cfg = load(&config, cli.seed)?;
            let dir = output_dir(cli.out, &cfg, &config);
            let outcome = run(&cfg)?;
            let written = output::write_outcome(&outcome, &dir)?;
            if !cli.quiet {
                for p in &written {
                    println!("wrote {}", p.display());
                }
            }
            let failed = outcome.report.failures();
            if failed.is_empty() {
                if !cli.quiet {
                    println!("all {} checks passed", outcome.report.checks().len());
                }
                Ok(0)
            } else {
                eprintln!("{} invariant check(s) failed:", failed.len());
                for c in failed {
                    eprintln!("  {}: measured {:e}", c.name, c.measured);
                }
                Ok(EXIT_INVARIANT)
            }
        }
        Command::Presets { dir } => {
            let written = presets::write_presets(&dir)?;
            if !cli.quiet {
                for p in &written {
                    println!("wrote {}", p.display());
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
