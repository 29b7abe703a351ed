//! Command-line front end for the kpstrain sweeps.
//!
//! Every subcommand resolves and validates the run configuration first,
//! computes all of its tables in memory and only then writes files.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{Format, RunConfig};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "kpstrain", version, about = "Strain-induced valence-band mixing sweeps")]
pub struct Cli {
    /// TOML run configuration; defaults apply to anything it omits.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output directory, overriding `[output] dir`.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Output format, overriding `[output] format`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for the sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Number of stress samples, overriding `[sweep] steps`.
    #[arg(long, global = true, value_name = "N")]
    pub steps: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// HGS projection onto the z and x axes along the stress sweep.
    MixingCurve,
    /// HH projection over polar angle and stress.
    MixingMap,
    /// Quantum-well mixing per thickness and the transition-energy curve.
    Qw,
    /// Dipole strengths, rates, polarization and angular densities.
    Dipoles,
    /// Membrane strain from the actuator geometry.
    Amplify {
        #[arg(long)]
        length_mm: f64,
        #[arg(long)]
        gap_um: f64,
        #[arg(long, allow_hyphen_values = true)]
        piezo_strain: f64,
    },
}

/// Loads the config file (if any) and applies command-line overrides.
pub fn load_config(cli: &Cli) -> CliResult<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_path(p)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.output.dir = out.clone();
    }
    if let Some(f) = cli.format {
        cfg.output.format = f;
    }
    if let Some(n) = cli.steps {
        cfg.sweep.steps = n;
    }
    Ok(cfg)
}

/// Runs one invocation and returns the text for stdout.
pub fn run(cli: &Cli) -> CliResult<String> {
    if let Command::Amplify {
        length_mm,
        gap_um,
        piezo_strain,
    } = cli.command
    {
        return commands::cmd_amplify(length_mm, gap_um, piezo_strain).map(|s| s + "\n");
    }
    let resolved = load_config(cli)?.resolve()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let tables = pool.install(|| match cli.command {
        Command::MixingCurve => commands::cmd_mixing_curve(&resolved),
        Command::MixingMap => commands::cmd_mixing_map(&resolved),
        Command::Qw => commands::cmd_qw(&resolved),
        Command::Dipoles => commands::cmd_dipoles(&resolved),
        Command::Amplify { .. } => unreachable!("handled above"),
    })?;
    let paths = output::write_tables(&resolved.out_dir, resolved.format, &tables)?;
    Ok(output::describe(&paths))
}

/// Parses `args` and runs; returns the exit status and the message printed.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match run(&cli) {
        Ok(text) => (0, text),
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}
