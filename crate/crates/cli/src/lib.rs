//! `doppler-lab`: command-line front end for the moving-boundary Doppler toolkit.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod plot;
pub mod table;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::commands::{Artifact, Outcome};
use crate::config::{
    BuiltinProfile, Frame, Overrides, RunConfig, Settings, Source, SpectralWindow, Toggle,
};
pub use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "doppler-lab",
    version,
    about = "Doppler modulation of waves radiated by a non-uniformly moving boundary"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frequency modulation factor over the time window.
    Fm,
    /// Amplitude modulation factor at the receiver.
    Am,
    /// Receiver waveform, envelope and stationary reference.
    Field,
    /// Asymptotic vs exact field errors for each epsilon in the sweep.
    Compare,
    /// Reproduce one of the four modulation figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
    },
    /// DFT of the receiver series with detected peaks.
    Spectrum,
    /// Transport amplitude of the minus family against the AM factor.
    AppendixCheck,
}

#[derive(Debug, Args)]
pub struct Flags {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub profile: Option<BuiltinProfile>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eps: Option<f64>,
    /// Receiver position (distance ahead of the boundary in the moving frame).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long = "t-min", global = true, allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    #[arg(long = "t-max", global = true, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long = "phase-shift", global = true, value_enum)]
    pub phase_shift: Option<Toggle>,
    #[arg(long, global = true, value_enum)]
    pub frame: Option<Frame>,
    #[arg(long, global = true, value_enum)]
    pub source: Option<Source>,
    #[arg(long, global = true, value_enum)]
    pub window: Option<SpectralWindow>,
    /// Output directory; falls back to DOPPLER_LAB_OUT, then ./out.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            profile: self.profile,
            beta: self.beta,
            delta: self.delta,
            eps: self.eps,
            x: self.x,
            t_min: self.t_min,
            t_max: self.t_max,
            samples: self.samples,
            phase_shift: self.phase_shift,
            frame: self.frame,
            source: self.source,
            window: self.window,
        }
    }
}

/// Computes the command's artifacts without touching the file system.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    if let Command::Figure { id } = cli.command {
        return figures::figure(id);
    }
    let config = match &cli.flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let settings = Settings::resolve(config, &cli.flags.overrides())?;
    match cli.command {
        Command::Fm => commands::fm(&settings),
        Command::Am => commands::am(&settings),
        Command::Field => commands::field(&settings),
        Command::Compare => commands::compare(&settings),
        Command::Spectrum => commands::spectrum_cmd(&settings),
        Command::AppendixCheck => commands::appendix_check(&settings),
        Command::Figure { .. } => unreachable!(),
    }
}

/// Writes every artifact into `dir`, returning the paths written.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>> {
    if artifacts.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    artifacts
        .iter()
        .map(|a| {
            let path = dir.join(&a.name);
            fs::write(&path, &a.contents).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            Ok(path)
        })
        .collect()
}

/// Runs the command end to end and returns the process exit status.
pub fn run(cli: Cli) -> u8 {
    let outcome = execute(&cli).and_then(|outcome| {
        let dir = config::output_dir(cli.flags.out.clone());
        let written = write_artifacts(&dir, &outcome.artifacts)?;
        Ok((outcome, written))
    });
    match outcome {
        Ok((outcome, written)) => {
            let mut stdout = io::stdout().lock();
            let _ = write!(stdout, "{}", outcome.report);
            for path in written {
                let _ = writeln!(stdout, "wrote {}", path.display());
            }
            outcome.status
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e);
            e.exit_code()
        }
    }
}
