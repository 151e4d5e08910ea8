use std::process::ExitCode;

use clap::Parser;
use doppler_lab::Cli;

fn main() -> ExitCode {
    ExitCode::from(doppler_lab::run(Cli::parse()))
}
