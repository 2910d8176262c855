// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use exactq_cli::args::{Cli, Command};
use exactq_cli::{commands, Failure};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(&cli.common, a),
        Command::Gamma(a) => commands::gamma(&cli.common, a),
        Command::Poly(a) => commands::poly(&cli.common, a),
        Command::Constants(a) => commands::constants(&cli.common, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Check(msg) => eprintln!("exactq: check failed: {msg}"),
                Failure::Input(msg) => eprintln!("exactq: {msg}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
