mod args;
mod commands;
mod config;

use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn parse(argv: Vec<String>) -> Result<Cli, ExitCode> {
    Cli::try_parse_from(argv).map_err(|e| {
        let _ = e.print();
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
            _ => ExitCode::from(2),
        }
    })
}

fn dispatch(command: &Command) -> Result<(), Failure> {
    match command {
        Command::EvalCurve(a) => commands::eval_curve_cmd(a),
        Command::EvalSurface(a) => commands::eval_surface_cmd(a),
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Area(a) => commands::measure_cmd(a, false),
        Command::Volume(a) => commands::measure_cmd(a, true),
        Command::RearTrack(a) => commands::rear_track_cmd(a),
        Command::Petals(a) => commands::petals_cmd(a),
        Command::Run { .. } => Err(Failure::Invalid("run configs cannot nest".into())),
    }
}

fn main() -> ExitCode {
    let mut cli = match parse(std::env::args().collect()) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    if let Command::Run { config } = &cli.command {
        let text = match fs::read_to_string(config) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", config.display());
                return ExitCode::from(2);
            }
        };
        let argv = match config::config_to_args(&text) {
            Ok(a) => a,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        };
        cli = match parse(argv) {
            Ok(cli) => cli,
            Err(code) => return code,
        };
    }
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
