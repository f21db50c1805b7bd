mod args;
mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn emit(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.as_deref();

    let report = match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Reconstruct(a) => commands::reconstruct(a),
        Command::Prove(a) => commands::prove(a),
        Command::Bench(a) => commands::bench(a),
        Command::Gen(a) => {
            return match commands::gen(a).map_err(|e| (e.outcome(), format!("error[{}]: {}", e.kind(), e.message()))) {
                Ok(text) => match emit(output, &text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("eigenid: error[Io]: {e}");
                        ExitCode::from(2)
                    }
                },
                Err((outcome, message)) => {
                    eprintln!("eigenid: {message}");
                    ExitCode::from(outcome.exit_code())
                }
            };
        }
    };

    if let Some((kind, message)) = &report.error {
        eprintln!("eigenid: error[{kind}]: {message}");
    }
    if let Err(e) = emit(output, &report.render(cli.json)) {
        eprintln!("eigenid: error[Io]: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.outcome.exit_code())
}
