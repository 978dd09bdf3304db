use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use intsim::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };
    let outcome = run(&cli);
    let written = match &cli.command.common().out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("intsim: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if outcome.exit_code != 0 {
        eprintln!("intsim: exit {}", outcome.exit_code);
    }
    ExitCode::from(outcome.exit_code as u8)
}
