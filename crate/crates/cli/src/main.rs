use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use conradian::report::to_pretty;
use conradian_cli::{run, Cli, EXIT_ERROR};

fn write_report(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.global.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with success; usage errors must not look like a refusal
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = write_report(&cli, &to_pretty(&outcome.report)) {
                eprintln!("error: writing report: {e}");
                return ExitCode::from(EXIT_ERROR as u8);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
