use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cmmp_cli::{run, Cli, EXIT_MALFORMED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(EXIT_MALFORMED);
            }
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_MALFORMED)
        }
    }
}
