use std::process::ExitCode;

use clap::Parser;
use hycon::cli::{run, Cli};
use hycon::ExitStatus;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are validation failures; help and version are not
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::Validation as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_status() as u8)
        }
    }
}
