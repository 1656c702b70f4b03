use std::process::ExitCode;

use bggkit::{execute, parse_args, CliError};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    if let Err(e) = bggkit::job::Cli::try_parse_from(&argv) {
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    }
    let result = parse_args(&argv).and_then(|job| execute(&job));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprint!("{}{}", msg, if msg.ends_with('\n') { "" } else { "\n" }),
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
