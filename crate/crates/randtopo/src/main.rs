use std::process::ExitCode;

use clap::error::ErrorKind;
use randtopo::cli::{run_from, CliFailure};

fn main() -> ExitCode {
    match run_from(std::env::args_os()) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            println!(
                "wrote {} and {}",
                outcome.json_path.display(),
                outcome.csv_path.display()
            );
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(CliFailure::Usage(e)) => {
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            }
        }
        Err(CliFailure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
