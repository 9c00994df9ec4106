use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use symlattice_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.code() == 2 {
                eprintln!("\nRun `symlattice --help` for usage.");
            }
            ExitCode::from(e.code() as u8)
        }
    }
}
