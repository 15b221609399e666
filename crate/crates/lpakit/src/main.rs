use std::process::ExitCode;

use clap::Parser;
use lpakit::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lpakit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
