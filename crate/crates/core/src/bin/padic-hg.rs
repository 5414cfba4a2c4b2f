use std::process::ExitCode;

use clap::Parser;
use padic_hg::cli::{exit_code_for, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("padic-hg: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
