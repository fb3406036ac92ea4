use std::process::ExitCode;

use clap::Parser;
use ppm_link_cli::{execute, thread_cap, Cli, THREADS_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_cap(std::env::var(THREADS_ENV).ok().as_deref())
        .and_then(|threads| execute(&cli, threads));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
