use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ghspace_cli::args::Cli;
use ghspace_cli::{configure_threads, run, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(&cli)).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.body).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?,
            None => {
                let mut stdout = std::io::stdout().lock();
                // A closed pipe is not worth a panic.
                let _ = stdout.write_all(out.body.as_bytes());
            }
        }
        Ok(out.code)
    }) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
