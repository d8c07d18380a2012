mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{run_coeffs, run_compare, run_report, run_verify, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Report(data) => run_report(data),
        Command::Compare { data, eps } => run_compare(data, *eps),
        Command::Coeffs {
            model,
            n,
            scale,
            format,
        } => run_coeffs(model, *n, scale.as_deref(), *format),
        Command::Verify { data, resolution } => run_verify(data, *resolution),
    };
    match result {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout
                .write_all(output.text.as_bytes())
                .and_then(|_| stdout.flush())
            {
                return fail(&CliError::Internal(format!("cannot write output: {e}")));
            }
            if output.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
