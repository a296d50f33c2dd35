use std::process::ExitCode;

use clap::Parser;

use tensorfractal::cli::{run, Cli};
use tensorfractal_core::tensor::set_element_budget;

const BUDGET_ENV: &str = "TENSORFRACTAL_BUDGET";

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.budget {
        Some(flag) => Some(flag),
        None => match std::env::var(BUDGET_ENV) {
            Ok(value) => match value.parse::<u64>() {
                Ok(parsed) => Some(parsed),
                Err(_) => {
                    eprintln!("error: {BUDGET_ENV} must be an integer, got '{value}'");
                    return ExitCode::from(1);
                }
            },
            Err(std::env::VarError::NotPresent) => None,
            Err(err) => {
                eprintln!("error: reading {BUDGET_ENV}: {err}");
                return ExitCode::from(1);
            }
        },
    };
    if let Some(cap) = budget {
        set_element_budget(cap);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
