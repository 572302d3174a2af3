use std::process::ExitCode;

use clap::Parser;
use clifft_cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let cfg = match cli.resolve() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&cfg) {
        Ok(outcome) => {
            let failed = outcome.report.failed_ids();
            let total = outcome.report.rows.iter().filter(|r| r.gating).count();
            println!(
                "{}: {}/{} checks passed; reports in {}",
                cfg.command.as_str(),
                total - failed.len(),
                total,
                cfg.output.display()
            );
            for id in failed {
                println!("FAILED {id}");
            }
            for e in &outcome.report.errors {
                eprintln!("error: {e}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
