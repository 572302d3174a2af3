//! Command dispatch and exit status.

use std::path::PathBuf;

use crate::bench::{bench_rows, run_bench};
use crate::config::{Command, ConfigError, RunConfig};
use crate::output::write_all;
use crate::suite::{run_suite, Report};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write reports to {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

pub struct Outcome {
    pub report: Report,
    pub all_passed: bool,
}

impl Outcome {
    /// 0 when every gating row passes, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed {
            0
        } else {
            2
        }
    }
}

/// Run the configured experiment and write its reports to `cfg.output`.
pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    cfg.validate()?;
    let (report, bench) = if cfg.command == Command::Bench {
        let mut report = Report::default();
        let table = run_bench(cfg.grid.half_width, &cfg.bench_points, cfg.sign)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        bench_rows(&table, &mut report);
        (report, Some(table))
    } else {
        (run_suite(cfg), None)
    };
    write_all(&cfg.output, cfg, &report, bench.as_ref()).map_err(|source| RunError::Io {
        path: cfg.output.clone(),
        source,
    })?;
    Ok(Outcome {
        all_passed: report.all_passed(),
        report,
    })
}
