//! Benchmark harness: generates domains, runs the relaxed planner with each
//! path-index strategy, and writes CSV rows and SVG charts.

pub mod checks;
pub mod plot;
pub mod run;

pub use plot::emit_plots;
pub use run::{read_csv, run_bench, write_csv, BenchConfig, BenchRow, CSV_HEADER};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] vamp_core::Error),
    #[error("invalid benchmark config: {0}")]
    Config(String),
}

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io { path: path.into(), source }
    }
}
