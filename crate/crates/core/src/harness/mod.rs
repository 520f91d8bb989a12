//! Experiment driver: presets, config parsing, sweeps over `(A, a)` pairs
//! and CSV/plot output.

use std::path::PathBuf;

use thiserror::Error;

mod config;
mod output;
mod report;

pub use config::{
    parse_config, parse_config_with, parse_pairs, EosBase, ExperimentConfig, Overrides, Preset,
    CASE_III_PAIRS, CASE_II_PAIRS, CASE_I_PAIRS, CASE_I_STEEP_PAIRS,
};
pub use output::{emit_profiles, plot_script, summary_csv, write_summary, PROFILE_HEADER};
pub use report::{exact_state, run_experiment, Check, PairRecord, RunReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Solver(#[from] crate::Error),
}
