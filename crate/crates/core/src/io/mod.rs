//! Configuration loading, on-disk formats and the run/compare/sweep workflows.

pub mod commands;
pub mod config;
pub mod reports;
pub mod rounds;

pub use commands::{compare_files, run_to_dir, sweep, RunOptions, RunOutput, SweepOptions};
pub use config::{config_to_json, load_config, load_config_with, parse_config, ConfigFile, ConfigOverrides};
pub use reports::{load_welfare, read_summary, RunManifest, RunSummary};
pub use rounds::{read_rounds, read_rounds_file, RoundWriter};
