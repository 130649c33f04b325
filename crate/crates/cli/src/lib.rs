//! Configuration files, published tables and the `sos` subcommands.

pub mod commands;
pub mod config;
pub mod golden;

pub use commands::{Outcome, Status};
pub use config::{parse_config, parse_config_str, serialize, ConfigError, Method, OutputFormat, RunConfig};
pub use golden::{GoldenRow, GoldenTable, PrintedValue, TABLE_SET_1, TABLE_SET_2};
