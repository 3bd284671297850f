//! Configuration parsing, CSV/JSON/SVG output and the `tripartite` command.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod format;
pub mod report;
pub mod svg;

pub use commands::run;
pub use config::{parse_config, RunConfig};
pub use csv::{read_trajectory_csv, write_trajectory_csv};
pub use error::{CliError, ConfigError};
pub use report::write_report_json;
pub use svg::{render_chart_svg, ChartSpec, Series};
