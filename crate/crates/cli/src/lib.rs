//! Scenario runner for `photonwave-core`: configuration parsing, the
//! scenario drivers, the text report and the CSV artifacts.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod report;
pub mod scenario;

pub use config::{Config, ConfigError, Scenario};
pub use error::RunError;
pub use scenario::{run, Outcome};
