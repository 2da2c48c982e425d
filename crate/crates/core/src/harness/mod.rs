//! Configuration-driven experiments and their reports.

pub mod config;
pub mod properties;
pub mod report;
pub mod runs;
pub mod tools;

pub use config::{Config, ExperimentKind, Format};
pub use report::{emit_report, Check, Report, Row};
pub use runs::run;
