//! Batch verification suites over [`kklab_core`], with flat `key = value` configs and
//! JSON reports.

pub mod config;
pub mod error;
pub mod format;
pub mod report;
pub mod suites;

pub use config::{parse_config_text, ExperimentConfig, Params, MAX_FIELD_ENV};
pub use error::{KklabError, Result};
pub use report::{PropertyResult, Report, Status};
pub use suites::{norm_group_finite, run_suite, NormGroup, Suite};
