//! Library backing the `optowork` binary: sweep configs, presets, dataset
//! emission, and the self-check suite. Kept as a library so integration
//! tests drive the same code paths as the CLI.

pub mod config;
pub mod dataset;
pub mod error;
pub mod presets;
pub mod selfcheck;
pub mod sweep;

pub use config::{Quantity, SweepConfig, SystemId};
pub use dataset::Dataset;
pub use error::CliError;
