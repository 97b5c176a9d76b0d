//! File formats, configuration, SVG plots and the batch pipeline around
//! `homonym-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod formats;
pub mod pipeline;
pub mod viz;

pub use config::RunConfig;
pub use error::{Result, WorkbenchError};
pub use pipeline::{cmd_plot, cmd_prepare, cmd_run, Manifest, Report};
