//! Scene files, certificates and SVG output for the `poncelet` tool.

pub mod certificate;
pub mod commands;
pub mod render;
pub mod scene;

pub use commands::{run, Cli, Command, Outcome};
