//! File format, DOT export and command driver for voltlift.

pub mod commands;
pub mod document;
pub mod dot;

pub use commands::{run, Output};
