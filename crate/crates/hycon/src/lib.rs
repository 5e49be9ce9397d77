//! File formats, audio ingestion and the `hycon` command-line pipeline built
//! on `hycon-core`.

pub mod arpa;
pub mod cli;
pub mod error;
pub mod manifest;
pub mod synth;
pub mod tables;
pub mod wav;

pub use error::{ExitStatus, HyconError};
