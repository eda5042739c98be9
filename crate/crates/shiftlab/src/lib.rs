//! File formats, named examples, certificates and the `shiftlab` command line
//! on top of `shiftlab-core`.

pub mod catalog;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod io;
pub mod verify;

pub use error::CliError;
