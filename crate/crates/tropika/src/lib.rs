//! File formats, plots, seeded generators, experiment batches and the
//! command line for `tropika-core`.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod format;
pub mod gen;
pub mod io;
pub mod plot;

pub use error::{Error, Result};
