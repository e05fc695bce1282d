pub mod algebra;
pub mod cli;
pub mod clifford;
pub mod closure;
pub mod defsolver;
pub mod error;
pub mod generators;
pub mod hilbert;
pub mod numcheck;
pub mod spectral;

pub use error::{Error, Result};
