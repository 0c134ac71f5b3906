pub mod cli;
pub mod error;
pub mod geometry;
pub mod operators;
pub mod oracle;
pub mod polyops;
pub mod spectra;

pub use error::{Error, Result};
