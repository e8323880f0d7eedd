pub mod catcore;
pub mod cli;
pub mod constructions;
pub mod dot;
pub mod double;
pub mod error;
pub mod interchange;
pub mod examples;
pub mod k0;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};
