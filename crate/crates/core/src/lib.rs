pub mod algebra;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod homotopy;
pub mod network;

pub use error::{Error, Result};
