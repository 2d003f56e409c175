pub mod algebra;
pub mod cli;
pub mod error;
pub mod frobenius;
pub mod json;
pub mod lg;
pub mod orbit;
pub mod verify;

pub use error::{Error, Result};
