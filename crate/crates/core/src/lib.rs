pub mod algebra;
pub mod blowup;
pub mod cell;
pub mod classify;
pub mod error;
pub mod green;
pub mod harmonic;
pub mod iteration;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
