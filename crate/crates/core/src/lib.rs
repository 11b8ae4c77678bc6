pub mod cli;
pub mod closure;
pub mod dense;
pub mod error;
pub mod forcing;
pub mod hamlib;
pub mod pauli;
pub mod verify;

pub use error::{Error, Result};
