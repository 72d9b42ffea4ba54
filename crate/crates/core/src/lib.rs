pub mod braid;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod fibered;
pub mod invariants;
pub mod parallel;
pub mod scalar;
pub mod skein;

pub use error::{Error, Result};
