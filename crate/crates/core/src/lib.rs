//! Maxmin expected utility: preference oracles, the certainty-equivalent
//! functional, credal sets recovered from it, and the axiom checkers that
//! tie the two directions together.

pub mod axioms;
pub mod config;
pub mod credal;
pub mod ellsberg;
pub mod error;
pub mod functional;
pub mod geometry;
pub mod lp;
pub mod sampling;
pub mod types;
pub mod utility;

pub use config::Tolerances;
pub use error::{Error, Result};
