//! Exact computations with relations between permutation representations,
//! regulator constants and the local arithmetic tables built on them.

pub mod arith;
pub mod burnside;
pub mod error;
pub mod group;
pub mod local;
pub mod regulator;
pub mod rep;

pub use error::{Error, Result};
