mod bits;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod mnl;
pub mod pattern;
pub mod sequence;

pub use error::{Error, Result};
