pub mod automaton;
pub mod color;
pub mod encoder;
pub mod error;
pub mod hypergraph;
pub mod relation;
pub mod term;

pub use error::{Error, Result};
