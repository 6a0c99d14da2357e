//! Combinatorics of Sturm permutations and their 3-ball cell complexes.
//! Analysis runs from a permutation to its complex; design runs back.

pub mod ball;
pub mod complex;
pub mod designer;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod meander;
pub mod render;
pub mod report;
pub mod surgery;

pub use error::{Error, Result};
