//! Expansions in non-integer bases over `{-1, 0, 1}`, uniqueness of
//! expansions, and Hausdorff dimensions of Cantor set self-intersections.

pub mod error;
pub mod exactnum;
pub mod dimension;
pub mod exec;
pub mod expansions;
pub mod thuemorse;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
