//! Color-avoiding paths in edge-colored tournaments, r-increasing vector
//! families, and the (q,r)-pod packings they correspond to.
//!
//! Vertices and coordinates are 0-based in memory. The JSON formats in
//! [`formats`] are 1-based.

pub mod budget;
pub mod color;
pub mod constructions;
pub mod decomposition;
pub mod formats;
pub mod paths;
pub mod pods;
pub mod random;
pub mod reductions;
pub mod search;
pub mod tournament;
pub mod vectors;

pub use budget::Budget;
pub use color::{Color, ColorSet};
