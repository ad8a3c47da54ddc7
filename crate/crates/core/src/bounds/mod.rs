//! Partition combinatorics and exact bound checks.

mod checks;
mod partition;

pub use checks::*;
pub use partition::{count_tableaux, factorial, partitions, Partition};
