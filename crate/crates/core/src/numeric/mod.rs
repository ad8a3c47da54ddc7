//! Exact arithmetic: rationals, Q(√3) and sparse rank.

mod dense;
mod quad;
mod rational;
mod sparse;

pub use dense::solve_unique;
pub use quad::QuadExt3;
pub use rational::BigRat;
pub use sparse::{Echelon, SparseMat, SparseRow};
