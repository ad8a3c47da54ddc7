//! Exact graded polynomial-identity machinery for Lie superalgebras given by
//! structure constants, with the superalgebra b(2) built in.

pub mod algebra;
pub mod bounds;
pub mod codim;
pub mod error;
pub mod numeric;
pub mod perm;
pub mod poly;
pub mod report;
pub mod witness;

pub use error::{Error, Result};
