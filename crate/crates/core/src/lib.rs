//! Vertex-minors of circle graphs, double-occurrence words and semi-ordered
//! Eulerian tours, with exact solvers and polynomial reductions between the
//! associated decision problems.

pub mod dow;
pub mod enumerate;
pub mod error;
pub mod euler;
pub mod families;
pub mod graph;
pub mod io;
pub mod lc;
pub mod reduction;
pub mod soet;
pub mod solvers;

pub use error::{Error, Result};
