//! Additive-approximation all-pairs shortest paths for unweighted undirected
//! graphs, with the tropical-product and matrix-multiplication machinery they
//! are built from.

pub mod apsp;
pub mod error;
pub mod graph;
pub mod harness;
pub mod matmul;
pub mod minplus;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, INF};
