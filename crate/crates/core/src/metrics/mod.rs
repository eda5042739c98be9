//! Exact distances between points and sofic shifts, and Hamming–Hausdorff
//! distances between word sets.

mod distance;
mod hausdorff;
mod karp;

use alloc::string::String;
use alloc::vec::Vec;

pub use distance::{
    dist_point_to_sofic, point_sofic_certificate, PointSoficCertificate, DEFAULT_HORIZON,
};
pub use hausdorff::{directed_hausdorff, directed_hausdorff_to_graph, hausdorff_n};
pub use karp::{min_mean_cycle, min_mean_cycle_witness, MeanCycle};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CostEdge {
    pub src: usize,
    pub dst: usize,
    pub cost: u32,
}

/// Directed multigraph with nonnegative integer edge costs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CostGraph {
    pub vertices: usize,
    pub edges: Vec<CostEdge>,
    /// descriptions of the two factors of a product graph
    pub provenance: (String, String),
}

impl CostGraph {
    pub fn new(vertices: usize, edges: Vec<CostEdge>) -> Self {
        CostGraph {
            vertices,
            edges,
            provenance: (String::new(), String::new()),
        }
    }
}
