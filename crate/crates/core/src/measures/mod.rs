//! Markov measures on labelled graphs, block statistics and transport bounds.

mod blocks;
mod transport;
mod witness;

pub use blocks::{block_distribution, BlockDistribution, BlockSource, BLOCK_LENGTH_CAP};
pub use transport::{optimal_transport, ot_lower_bound, Transport, TRANSPORT_SUPPORT_CAP};
pub use witness::{entropy_dense_witness, EntropyWitness};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::sofic::{is_strongly_connected, Edge, LabeledGraph};

/// Largest graph a measure may live on (dense linear algebra).
pub const MEASURE_VERTEX_CAP: usize = 2048;

const ROW_SUM_TOL: f64 = 1e-12;
const STATIONARY_TOL: f64 = 1e-10;

/// A stationary Markov chain on the edges of a labelled graph; its label
/// process is a shift-invariant measure on the presented shift.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovMeasure {
    graph: LabeledGraph,
    edge_probs: Vec<f64>,
    stationary: Vec<f64>,
}

impl MarkovMeasure {
    /// `edge_probs[i]` is the probability of `graph.edges()[i]` given its
    /// source. Edges of positive probability must form a strongly connected
    /// graph.
    pub fn new(graph: LabeledGraph, edge_probs: Vec<f64>) -> Result<Self> {
        let n = graph.vertex_count();
        if n > MEASURE_VERTEX_CAP {
            return Err(Error::ResourceLimit {
                what: "measure vertices",
                limit: MEASURE_VERTEX_CAP as u64,
            });
        }
        if edge_probs.len() != graph.edges().len() {
            return Err(Error::InvalidMeasure(format!(
                "{} probabilities for {} edges",
                edge_probs.len(),
                graph.edges().len()
            )));
        }
        let mut sums = vec![0.0; n];
        for (e, &p) in graph.edges().iter().zip(&edge_probs) {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidMeasure(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            sums[e.src] += p;
        }
        if let Some(v) = sums.iter().position(|s| (s - 1.0).abs() > ROW_SUM_TOL) {
            return Err(Error::InvalidMeasure(format!(
                "outgoing probabilities of vertex {v} sum to {}",
                sums[v]
            )));
        }
        let support: Vec<Edge> = graph
            .edges()
            .iter()
            .zip(&edge_probs)
            .filter(|(_, &p)| p > 0.0)
            .map(|(e, _)| *e)
            .collect();
        let support = LabeledGraph::new(graph.alphabet().clone(), n, support)?;
        if !is_strongly_connected(&support) {
            return Err(Error::Reducible);
        }
        let mut m = MarkovMeasure {
            graph,
            edge_probs,
            stationary: Vec::new(),
        };
        m.stationary = linalg::stationary(&m.transition_matrix()).ok_or(Error::Reducible)?;
        if m.stationary_residual() > STATIONARY_TOL {
            return Err(Error::InvalidMeasure(
                "stationary vector did not converge".into(),
            ));
        }
        Ok(m)
    }

    /// Normalizes nonnegative per-edge weights at each vertex.
    pub fn from_weights(graph: LabeledGraph, weights: &[f64]) -> Result<Self> {
        if weights.len() != graph.edges().len() {
            return Err(Error::InvalidMeasure(format!(
                "{} weights for {} edges",
                weights.len(),
                graph.edges().len()
            )));
        }
        let mut sums = vec![0.0; graph.vertex_count()];
        for (e, &w) in graph.edges().iter().zip(weights) {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidMeasure(format!(
                    "weight {w} is not a nonnegative number"
                )));
            }
            sums[e.src] += w;
        }
        if let Some(v) = sums.iter().position(|&s| s <= 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "vertex {v} has no outgoing weight"
            )));
        }
        let probs = graph
            .edges()
            .iter()
            .zip(weights)
            .map(|(e, &w)| w / sums[e.src])
            .collect();
        MarkovMeasure::new(graph, probs)
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn edge_probs(&self) -> &[f64] {
        &self.edge_probs
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// Vertex-to-vertex transition matrix, parallel edges summed.
    pub fn transition_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.graph.vertex_count();
        let mut p = vec![vec![0.0; n]; n];
        for (e, &q) in self.graph.edges().iter().zip(&self.edge_probs) {
            p[e.src][e.dst] += q;
        }
        p
    }

    /// `max_j |(pi P)_j - pi_j|`.
    pub fn stationary_residual(&self) -> f64 {
        let mut next = vec![0.0; self.graph.vertex_count()];
        for (e, &q) in self.graph.edges().iter().zip(&self.edge_probs) {
            next[e.dst] += self.stationary[e.src] * q;
        }
        next.iter()
            .zip(&self.stationary)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The measure of maximal entropy on a strongly connected right-resolving
/// graph: `P(e) = r(t(e)) / (lambda r(i(e)))`.
pub fn parry_measure(g: &LabeledGraph) -> Result<MarkovMeasure> {
    let g = g.trim()?;
    if !is_strongly_connected(&g) {
        return Err(Error::Reducible);
    }
    if !g.is_right_resolving() {
        return Err(Error::InvalidGraph(
            "Parry measure needs a right-resolving graph".into(),
        ));
    }
    let n = g.vertex_count();
    if n > MEASURE_VERTEX_CAP {
        return Err(Error::ResourceLimit {
            what: "measure vertices",
            limit: MEASURE_VERTEX_CAP as u64,
        });
    }
    let rows: Vec<Vec<(usize, f64)>> = g.adjacency_counts().iter().map(|row| sparse(row)).collect();
    let (lambda, r) = linalg::perron(&rows, 1e-15, 5_000_000);
    let mut probs: Vec<f64> = g
        .edges()
        .iter()
        .map(|e| r[e.dst] / (lambda * r[e.src]))
        .collect();
    let mut sums = vec![0.0; n];
    for (e, p) in g.edges().iter().zip(&probs) {
        sums[e.src] += p;
    }
    for (e, p) in g.edges().iter().zip(probs.iter_mut()) {
        *p /= sums[e.src];
    }
    MarkovMeasure::new(g, probs)
}

fn sparse(row: &[u64]) -> Vec<(usize, f64)> {
    row.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| (j, c as f64))
        .collect()
}

/// Entropy of the edge chain, `-sum_v pi_v sum_e P(e) ln P(e)`.
///
/// On a right-resolving graph this is the entropy of the label process;
/// otherwise it bounds that entropy from above.
pub fn markov_entropy(m: &MarkovMeasure) -> f64 {
    m.graph
        .edges()
        .iter()
        .zip(&m.edge_probs)
        .filter(|(_, &p)| p > 0.0)
        .map(|(e, &p)| -m.stationary[e.src] * p * libm::log(p))
        .sum()
}
