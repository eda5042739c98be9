use alloc::vec::Vec;

use super::{block_distribution, markov_entropy, BlockDistribution, BlockSource, MarkovMeasure};
use crate::error::{Error, Result};
use crate::sofic::{classify_graph, Edge, LabeledGraph};

/// An ergodic Markov measure close to `alpha m1 + (1 - alpha) m2`, with its
/// distances from that mixture.
#[derive(Clone, Debug)]
pub struct EntropyWitness {
    pub measure: MarkovMeasure,
    pub m1: MarkovMeasure,
    pub m2: MarkovMeasure,
    pub alpha: f64,
    pub eps: f64,
    /// `|h(measure) - (alpha h(m1) + (1 - alpha) h(m2))|`
    pub entropy_residual: f64,
    /// entropy spent on mode switches, `pi_1 H(eps_1) + pi_2 H(eps_2)`
    pub switching_entropy: f64,
}

impl EntropyWitness {
    /// Total-variation distance of the `k`-blocks from the mixture's.
    pub fn block_residual(&self, k: usize) -> Result<f64> {
        let a = block_distribution(BlockSource::Markov(&self.m1), k)?;
        let b = block_distribution(BlockSource::Markov(&self.m2), k)?;
        let target: BlockDistribution = a.mix(&b, self.alpha)?;
        block_distribution(BlockSource::Markov(&self.measure), k)?.total_variation(&target)
    }
}

/// Two-mode chain on `(vertex, mode)`: in mode `i` edges follow `m_i`, and
/// each step leaves mode 1 with probability `eps (1 - alpha)` and mode 2 with
/// probability `eps alpha`, so mode 1 is occupied a fraction `alpha` of the
/// time. Labels are those of the shared graph, so the measure lives on the
/// same shift. Smaller `eps` means longer sojourns and smaller residuals.
pub fn entropy_dense_witness(
    m1: &MarkovMeasure,
    m2: &MarkovMeasure,
    alpha: f64,
    eps: f64,
) -> Result<EntropyWitness> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(alloc::format!(
            "alpha = {alpha} is outside [0, 1]"
        )));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "eps = {eps} is outside (0, 1]"
        )));
    }
    let g = m1.graph();
    if g != m2.graph() {
        return Err(Error::InvalidGraph(
            "the two measures live on different graphs".into(),
        ));
    }
    if !classify_graph(g)?.is_mixing {
        return Err(Error::NotMixing);
    }
    let target = alpha * markov_entropy(m1) + (1.0 - alpha) * markov_entropy(m2);
    let degenerate = if alpha == 1.0 {
        Some(m1)
    } else if alpha == 0.0 {
        Some(m2)
    } else {
        None
    };
    if let Some(m) = degenerate {
        return Ok(EntropyWitness {
            measure: m.clone(),
            m1: m1.clone(),
            m2: m2.clone(),
            alpha,
            eps,
            entropy_residual: (markov_entropy(m) - target).abs(),
            switching_entropy: 0.0,
        });
    }

    let n = g.vertex_count();
    let leave = [eps * (1.0 - alpha), eps * alpha];
    let probs = [m1.edge_probs(), m2.edge_probs()];
    let mut keyed: Vec<(Edge, f64)> = Vec::with_capacity(4 * g.edges().len());
    for (idx, e) in g.edges().iter().enumerate() {
        for mode in 0..2 {
            let p = probs[mode][idx];
            let src = e.src + mode * n;
            let stay = Edge {
                src,
                dst: e.dst + mode * n,
                label: e.label,
            };
            let switch = Edge {
                src,
                dst: e.dst + (1 - mode) * n,
                label: e.label,
            };
            keyed.push((stay, p * (1.0 - leave[mode])));
            keyed.push((switch, p * leave[mode]));
        }
    }
    // edges are stored sorted; sort first so the weights stay aligned
    keyed.sort_by_key(|a| a.0);
    let (edges, weights): (Vec<Edge>, Vec<f64>) = keyed.into_iter().unzip();
    let lifted = LabeledGraph::new(g.alphabet().clone(), 2 * n, edges)?;
    let measure = MarkovMeasure::new(lifted, weights)?;

    let occupancy: f64 = measure.stationary()[..n].iter().sum();
    let switching_entropy =
        occupancy * binary_entropy(leave[0]) + (1.0 - occupancy) * binary_entropy(leave[1]);
    let entropy_residual = (markov_entropy(&measure) - target).abs();
    Ok(EntropyWitness {
        measure,
        m1: m1.clone(),
        m2: m2.clone(),
        alpha,
        eps,
        entropy_residual,
        switching_entropy,
    })
}

fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * libm::log(q) } else { 0.0 };
    term(p) + term(1.0 - p)
}
