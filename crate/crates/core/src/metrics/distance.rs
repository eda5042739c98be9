use alloc::vec;
use alloc::vec::Vec;

use super::{min_mean_cycle_witness, CostEdge, CostGraph};
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sofic::LabeledGraph;
use crate::word::{mismatch_density, PeriodicPoint, Symbol, Word};

/// Window lengths used by the finite-horizon lower envelope.
pub const DEFAULT_HORIZON: usize = 16;

/// `inf { d(p, y) : y in X(g) }` for the upper mismatch density `d`.
pub fn dist_point_to_sofic(p: &PeriodicPoint, g: &LabeledGraph) -> Result<ExactRational> {
    point_sofic_certificate(p, g, 0).map(|c| c.value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSoficCertificate {
    pub value: ExactRational,
    /// a point of `X(g)` attaining the value
    pub witness: PeriodicPoint,
    /// `(phase, vertex)` states along the optimal product cycle, phase 0 first
    pub cycle: Vec<(usize, usize)>,
    /// exact density of `witness` against `p`
    pub witness_density: ExactRational,
    /// best finite-window lower bound and the window length achieving it
    pub lower_envelope: ExactRational,
    pub lower_envelope_window: usize,
}

/// Builds the product of the period cycle of `p` with `g` (cost 1 on label
/// mismatch), takes its minimum mean cycle and turns that cycle into an
/// explicit witness. The preperiod of `p` only affects a finite prefix, so it
/// is ignored by the value and absorbed into the witness by a backward walk.
pub fn point_sofic_certificate(
    p: &PeriodicPoint,
    g: &LabeledGraph,
    horizon: usize,
) -> Result<PointSoficCertificate> {
    let g = g.trim()?;
    let period = p.period();
    let np = period.len();
    let nv = g.vertex_count();
    let mut edges = Vec::with_capacity(np * g.edges().len());
    let mut labels = Vec::with_capacity(np * g.edges().len());
    for phase in 0..np {
        for e in g.edges() {
            edges.push(CostEdge {
                src: phase * nv + e.src,
                dst: ((phase + 1) % np) * nv + e.dst,
                cost: u32::from(e.label != period[phase]),
            });
            labels.push(e.label);
        }
    }
    let cg = CostGraph {
        vertices: np * nv,
        edges,
        provenance: Default::default(),
    };
    let mc = min_mean_cycle_witness(&cg)?;

    let start = mc
        .edges
        .iter()
        .position(|&i| cg.edges[i].src / nv == 0)
        .expect("product cycles pass through every phase");
    let rotated: Vec<usize> = mc.edges[start..]
        .iter()
        .chain(&mc.edges[..start])
        .copied()
        .collect();
    let cycle: Vec<(usize, usize)> = rotated
        .iter()
        .map(|&i| (cg.edges[i].src / nv, cg.edges[i].src % nv))
        .collect();
    let tail: Word = rotated.iter().map(|&i| labels[i]).collect();
    let entry = cycle[0].1;
    let prefix = backward_walk(&g, entry, p.preperiod().len());
    let witness = PeriodicPoint::new(prefix, tail)?;
    let witness_density = mismatch_density(p, &witness);
    debug_assert!(g.accepts_point(&witness));
    debug_assert_eq!(witness_density, mc.mean);

    let (lower_envelope, lower_envelope_window) = window_lower_envelope(p, &g, horizon);
    Ok(PointSoficCertificate {
        value: mc.mean,
        witness,
        cycle,
        witness_density,
        lower_envelope,
        lower_envelope_window,
    })
}

/// Labels of a path of length `len` in `g` ending at `v`.
fn backward_walk(g: &LabeledGraph, v: usize, len: usize) -> Word {
    let ins = g.in_edges();
    let mut out: Vec<Symbol> = Vec::with_capacity(len);
    let mut cur = v;
    for _ in 0..len {
        let e = g.edges()[ins[cur][0]];
        out.push(e.label);
        cur = e.src;
    }
    out.reverse();
    Word(out)
}

/// For window lengths `n <= horizon`: the fewest mismatches any path of `g` can
/// have against an `n`-window of the periodic tail of `p`, minimized over the
/// window phase, divided by `n`. Any point of `X(g)` splits into consecutive
/// `n`-windows each costing at least that much, so every value is a lower
/// bound for the distance. Returns the largest one.
fn window_lower_envelope(
    p: &PeriodicPoint,
    g: &LabeledGraph,
    horizon: usize,
) -> (ExactRational, usize) {
    let period = p.period();
    let np = period.len();
    let mut best_per_n = vec![u64::MAX; horizon + 1];
    for m in 0..np {
        let mut cost = vec![0u64; g.vertex_count()];
        for n in 1..=horizon {
            let sym = period[(m + n - 1) % np];
            let mut next = vec![u64::MAX; g.vertex_count()];
            for e in g.edges() {
                let c = cost[e.src].saturating_add(u64::from(e.label != sym));
                if c < next[e.dst] {
                    next[e.dst] = c;
                }
            }
            cost = next;
            let min = cost.iter().copied().min().unwrap_or(u64::MAX);
            best_per_n[n] = best_per_n[n].min(min);
        }
    }
    let mut best = (ExactRational::zero(), 0);
    for n in 1..=horizon {
        let v = ExactRational::from_counts(best_per_n[n], n as u64);
        if v > best.0 {
            best = (v, n);
        }
    }
    best
}

impl PointSoficCertificate {
    /// Checks the internal consistency of the certificate against `p` and `g`.
    pub fn verify(&self, p: &PeriodicPoint, g: &LabeledGraph) -> Result<()> {
        if !g.accepts_point(&self.witness) {
            return Err(Error::InvalidParameter("witness not in the shift".into()));
        }
        if mismatch_density(p, &self.witness) != self.value {
            return Err(Error::InvalidParameter(
                "witness density differs from value".into(),
            ));
        }
        if self.lower_envelope > self.value {
            return Err(Error::InvalidParameter(
                "lower envelope exceeds value".into(),
            ));
        }
        Ok(())
    }
}
