use alloc::vec::Vec;

use super::{determinize_trim, strongly_connected_components, LabeledGraph};
use crate::error::Result;
use crate::linalg::perron;

const REL_TOL: f64 = 1e-13;
const MAX_ITER: usize = 5_000_000;

/// Natural-log topological entropy of the presented shift.
///
/// Non-right-resolving input is determinized first. The value is the log of the
/// largest Perron root over the strongly connected components.
pub fn topological_entropy(g: &LabeledGraph) -> Result<f64> {
    let t = g.trim()?;
    let d = if t.is_right_resolving() {
        t
    } else {
        determinize_trim(&t)?
    };
    let comp = strongly_connected_components(&d);
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut best = 0.0f64;
    for c in 0..ncomp {
        let members: Vec<usize> = (0..d.vertex_count()).filter(|&v| comp[v] == c).collect();
        let mut local = alloc::vec![usize::MAX; d.vertex_count()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let mut rows: Vec<Vec<(usize, f64)>> = alloc::vec![Vec::new(); members.len()];
        let mut any = false;
        for e in d.edges() {
            if comp[e.src] == c && comp[e.dst] == c {
                rows[local[e.src]].push((local[e.dst], 1.0));
                any = true;
            }
        }
        if any {
            let (lambda, _) = perron(&rows, REL_TOL, MAX_ITER);
            best = best.max(lambda);
        }
    }
    Ok(libm::log(best))
}
