use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::{is_strongly_connected, strongly_connected_components, Edge, LabeledGraph, VertexSet};
use crate::error::{Error, Result};
use crate::word::Symbol;

/// Largest number of subset states explored before giving up.
pub const DETERMINIZE_STATE_CAP: u64 = 1 << 20;

/// Subset construction from the full vertex set, followed by trimming.
///
/// States are numbered in breadth-first discovery order with labels tried in
/// increasing order, so the output is deterministic.
pub fn determinize_trim(g: &LabeledGraph) -> Result<LabeledGraph> {
    let g = g.trim()?;
    let (states, edges) = subset_states(&g)?;
    LabeledGraph::new(g.alphabet().clone(), states.len(), edges)?.trim()
}

/// Reachable nonempty subsets and the transitions between them.
pub(crate) fn subset_states(g: &LabeledGraph) -> Result<(Vec<VertexSet>, Vec<Edge>)> {
    let st = g.stepper();
    let k = g.alphabet().len() as Symbol;
    let start = VertexSet::full(g.vertex_count());
    let mut ids: BTreeMap<VertexSet, usize> = BTreeMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(start.clone(), 0);
    states.push(start.clone());
    queue.push_back(0usize);
    let mut edges = Vec::new();
    while let Some(i) = queue.pop_front() {
        for a in 0..k {
            let t = st.step(&states[i], a);
            if t.is_empty() {
                continue;
            }
            let j = match ids.get(&t) {
                Some(&j) => j,
                None => {
                    let j = states.len();
                    if j as u64 >= DETERMINIZE_STATE_CAP {
                        return Err(Error::ResourceLimit {
                            what: "subset-construction states",
                            limit: DETERMINIZE_STATE_CAP,
                        });
                    }
                    ids.insert(t.clone(), j);
                    states.push(t);
                    queue.push_back(j);
                    j
                }
            };
            edges.push(Edge {
                src: i,
                dst: j,
                label: a,
            });
        }
    }
    Ok((states, edges))
}

/// A strongly connected right-resolving presentation of the shift presented
/// by `g`, or `None` when that shift is not irreducible.
///
/// An irreducible sofic shift is presented by one irreducible component of
/// any of its presentations, so each component of the right-resolving graph
/// is tried in turn.
pub fn irreducible_presentation(g: &LabeledGraph) -> Result<Option<LabeledGraph>> {
    let t = g.trim()?;
    let d = if t.is_right_resolving() {
        t
    } else {
        determinize_trim(&t)?
    };
    if is_strongly_connected(&d) {
        return Ok(Some(d));
    }
    let comp = strongly_connected_components(&d);
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    for c in 0..ncomp {
        let members: Vec<usize> = (0..d.vertex_count()).filter(|&v| comp[v] == c).collect();
        let edges: Vec<Edge> = d
            .edges()
            .iter()
            .filter(|e| comp[e.src] == c && comp[e.dst] == c)
            .map(|e| Edge {
                src: members.binary_search(&e.src).expect("member"),
                dst: members.binary_search(&e.dst).expect("member"),
                label: e.label,
            })
            .collect();
        if edges.is_empty() {
            continue;
        }
        let sub = LabeledGraph::new(d.alphabet().clone(), members.len(), edges)?;
        if language_contained(&d, &sub)? {
            return Ok(Some(sub));
        }
    }
    Ok(None)
}

/// Whether every word labelling a path of `a` labels a path of `b`.
pub fn language_contained(a: &LabeledGraph, b: &LabeledGraph) -> Result<bool> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (sa, sb) = (a.stepper(), b.stepper());
    let k = a.alphabet().len() as Symbol;
    let start = (
        VertexSet::full(a.vertex_count()),
        VertexSet::full(b.vertex_count()),
    );
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((x, y)) = queue.pop_front() {
        for s in 0..k {
            let nx = sa.step(&x, s);
            if nx.is_empty() {
                continue;
            }
            let ny = sb.step(&y, s);
            if ny.is_empty() {
                return Ok(false);
            }
            if seen.len() as u64 >= DETERMINIZE_STATE_CAP {
                return Err(Error::ResourceLimit {
                    what: "subset-pair states",
                    limit: DETERMINIZE_STATE_CAP,
                });
            }
            let pair = (nx, ny);
            if seen.insert(pair.clone()) {
                queue.push_back(pair);
            }
        }
    }
    Ok(true)
}
