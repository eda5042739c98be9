use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::CostGraph;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// A minimum mean cycle: its exact mean and the edge indices along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanCycle {
    pub mean: ExactRational,
    pub numer: i64,
    pub denom: i64,
    /// indices into `CostGraph::edges`, in traversal order
    pub edges: Vec<usize>,
}

/// Exact minimum cycle mean.
pub fn min_mean_cycle(cg: &CostGraph) -> Result<ExactRational> {
    min_mean_cycle_witness(cg).map(|c| c.mean)
}

/// Karp's algorithm with a virtual source joined to every vertex by a
/// zero-cost edge, followed by extraction of an optimal cycle.
///
/// `D_k(v)` is the least cost of a `k`-edge walk ending at `v`; then the
/// optimum is `min_v max_k (D_n(v) - D_k(v)) / (n - k)`. Rows are recomputed
/// in a second sweep instead of being stored, so memory stays linear.
pub fn min_mean_cycle_witness(cg: &CostGraph) -> Result<MeanCycle> {
    let n = cg.vertices;
    if n == 0 {
        return Err(Error::Acyclic);
    }
    let step = |d: &[Option<i64>]| -> Vec<Option<i64>> {
        let mut out = vec![None; n];
        for e in &cg.edges {
            if let Some(du) = d[e.src] {
                let c = du + e.cost as i64;
                let slot: &mut Option<i64> = &mut out[e.dst];
                if slot.is_none_or(|x| c < x) {
                    *slot = Some(c);
                }
            }
        }
        out
    };
    let mut d: Vec<Option<i64>> = vec![Some(0); n];
    for _ in 0..n {
        d = step(&d);
    }
    let dn = d;
    if dn.iter().all(|x| x.is_none()) {
        return Err(Error::Acyclic);
    }
    // best[v] = max_k (D_n(v) - D_k(v)) / (n - k) as a fraction (num, den)
    let mut best: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut dk: Vec<Option<i64>> = vec![Some(0); n];
    for k in 0..n {
        for v in 0..n {
            if let (Some(a), Some(b)) = (dn[v], dk[v]) {
                let cand = (a - b, (n - k) as i64);
                if best[v].is_none_or(|cur| frac_cmp(cand, cur) == Ordering::Greater) {
                    best[v] = Some(cand);
                }
            }
        }
        dk = step(&dk);
    }
    let (p, q) = best
        .into_iter()
        .flatten()
        .min_by(|a, b| frac_cmp(*a, *b))
        .ok_or(Error::Acyclic)?;
    let g = num_integer::gcd(p.unsigned_abs(), q as u64) as i64;
    let (p, q) = (p / g, q / g);
    let edges = tight_cycle(cg, p, q);
    Ok(MeanCycle {
        mean: ExactRational::new(p, q),
        numer: p,
        denom: q,
        edges,
    })
}

fn frac_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    ((a.0 as i128) * (b.1 as i128)).cmp(&((b.0 as i128) * (a.1 as i128)))
}

/// With costs `q c - p` there is no negative cycle and every optimal cycle has
/// weight zero. Shortest-path potentials make all its edges tight, and any
/// cycle of tight edges has weight zero, hence mean exactly `p / q`.
fn tight_cycle(cg: &CostGraph, p: i64, q: i64) -> Vec<usize> {
    let n = cg.vertices;
    let w = |c: u32| q * c as i64 - p;
    let mut pot = vec![0i64; n];
    loop {
        let mut changed = false;
        for e in &cg.edges {
            let c = pot[e.src] + w(e.cost);
            if c < pot[e.dst] {
                pot[e.dst] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut tight: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in cg.edges.iter().enumerate() {
        if pot[e.src] + w(e.cost) == pot[e.dst] {
            tight[e.src].push(i);
        }
    }
    // iterative DFS for a cycle in the tight subgraph
    let mut color = vec![0u8; n];
    let mut parent_edge = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        color[root] = 1;
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            if *pos < tight[v].len() {
                let ei = tight[v][*pos];
                *pos += 1;
                let u = cg.edges[ei].dst;
                if color[u] == 0 {
                    color[u] = 1;
                    parent_edge[u] = ei;
                    stack.push((u, 0));
                } else if color[u] == 1 {
                    let mut cycle = vec![ei];
                    let mut x = v;
                    while x != u {
                        let pe = parent_edge[x];
                        cycle.push(pe);
                        x = cg.edges[pe].src;
                    }
                    cycle.reverse();
                    return cycle;
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    unreachable!("an optimal cycle is always tight")
}

#[cfg(test)]
mod tests {
    use super::super::CostEdge;
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> CostGraph {
        CostGraph::new(
            n,
            edges
                .iter()
                .map(|&(src, dst, cost)| CostEdge { src, dst, cost })
                .collect(),
        )
    }

    /// Minimum mean over all simple cycles, by enumerating them from their
    /// smallest vertex.
    fn brute_min_mean(cg: &CostGraph) -> Option<ExactRational> {
        let mut best: Option<ExactRational> = None;
        fn dfs(
            cg: &CostGraph,
            start: usize,
            v: usize,
            visited: &mut Vec<bool>,
            cost: u64,
            len: u64,
            best: &mut Option<ExactRational>,
        ) {
            for e in &cg.edges {
                if e.src != v {
                    continue;
                }
                let c = cost + e.cost as u64;
                if e.dst == start {
                    let m = ExactRational::from_counts(c, len + 1);
                    if best.as_ref().is_none_or(|b| m < *b) {
                        *best = Some(m);
                    }
                } else if e.dst > start && !visited[e.dst] {
                    visited[e.dst] = true;
                    dfs(cg, start, e.dst, visited, c, len + 1, best);
                    visited[e.dst] = false;
                }
            }
        }
        for s in 0..cg.vertices {
            let mut visited = vec![false; cg.vertices];
            visited[s] = true;
            dfs(cg, s, s, &mut visited, 0, 0, &mut best);
        }
        best
    }

    fn check_witness(cg: &CostGraph, mc: &MeanCycle) {
        let es = &mc.edges;
        assert!(!es.is_empty());
        for i in 0..es.len() {
            assert_eq!(cg.edges[es[i]].dst, cg.edges[es[(i + 1) % es.len()]].src);
        }
        let total: u64 = es.iter().map(|&i| cg.edges[i].cost as u64).sum();
        assert_eq!(ExactRational::from_counts(total, es.len() as u64), mc.mean);
    }

    #[test]
    fn single_loop() {
        let g = graph(1, &[(0, 0, 0)]);
        assert!(min_mean_cycle(&g).unwrap().is_zero());
    }

    #[test]
    fn seven_cycle_two_costs() {
        let edges: Vec<_> = (0..7)
            .map(|i| (i, (i + 1) % 7, u32::from(i == 2 || i == 5)))
            .collect();
        let g = graph(7, &edges);
        let mc = min_mean_cycle_witness(&g).unwrap();
        assert_eq!(mc.mean, ExactRational::new(2, 7));
        check_witness(&g, &mc);
    }

    #[test]
    fn acyclic_rejected() {
        assert_eq!(
            min_mean_cycle(&graph(3, &[(0, 1, 1), (1, 2, 0)])),
            Err(Error::Acyclic)
        );
        assert_eq!(min_mean_cycle(&graph(0, &[])), Err(Error::Acyclic));
    }

    #[test]
    fn random_graphs_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=20);
            let edges: Vec<_> = (0..m)
                .map(|_| {
                    (
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        rng.gen_range(0..=1),
                    )
                })
                .collect();
            let g = graph(n, &edges);
            match brute_min_mean(&g) {
                Some(b) => {
                    let mc = min_mean_cycle_witness(&g).unwrap();
                    assert_eq!(mc.mean, b);
                    check_witness(&g, &mc);
                }
                None => assert_eq!(min_mean_cycle(&g), Err(Error::Acyclic)),
            }
        }
    }

    proptest! {
        #[test]
        fn general_costs_match_enumeration(
            n in 1usize..7,
            raw in proptest::collection::vec((0usize..7, 0usize..7, 0u32..5), 1..16)
        ) {
            let edges: Vec<_> = raw.into_iter().map(|(a, b, c)| (a % n, b % n, c)).collect();
            let g = graph(n, &edges);
            match brute_min_mean(&g) {
                Some(b) => {
                    let mc = min_mean_cycle_witness(&g).unwrap();
                    prop_assert_eq!(&mc.mean, &b);
                    check_witness(&g, &mc);
                }
                None => prop_assert_eq!(min_mean_cycle(&g), Err(Error::Acyclic)),
            }
        }
    }
}
