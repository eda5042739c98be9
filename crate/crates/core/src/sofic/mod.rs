//! Labelled-graph presentations of sofic shifts.

mod determinize;
mod entropy;
mod sft;
mod specification;
pub mod vset;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::word::{Alphabet, PeriodicPoint, Symbol, Word};

pub use determinize::{
    determinize_trim, irreducible_presentation, language_contained, DETERMINIZE_STATE_CAP,
};
pub use entropy::topological_entropy;
pub use sft::{build_sft_graph, SftSpec};
pub use specification::specification_constant;
pub use vset::VertexSet;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Symbol,
}

/// A finite multigraph with symbol-labelled edges.
///
/// Edges are kept sorted by `(src, dst, label)`, so two graphs with the same
/// edge multiset compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, vertex_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.src >= vertex_count || e.dst >= vertex_count {
                return Err(Error::InvalidGraph(alloc::format!(
                    "edge {}->{} out of range for {} vertices",
                    e.src,
                    e.dst,
                    vertex_count
                )));
            }
            if e.label as usize >= alphabet.len() {
                return Err(Error::SymbolOutOfRange(e.label));
            }
        }
        edges.sort_unstable();
        Ok(LabeledGraph {
            alphabet,
            vertex_count,
            edges,
        })
    }

    /// Convenience constructor from `(src, dst, label)` triples.
    pub fn from_triples(
        alphabet: Alphabet,
        vertex_count: usize,
        triples: &[(usize, usize, Symbol)],
    ) -> Result<Self> {
        let edges = triples
            .iter()
            .map(|&(src, dst, label)| Edge { src, dst, label })
            .collect();
        Self::new(alphabet, vertex_count, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            d[e.src] += 1;
        }
        d
    }

    /// Per-vertex outgoing edge indices.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src].push(i);
        }
        out
    }

    pub fn in_edges(&self) -> Vec<Vec<usize>> {
        let mut inn = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            inn[e.dst].push(i);
        }
        inn
    }

    /// At most one outgoing edge per label at every vertex.
    pub fn is_right_resolving(&self) -> bool {
        let words = self.alphabet.len().div_ceil(64);
        let mut seen = vec![0u64; self.vertex_count * words];
        self.edges.iter().all(|e| {
            let slot = e.src * words + e.label as usize / 64;
            let bit = 1u64 << (e.label % 64);
            let fresh = seen[slot] & bit == 0;
            seen[slot] |= bit;
            fresh
        })
    }

    /// Removes vertices without incoming or outgoing edges until none remain.
    /// Surviving vertices keep their relative order.
    pub fn trim(&self) -> Result<LabeledGraph> {
        let n = self.vertex_count;
        let mut alive = vec![true; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.src] += 1;
            indeg[e.dst] += 1;
        }
        let outs = self.out_edges();
        let ins = self.in_edges();
        let mut queue: VecDeque<usize> = (0..n)
            .filter(|&v| indeg[v] == 0 || outdeg[v] == 0)
            .collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &i in &outs[v] {
                let w = self.edges[i].dst;
                if alive[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
            for &i in &ins[v] {
                let u = self.edges[i].src;
                if alive[u] {
                    outdeg[u] -= 1;
                    if outdeg[u] == 0 {
                        queue.push_back(u);
                    }
                }
            }
        }
        self.induced(&alive)
    }

    fn induced(&self, keep: &[bool]) -> Result<LabeledGraph> {
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if keep[v] {
                map[v] = next;
                next += 1;
            }
        }
        if next == 0 {
            return Err(Error::EmptyGraph);
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.src] && keep[e.dst])
            .map(|e| Edge {
                src: map[e.src],
                dst: map[e.dst],
                label: e.label,
            })
            .collect();
        LabeledGraph::new(self.alphabet.clone(), next, edges)
    }

    pub fn is_trimmed(&self) -> bool {
        let mut i = vec![false; self.vertex_count];
        let mut o = vec![false; self.vertex_count];
        for e in &self.edges {
            o[e.src] = true;
            i[e.dst] = true;
        }
        self.vertex_count > 0 && i.iter().zip(&o).all(|(a, b)| *a && *b)
    }

    /// Transition table `succ[v][a]` listing targets of `a`-labelled edges.
    pub fn stepper(&self) -> Stepper {
        let k = self.alphabet.len();
        let mut succ = vec![vec![Vec::new(); k]; self.vertex_count];
        for e in &self.edges {
            succ[e.src][e.label as usize].push(e.dst);
        }
        Stepper {
            n: self.vertex_count,
            succ,
        }
    }

    /// The graph with every edge reversed.
    pub fn reversed(&self) -> LabeledGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: e.dst,
                dst: e.src,
                label: e.label,
            })
            .collect();
        LabeledGraph::new(self.alphabet.clone(), self.vertex_count, edges).expect("same ranges")
    }

    /// True if some path of `g` is labelled `w`.
    pub fn accepts_word(&self, w: &[Symbol]) -> bool {
        let st = self.stepper();
        st.run(&VertexSet::full(self.vertex_count), w).is_some()
    }

    /// True if the point is the label of a one-sided infinite path.
    pub fn accepts_point(&self, p: &PeriodicPoint) -> bool {
        let st = self.stepper();
        let Some(mut state) = st.run(&VertexSet::full(self.vertex_count), p.preperiod()) else {
            return false;
        };
        let mut seen: Vec<VertexSet> = Vec::new();
        loop {
            if seen.contains(&state) {
                return true;
            }
            seen.push(state.clone());
            match st.run(&state, p.period()) {
                Some(s) => state = s,
                None => return false,
            }
        }
    }

    pub fn adjacency_counts(&self) -> Vec<Vec<u64>> {
        let mut a = vec![vec![0u64; self.vertex_count]; self.vertex_count];
        for e in &self.edges {
            a[e.src][e.dst] += 1;
        }
        a
    }
}

/// Subset-construction stepping over a labelled graph.
#[derive(Clone, Debug)]
pub struct Stepper {
    n: usize,
    succ: Vec<Vec<Vec<usize>>>,
}

impl Stepper {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn alphabet_len(&self) -> usize {
        self.succ.first().map_or(0, Vec::len)
    }

    pub fn step(&self, set: &VertexSet, a: Symbol) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in set.iter() {
            for &w in &self.succ[v][a as usize] {
                out.insert(w);
            }
        }
        out
    }

    /// Reads `w` from `set`; `None` once the state becomes empty.
    pub fn run(&self, set: &VertexSet, w: &[Symbol]) -> Option<VertexSet> {
        let mut cur = set.clone();
        for &a in w {
            cur = self.step(&cur, a);
            if cur.is_empty() {
                return None;
            }
        }
        Some(cur)
    }

    /// Vertices reachable in one step regardless of label.
    pub fn step_any(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in set.iter() {
            for targets in &self.succ[v] {
                for &w in targets {
                    out.insert(w);
                }
            }
        }
        out
    }

    pub fn targets(&self, v: usize, a: Symbol) -> &[usize] {
        &self.succ[v][a as usize]
    }
}

/// All words of length `n` labelling a path of `g`, sorted lexicographically.
/// `n = 0` yields the empty word alone.
pub fn language_n(g: &LabeledGraph, n: usize) -> Vec<Word> {
    let st = g.stepper();
    let k = g.alphabet().len() as Symbol;
    let mut out = Vec::new();
    let mut word: Vec<Symbol> = Vec::with_capacity(n);
    let mut stack: Vec<VertexSet> = vec![VertexSet::full(g.vertex_count())];
    // iterative DFS; `next[d]` is the next symbol to try at depth d
    let mut next: Vec<Symbol> = vec![0];
    loop {
        let depth = word.len();
        if depth == n {
            out.push(Word::from_symbols(&word));
            word.pop();
            stack.pop();
            next.pop();
            if next.is_empty() {
                return out;
            }
            continue;
        }
        let a = next[depth];
        if a == k {
            if depth == 0 {
                return out;
            }
            word.pop();
            stack.pop();
            next.pop();
            continue;
        }
        next[depth] += 1;
        let s = st.step(&stack[depth], a);
        if !s.is_empty() {
            word.push(a);
            stack.push(s);
            next.push(0);
        }
    }
}

/// Counts `|L_n|` for `n = 1..=max_n` without materialising the words.
pub fn language_counts(g: &LabeledGraph, max_n: usize) -> Vec<u128> {
    // the subset state reached from the full vertex set is a function of the
    // word, so counting words means counting multiplicities per state
    let st = g.stepper();
    let k = g.alphabet().len() as Symbol;
    let mut layer: alloc::collections::BTreeMap<VertexSet, u128> =
        alloc::collections::BTreeMap::new();
    layer.insert(VertexSet::full(g.vertex_count()), 1);
    let mut counts = Vec::with_capacity(max_n);
    for _ in 0..max_n {
        let mut next: alloc::collections::BTreeMap<VertexSet, u128> =
            alloc::collections::BTreeMap::new();
        for (s, c) in &layer {
            for a in 0..k {
                let t = st.step(s, a);
                if !t.is_empty() {
                    *next.entry(t).or_insert(0) += c;
                }
            }
        }
        counts.push(next.values().sum());
        layer = next;
    }
    counts
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphClassification {
    pub is_trim_nonempty: bool,
    pub is_transitive: bool,
    /// gcd of all cycle lengths of the trimmed graph
    pub period: u64,
    pub is_mixing: bool,
}

/// Strongly connected components, numbered in reverse topological order.
pub fn strongly_connected_components(g: &LabeledGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let outs: Vec<Vec<usize>> = g
        .out_edges()
        .into_iter()
        .map(|v| v.into_iter().map(|i| g.edges()[i].dst).collect())
        .collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < outs[v].len() {
                let w = outs[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Period of each component containing a cycle, keyed by component id.
fn component_periods(g: &LabeledGraph, comp: &[usize]) -> Vec<(usize, u64)> {
    let n = g.vertex_count();
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let outs = g.out_edges();
    let mut level = vec![usize::MAX; n];
    let mut out = Vec::new();
    for c in 0..ncomp {
        let Some(root) = (0..n).find(|&v| comp[v] == c) else {
            continue;
        };
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut members = Vec::new();
        while let Some(v) = queue.pop_front() {
            members.push(v);
            for &i in &outs[v] {
                let w = g.edges()[i].dst;
                if comp[w] == c && level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut period = 0u64;
        let mut has_cycle = false;
        for &v in &members {
            for &i in &outs[v] {
                let w = g.edges()[i].dst;
                if comp[w] == c {
                    has_cycle = true;
                    let diff = (level[v] as i64 + 1 - level[w] as i64).unsigned_abs();
                    period = num_integer::gcd(period, diff);
                }
            }
        }
        if has_cycle {
            out.push((c, period));
        }
    }
    out
}

/// Transitivity, period and mixing of the trimmed graph.
pub fn classify_graph(g: &LabeledGraph) -> Result<GraphClassification> {
    let t = g.trim()?;
    let comp = strongly_connected_components(&t);
    let transitive = comp.iter().all(|&c| c == comp[0]);
    let period = component_periods(&t, &comp)
        .iter()
        .fold(0, |acc, &(_, p)| num_integer::gcd(acc, p));
    Ok(GraphClassification {
        is_trim_nonempty: true,
        is_transitive: transitive,
        period,
        is_mixing: transitive && period == 1,
    })
}

/// True if the trimmed graph is a single strongly connected component.
pub fn is_strongly_connected(g: &LabeledGraph) -> bool {
    let comp = strongly_connected_components(g);
    g.vertex_count() > 0 && comp.iter().all(|&c| c == comp[0])
}


#[cfg(test)]
mod tests {
    use super::testgraphs::*;
    use super::*;
    use alloc::string::String;

    fn strs(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| Alphabet::binary().render(w)).collect()
    }

    #[test]
    fn language_examples() {
        assert_eq!(strs(&language_n(&full2(), 2)), ["00", "01", "10", "11"]);
        assert_eq!(strs(&language_n(&golden(), 2)), ["00", "01", "10"]);
        assert_eq!(language_n(&golden(), 5).len(), 13);
        assert_eq!(language_n(&golden(), 0), vec![Word::empty()]);
        let counts = language_counts(&golden(), 10);
        for n in 1..=10 {
            assert_eq!(counts[n - 1] as usize, language_n(&golden(), n).len());
        }
    }

    #[test]
    fn trim_removes_dead_ends() {
        let g = LabeledGraph::from_triples(
            Alphabet::binary(),
            4,
            &[(0, 0, 0), (0, 1, 1), (2, 0, 1), (3, 3, 1)],
        )
        .unwrap();
        let t = g.trim().unwrap();
        assert_eq!(t.vertex_count(), 2);
        assert!(t.is_trimmed());
        let dead = LabeledGraph::from_triples(Alphabet::binary(), 2, &[(0, 1, 0)]).unwrap();
        assert_eq!(dead.trim(), Err(Error::EmptyGraph));
    }

    #[test]
    fn right_resolving_detection() {
        assert!(golden().is_right_resolving());
        assert!(!even_nondet().is_right_resolving());
        let g = LabeledGraph::from_triples(
            Alphabet::binary(),
            3,
            &[(0, 1, 0), (0, 2, 0), (1, 0, 1), (2, 0, 1)],
        )
        .unwrap();
        assert!(!g.is_right_resolving());
    }

    #[test]
    fn classification_examples() {
        let c = classify_graph(&full2()).unwrap();
        assert!(c.is_transitive && c.is_mixing && c.period == 1);
        let c = classify_graph(&cycle(2)).unwrap();
        assert!(c.is_transitive && !c.is_mixing);
        assert_eq!(c.period, 2);
        let c = classify_graph(&cycle(6)).unwrap();
        assert_eq!(c.period, 6);
        let two = LabeledGraph::from_triples(
            Alphabet::binary(),
            3,
            &[(0, 0, 0), (0, 1, 1), (1, 2, 0), (2, 1, 0)],
        )
        .unwrap();
        let c = classify_graph(&two).unwrap();
        assert!(!c.is_transitive && !c.is_mixing);
        assert_eq!(c.period, 1);
    }

    #[test]
    fn point_acceptance() {
        let a = Alphabet::binary();
        let g = golden();
        assert!(g.accepts_point(&PeriodicPoint::parse(&a, "(010)^inf").unwrap()));
        assert!(!g.accepts_point(&PeriodicPoint::parse(&a, "(011)^inf").unwrap()));
        assert!(!g.accepts_point(&PeriodicPoint::parse(&a, "11(0)^inf").unwrap()));
        assert!(g.accepts_word(&Word::binary("0100101")));
        assert!(!g.accepts_word(&Word::binary("0110")));
    }
}
