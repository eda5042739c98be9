//! Markov (Rauzy-graph) approximations and gluing of words through a shift
//! with a specification constant.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::shift::ShiftSpec;
use crate::sofic::{language_n, Edge, LabeledGraph, Stepper, VertexSet};
use crate::word::{PeriodicPoint, Symbol, Word};

/// Most passes over the cycle words before gluing gives up.
pub const GLUE_PASS_CAP: usize = 1 << 16;

/// Memoized `L_n` tables of a shift.
///
/// Fills are idempotent: a table, once computed, never changes.
#[derive(Clone, Debug)]
pub struct LanguageOracle {
    source: Option<ShiftSpec>,
    graph: LabeledGraph,
    cache: BTreeMap<usize, Vec<Word>>,
}

impl LanguageOracle {
    pub fn new(source: ShiftSpec) -> Result<Self> {
        let graph = source.presentation()?;
        Ok(LanguageOracle {
            source: Some(source),
            graph,
            cache: BTreeMap::new(),
        })
    }

    pub fn from_graph(g: &LabeledGraph) -> Result<Self> {
        Ok(LanguageOracle {
            source: None,
            graph: g.trim()?,
            cache: BTreeMap::new(),
        })
    }

    pub fn source(&self) -> Option<&ShiftSpec> {
        self.source.as_ref()
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    /// `L_n`, sorted.
    pub fn language(&mut self, n: usize) -> &[Word] {
        let g = &self.graph;
        self.cache.entry(n).or_insert_with(|| language_n(g, n))
    }

    pub fn contains(&mut self, w: &[Symbol]) -> bool {
        let n = w.len();
        let w = Word::from_symbols(w);
        self.language(n).binary_search(&w).is_ok()
    }
}

/// The `n`-th Rauzy graph: vertices `L_n`, one edge per word of `L_{n+1}` from
/// its prefix to its suffix, labelled by its first symbol.
pub fn rauzy_graph(oracle: &mut LanguageOracle, n: usize) -> Result<LabeledGraph> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let alphabet = oracle.graph().alphabet().clone();
    let vertices: Vec<Word> = oracle.language(n).to_vec();
    let edges_words: Vec<Word> = oracle.language(n + 1).to_vec();
    let mut edges = Vec::with_capacity(edges_words.len());
    for w in &edges_words {
        let src = vertices.binary_search(&Word::from_symbols(&w[..n]));
        let dst = vertices.binary_search(&Word::from_symbols(&w[1..]));
        match (src, dst) {
            (Ok(src), Ok(dst)) => edges.push(Edge {
                src,
                dst,
                label: w[0],
            }),
            _ => return Err(Error::InvalidGraph("language is not factorial".into())),
        }
    }
    LabeledGraph::new(alphabet, vertices.len(), edges)
}

/// Result of gluing words through a shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    /// the glued point, inside the shift
    pub point: PeriodicPoint,
    /// the plain concatenation of the input words
    pub concatenation: PeriodicPoint,
    /// `k / N` with `N` the shortest input word
    pub bound: ExactRational,
}

/// Glues `words` with bridges of length `k`: each word loses its last `k`
/// symbols and a bridge is inserted in their place. With `cycle` the list
/// repeats forever; otherwise the last word repeats.
pub fn glue_with_specification(
    g: &LabeledGraph,
    k: usize,
    words: &[Word],
    cycle: bool,
) -> Result<PeriodicPoint> {
    if words.is_empty() {
        return Err(Error::EmptySet);
    }
    let glued = if cycle {
        glue(g, k, &[], words)?
    } else {
        let (last, init) = words.split_last().expect("nonempty");
        glue(g, k, init, core::slice::from_ref(last))?
    };
    Ok(glued.point)
}

/// Glues `prefix` once and then `cycle` forever.
///
/// Bridges are the lexicographically smallest words `v` of length `k` for
/// which the next trimmed word can still be read. Whenever a pass over the
/// cycle words starts from a subset state seen before, the remainder repeats,
/// so the output is eventually periodic.
pub fn glue(g: &LabeledGraph, k: usize, prefix: &[Word], cycle: &[Word]) -> Result<Glued> {
    if cycle.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = g.trim()?;
    let alphabet = g.alphabet().clone();
    let mut shortest = usize::MAX;
    for w in prefix.iter().chain(cycle) {
        if w.len() < k + 1 {
            return Err(Error::InvalidParameter(alloc::format!(
                "word of length {} is shorter than k + 1 = {}",
                w.len(),
                k + 1
            )));
        }
        if !g.accepts_word(w) {
            return Err(Error::WordNotInLanguage(alphabet.render(w)));
        }
        shortest = shortest.min(w.len());
    }
    let st = g.stepper();
    let cut = |w: &Word| Word::from_symbols(&w[..w.len() - k]);
    let pre_u: Vec<Word> = prefix.iter().map(cut).collect();
    let cyc_u: Vec<Word> = cycle.iter().map(cut).collect();

    let mut out: Vec<Symbol> = Vec::new();
    let mut state = VertexSet::full(g.vertex_count());
    let append =
        |state: &mut VertexSet, out: &mut Vec<Symbol>, u: &Word, first: bool| -> Result<()> {
            if !first {
                let v = bridge(&st, state, k, u).ok_or(Error::NoBridge { k })?;
                *state = st.run(state, &v).expect("bridge is readable");
                out.extend_from_slice(&v);
            }
            *state = st.run(state, u).ok_or(Error::NoBridge { k })?;
            out.extend_from_slice(u);
            Ok(())
        };
    let mut first = true;
    for u in &pre_u {
        append(&mut state, &mut out, u, first)?;
        first = false;
    }
    append(&mut state, &mut out, &cyc_u[0], first)?;

    // pass i runs from just after the first cycle word of pass i through the
    // first cycle word of pass i + 1; it is a function of the state `seen[i]`
    let mut seen: Vec<VertexSet> = Vec::new();
    let mut starts: Vec<usize> = Vec::new();
    let repeat_from = loop {
        if let Some(j) = seen.iter().position(|s| *s == state) {
            break j;
        }
        if seen.len() >= GLUE_PASS_CAP {
            return Err(Error::ResourceLimit {
                what: "gluing passes",
                limit: GLUE_PASS_CAP as u64,
            });
        }
        seen.push(state.clone());
        starts.push(out.len());
        for u in cyc_u[1..].iter().chain(core::iter::once(&cyc_u[0])) {
            append(&mut state, &mut out, u, false)?;
        }
    };
    let split = starts[repeat_from];
    let point = PeriodicPoint::new(
        Word::from_symbols(&out[..split]),
        Word::from_symbols(&out[split..]),
    )?;

    let pre_concat: Vec<Symbol> = prefix.iter().flat_map(|w| w.iter().copied()).collect();
    let cyc_concat: Vec<Symbol> = cycle.iter().flat_map(|w| w.iter().copied()).collect();
    let concatenation = PeriodicPoint::new(Word(pre_concat), Word(cyc_concat))?;
    Ok(Glued {
        point,
        concatenation,
        bound: ExactRational::from_counts(k as u64, shortest as u64),
    })
}

/// Lexicographically smallest `v` with `|v| = k` such that `v u` can be read
/// from `state`.
fn bridge(st: &Stepper, state: &VertexSet, k: usize, u: &[Symbol]) -> Option<Vec<Symbol>> {
    let alpha = st.alphabet_len();
    let mut v: Vec<Symbol> = Vec::with_capacity(k);
    let mut states: Vec<VertexSet> = alloc::vec![state.clone()];
    let mut next: Vec<usize> = alloc::vec![0];
    loop {
        let depth = v.len();
        if depth == k {
            if st.run(&states[depth], u).is_some() {
                return Some(v);
            }
        } else if next[depth] < alpha {
            let a = next[depth] as Symbol;
            next[depth] += 1;
            let s = st.step(&states[depth], a);
            if !s.is_empty() {
                v.push(a);
                states.push(s);
                next.push(0);
            }
            continue;
        }
        // backtrack
        if depth == 0 {
            return None;
        }
        v.pop();
        states.pop();
        next.pop();
    }
}

/// Moves a periodic point of the `n`-th Markov approximation into the shift
/// presented by `target`: cut into `n`-blocks and glue them with bridges of
/// length `k`. The result is within `k / n` of `x`.
pub fn project_markov_point(
    x: &PeriodicPoint,
    oracle: &mut LanguageOracle,
    target: &LabeledGraph,
    k: usize,
    n: usize,
) -> Result<Glued> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let pre = x.preperiod().len();
    let per = x.period().len();
    for s in 0..pre + per {
        let w = x.subword(s, s + n + 1)?;
        if !oracle.contains(&w) {
            return Err(Error::NotInMarkovApproximation {
                order: n,
                window: oracle.graph().alphabet().render(&w),
            });
        }
    }
    if n < k + 1 {
        return Err(Error::InvalidOrder(n));
    }
    let lead = pre.div_ceil(n);
    let blocks_per_period = per / num_integer::gcd(per, n);
    let block = |j: usize| x.subword(n * j, n * (j + 1));
    let prefix: Vec<Word> = (0..lead).map(block).collect::<Result<_>>()?;
    let cycle: Vec<Word> = (lead..lead + blocks_per_period)
        .map(block)
        .collect::<Result<_>>()?;
    let glued = glue(target, k, &prefix, &cycle)?;
    debug_assert_eq!(&glued.concatenation, x);
    Ok(glued)
}
