use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Edge, LabeledGraph};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// Upper bound on de Bruijn vertices built for an SFT.
pub const SFT_VERTEX_CAP: u64 = 1 << 20;

/// A shift of finite type given by its forbidden words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SftSpec {
    alphabet: Alphabet,
    forbidden: BTreeSet<Word>,
}

impl SftSpec {
    pub fn new(alphabet: Alphabet, forbidden: impl IntoIterator<Item = Word>) -> Result<Self> {
        let forbidden: BTreeSet<Word> = forbidden.into_iter().collect();
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::EmptyWord);
            }
            if !alphabet.contains_word(w) {
                return Err(Error::SymbolOutOfRange(*w.iter().max().unwrap_or(&0)));
            }
        }
        Ok(SftSpec {
            alphabet,
            forbidden,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> impl Iterator<Item = &Word> {
        self.forbidden.iter()
    }

    /// Longest forbidden word minus one (0 for an empty list).
    pub fn memory(&self) -> usize {
        self.forbidden
            .iter()
            .map(|w| w.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// True if `w` ends with a forbidden word.
    fn ends_forbidden(&self, w: &[Symbol]) -> bool {
        let max = self.memory() + 1;
        (1..=max.min(w.len())).any(|l| {
            self.forbidden
                .contains(&Word::from_symbols(&w[w.len() - l..]))
        })
    }

    /// True if no factor of `w` is forbidden.
    pub fn allows(&self, w: &[Symbol]) -> bool {
        (1..=w.len()).all(|end| !self.ends_forbidden(&w[..end]))
    }
}

/// de Bruijn presentation: vertices are allowed `m`-words, edges allowed
/// `(m+1)`-words labelled by their first symbol, `m` the memory.
pub fn build_sft_graph(spec: &SftSpec) -> Result<LabeledGraph> {
    let m = spec.memory();
    let k = spec.alphabet.len();
    let vertices = allowed_words(spec, m)?;
    let index: BTreeMap<&[Symbol], usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for a in 0..k as Symbol {
            let mut w = v.clone();
            w.push(a);
            if spec.ends_forbidden(&w) {
                continue;
            }
            // w = v a is an allowed (m+1)-word; its label is w[0]
            let label = w[0];
            let j = index[&w[1..]];
            edges.push(Edge {
                src: i,
                dst: j,
                label,
            });
        }
    }
    let g = LabeledGraph::new(spec.alphabet.clone(), vertices.len().max(1), edges)?;
    g.trim().map_err(|_| Error::EmptyShift)
}

fn allowed_words(spec: &SftSpec, m: usize) -> Result<Vec<Vec<Symbol>>> {
    let k = spec.alphabet.len() as Symbol;
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Symbol>> = alloc::vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() == m {
            out.push(w);
            if out.len() as u64 > SFT_VERTEX_CAP {
                return Err(Error::ResourceLimit {
                    what: "SFT vertices",
                    limit: SFT_VERTEX_CAP,
                });
            }
            continue;
        }
        for a in (0..k).rev() {
            let mut x = w.clone();
            x.push(a);
            if !spec.ends_forbidden(&x) {
                stack.push(x);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyShift);
    }
    Ok(out)
}
