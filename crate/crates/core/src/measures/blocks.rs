use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::MarkovMeasure;
use crate::error::{Error, Result};
use crate::word::{PeriodicPoint, Symbol, Word};

/// Longest block length accepted by [`block_distribution`].
pub const BLOCK_LENGTH_CAP: usize = 12;

/// Where block statistics come from.
#[derive(Clone, Copy, Debug)]
pub enum BlockSource<'a> {
    Markov(&'a MarkovMeasure),
    /// the invariant measure carried by the orbit of a periodic point
    Point(&'a PeriodicPoint),
}

/// Probabilities of the `k`-blocks of a measure. Words of mass zero are not
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDistribution {
    k: usize,
    probs: BTreeMap<Word, f64>,
}

impl BlockDistribution {
    pub fn new(k: usize, probs: BTreeMap<Word, f64>) -> Result<Self> {
        for (w, &p) in &probs {
            if w.len() != k {
                return Err(Error::LengthMismatch {
                    left: k,
                    right: w.len(),
                });
            }
            if !(p >= 0.0) {
                return Err(Error::InvalidMeasure(alloc::format!(
                    "negative block mass {p}"
                )));
            }
        }
        let total: f64 = probs.values().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidMeasure(alloc::format!(
                "block masses sum to {total}"
            )));
        }
        let probs = probs.into_iter().filter(|(_, p)| *p > 0.0).collect();
        Ok(BlockDistribution { k, probs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn probs(&self) -> &BTreeMap<Word, f64> {
        &self.probs
    }

    pub fn get(&self, w: &[Symbol]) -> f64 {
        self.probs
            .get(&Word::from_symbols(w))
            .copied()
            .unwrap_or(0.0)
    }

    /// Largest gap between the `(k-1)`-marginals obtained by dropping the
    /// last and the first symbol.
    pub fn marginal_residual(&self) -> f64 {
        if self.k < 2 {
            return 0.0;
        }
        let mut left: BTreeMap<&[Symbol], f64> = BTreeMap::new();
        let mut right: BTreeMap<&[Symbol], f64> = BTreeMap::new();
        for (w, &p) in &self.probs {
            *left.entry(&w[..self.k - 1]).or_default() += p;
            *right.entry(&w[1..]).or_default() += p;
        }
        let mut worst: f64 = 0.0;
        for (w, &p) in &left {
            worst = worst.max((p - right.get(w).copied().unwrap_or(0.0)).abs());
        }
        for (w, &p) in &right {
            worst = worst.max((p - left.get(w).copied().unwrap_or(0.0)).abs());
        }
        worst
    }

    /// Total-variation distance `(1/2) sum |a(w) - b(w)|`.
    pub fn total_variation(&self, other: &BlockDistribution) -> Result<f64> {
        if self.k != other.k {
            return Err(Error::BlockLengthMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut sum = 0.0;
        for (w, &p) in &self.probs {
            sum += (p - other.probs.get(w).copied().unwrap_or(0.0)).abs();
        }
        for (w, &q) in &other.probs {
            if !self.probs.contains_key(w) {
                sum += q;
            }
        }
        Ok(sum / 2.0)
    }

    /// `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, other: &BlockDistribution, alpha: f64) -> Result<BlockDistribution> {
        if self.k != other.k {
            return Err(Error::BlockLengthMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut probs: BTreeMap<Word, f64> = BTreeMap::new();
        for (w, &p) in &self.probs {
            *probs.entry(w.clone()).or_default() += alpha * p;
        }
        for (w, &q) in &other.probs {
            *probs.entry(w.clone()).or_default() += (1.0 - alpha) * q;
        }
        probs.retain(|_, p| *p > 0.0);
        Ok(BlockDistribution { k: self.k, probs })
    }
}

/// `k`-block distribution of a Markov measure (exact sums over labelled
/// paths) or of the orbit of a periodic point (window frequencies over one
/// period).
pub fn block_distribution(src: BlockSource<'_>, k: usize) -> Result<BlockDistribution> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "block length must be at least 1".into(),
        ));
    }
    if k > BLOCK_LENGTH_CAP {
        return Err(Error::ResourceLimit {
            what: "block length",
            limit: BLOCK_LENGTH_CAP as u64,
        });
    }
    let probs = match src {
        BlockSource::Point(x) => point_blocks(x, k),
        BlockSource::Markov(m) => markov_blocks(m, k),
    };
    Ok(BlockDistribution { k, probs })
}

fn point_blocks(x: &PeriodicPoint, k: usize) -> BTreeMap<Word, f64> {
    let pre = x.preperiod().len();
    let per = x.period().len();
    let mut counts: BTreeMap<Word, u64> = BTreeMap::new();
    for s in pre..pre + per {
        let w: Word = (s..s + k).map(|i| x.symbol_at(i)).collect();
        *counts.entry(w).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(w, c)| (w, c as f64 / per as f64))
        .collect()
}

fn markov_blocks(m: &MarkovMeasure, k: usize) -> BTreeMap<Word, f64> {
    let g = m.graph();
    let n = g.vertex_count();
    let alpha = g.alphabet().len();
    // by_label[v][a] = [(dst, prob)]
    let mut by_label = vec![vec![Vec::new(); alpha]; n];
    for (e, &p) in g.edges().iter().zip(m.edge_probs()) {
        if p > 0.0 {
            by_label[e.src][e.label as usize].push((e.dst, p));
        }
    }
    let mut out = BTreeMap::new();
    let mut word: Vec<Symbol> = Vec::with_capacity(k);
    extend(&by_label, m.stationary().to_vec(), k, &mut word, &mut out);
    out
}

fn extend(
    by_label: &[Vec<Vec<(usize, f64)>>],
    mass: Vec<f64>,
    k: usize,
    word: &mut Vec<Symbol>,
    out: &mut BTreeMap<Word, f64>,
) {
    if word.len() == k {
        let total: f64 = mass.iter().sum();
        if total > 0.0 {
            out.insert(Word(word.clone()), total);
        }
        return;
    }
    let alpha = by_label.first().map_or(0, Vec::len);
    for a in 0..alpha {
        let mut next = vec![0.0; mass.len()];
        let mut any = false;
        for (v, &p) in mass.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            for &(t, q) in &by_label[v][a] {
                next[t] += p * q;
                any = true;
            }
        }
        if any {
            word.push(a as Symbol);
            extend(by_label, next, k, word, out);
            word.pop();
        }
    }
}
