use alloc::vec;
use alloc::vec::Vec;

/// Fixed-capacity bitset of graph vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexSet {
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(v);
        s
    }

    pub fn insert(&mut self, v: usize) {
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

/// Keeps only the inclusion-minimal sets.
pub fn minimal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    let mut out: Vec<VertexSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| m.is_subset(&s)) {
            out.push(s);
        }
    }
    out
}
