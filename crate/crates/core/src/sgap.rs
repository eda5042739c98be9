//! S-gap shifts: 0/1 sequences whose runs of 0s between consecutive 1s have
//! lengths in `S`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sofic::{Edge, LabeledGraph};
use crate::word::{mismatch_density, Alphabet, PeriodicPoint, Symbol, Word};

/// Declared bound on successive gap differences of an infinite set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MaxDifference {
    Bounded(u64),
    Unbounded,
}

/// Facts about an infinite gap set that cannot be read off a finite prefix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct StreamMetadata {
    pub declared_gcd: Option<u64>,
    pub declared_max_difference: Option<MaxDifference>,
}

/// A gap set. For infinite sets `gaps` is the known prefix and `stream`
/// carries the declared metadata.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SGapSet {
    gaps: Vec<u64>,
    allow_zero: bool,
    stream: Option<StreamMetadata>,
}

impl SGapSet {
    pub fn new(gaps: Vec<u64>) -> Result<Self> {
        Self::build(gaps, false, None)
    }

    /// Also admits the gap 0 (adjacent 1s).
    pub fn with_zero(gaps: Vec<u64>) -> Result<Self> {
        Self::build(gaps, true, None)
    }

    pub fn stream(prefix: Vec<u64>, meta: StreamMetadata) -> Result<Self> {
        Self::build(prefix, false, Some(meta))
    }

    fn build(mut gaps: Vec<u64>, allow_zero: bool, stream: Option<StreamMetadata>) -> Result<Self> {
        gaps.sort_unstable();
        gaps.dedup();
        if !allow_zero && gaps.first() == Some(&0) {
            return Err(Error::InvalidParameter(
                "gap 0 needs the zero-gap constructor".into(),
            ));
        }
        Ok(SGapSet {
            gaps,
            allow_zero,
            stream,
        })
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn is_finite(&self) -> bool {
        self.stream.is_none()
    }

    pub fn contains(&self, t: u64) -> bool {
        self.gaps.binary_search(&t).is_ok()
    }

    /// `S[k]`: the `k` smallest gaps.
    pub fn truncate(&self, k: usize) -> SGapSet {
        SGapSet {
            gaps: self.gaps[..k.min(self.gaps.len())].to_vec(),
            allow_zero: self.allow_zero,
            stream: None,
        }
    }

    pub fn max(&self) -> Option<u64> {
        self.gaps.last().copied()
    }
}

/// Vertices `0..=max S`; `i -> i+1` labelled 0 and `i -> 0` labelled 1 for `i in S`.
pub fn sgap_graph(s: &SGapSet) -> Result<LabeledGraph> {
    let max = s.max().ok_or(Error::EmptySet)?;
    let n = max as usize + 1;
    let mut edges = Vec::with_capacity(n + s.gaps.len());
    for i in 0..max as usize {
        edges.push(Edge {
            src: i,
            dst: i + 1,
            label: 0,
        });
    }
    for &g in &s.gaps {
        edges.push(Edge {
            src: g as usize,
            dst: 0,
            label: 1,
        });
    }
    LabeledGraph::new(Alphabet::binary(), n, edges)?.trim()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SGapClass {
    pub mixing: bool,
    pub specification: bool,
}

/// Mixing iff `gcd{s+1 : s in S} = 1`; a mixing S-gap shift has specification
/// iff successive gaps differ by a bounded amount, which is automatic for
/// finite `S`.
pub fn sgap_classify(s: &SGapSet) -> Result<SGapClass> {
    match &s.stream {
        None => {
            if s.gaps.is_empty() {
                return Err(Error::EmptySet);
            }
            let g = s
                .gaps
                .iter()
                .fold(0, |acc, &x| num_integer::gcd(acc, x + 1));
            let mixing = g == 1;
            Ok(SGapClass {
                mixing,
                specification: mixing,
            })
        }
        Some(meta) => {
            let g = meta
                .declared_gcd
                .ok_or(Error::MissingMetadata("declared_gcd"))?;
            let d = meta
                .declared_max_difference
                .ok_or(Error::MissingMetadata("declared_max_difference"))?;
            let mixing = g == 1;
            Ok(SGapClass {
                mixing,
                specification: mixing && matches!(d, MaxDifference::Bounded(_)),
            })
        }
    }
}

/// Smallest `L >= 1` such that every `l >= L` is a nonnegative integer
/// combination of `parts`.
pub fn frobenius_l(parts: &[u64]) -> Result<u64> {
    let g = parts.iter().fold(0, |acc, &x| num_integer::gcd(acc, x));
    if parts.is_empty() {
        return Err(Error::EmptySet);
    }
    if g != 1 {
        return Err(Error::GcdNotOne(g));
    }
    let min = *parts.iter().min().expect("nonempty");
    // once `min` consecutive values are representable, all larger ones are
    let mut rep = vec![true];
    let mut run = 0u64;
    let mut l = 0u64;
    loop {
        if l > 0 {
            let r = parts.iter().any(|&p| p <= l && rep[(l - p) as usize]);
            rep.push(r);
            if r {
                run += 1;
            } else {
                run = 0;
            }
        }
        if run >= min {
            return Ok((l + 1 - run).max(1));
        }
        l += 1;
    }
}

/// A representation of `l` as a sum of `parts` with the fewest summands,
/// listed in nonincreasing order.
pub fn fewest_parts(parts: &[u64], l: u64) -> Option<Vec<u64>> {
    let l = l as usize;
    let mut best: Vec<Option<(u32, u64)>> = vec![None; l + 1];
    best[0] = Some((0, 0));
    for x in 1..=l {
        for &p in parts {
            let p = p as usize;
            if p <= x {
                if let Some((c, _)) = best[x - p] {
                    let cand = (c + 1, p as u64);
                    // prefer fewer parts, then larger parts
                    if best[x].is_none_or(|(bc, bp)| cand.0 < bc || (cand.0 == bc && cand.1 > bp)) {
                        best[x] = Some(cand);
                    }
                }
            }
        }
    }
    best[l]?;
    let mut out = Vec::new();
    let mut x = l;
    while x > 0 {
        let (_, p) = best[x].expect("reachable");
        out.push(p);
        x -= p as usize;
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Some(out)
}

/// Per-gap outcome of the surgery.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GapSurgery {
    pub gap: u64,
    pub replaced: bool,
    /// the word replacing `0^t 1`; equal to it when not replaced
    pub block: Word,
    /// `d_Ham(0^t, v)`
    pub realized: ExactRational,
    /// `(t/(s_M+1) + L + s_M) / t`, or 0 when not replaced
    pub bound: ExactRational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InnerApprox {
    pub point: PeriodicPoint,
    pub gaps: Vec<GapSurgery>,
    /// largest realized per-gap distance
    pub sup_realized: ExactRational,
    /// largest per-gap bound
    pub sup_bound: ExactRational,
    /// mismatch density between the input point and the output point
    pub density: ExactRational,
    pub frobenius_l: u64,
    pub s_max: u64,
}

/// The point `(0^{t_1} 1 0^{t_2} 1 ...)^inf` of gap sequence `ts`.
pub fn gap_point(ts: &[u64]) -> Result<PeriodicPoint> {
    if ts.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut w: Vec<Symbol> = Vec::new();
    for &t in ts {
        w.extend(core::iter::repeat_n(0, t as usize));
        w.push(1);
    }
    PeriodicPoint::periodic(Word(w))
}

/// Rewrites every gap `t` outside `S[k]` as `v 1 = (0^{s_M} 1)^p 0^{q_1} 1 ... 0^{q_r} 1`
/// with all `q_i` in `S[k]`, so the result lies in the shift of `S[k]`.
///
/// With `L` the Frobenius length of `{s+1 : s in S[k]}`, the tail length `l`
/// is the value in `[L, L + s_M]` with `(s_M + 1) | (t + 1 - l)`, or `t + 1`
/// when that exceeds `t + 1`.
pub fn inner_approx_point(ts: &[u64], s: &SGapSet, k: usize) -> Result<InnerApprox> {
    for &t in ts {
        if !s.contains(t) {
            return Err(Error::GapNotInSet(t));
        }
    }
    let sk = s.truncate(k);
    if sk.gaps.is_empty() {
        return Err(Error::EmptySet);
    }
    if !sgap_classify(&sk)?.mixing {
        return Err(Error::NotMixing);
    }
    let s_max = sk.max().expect("nonempty");
    let parts: Vec<u64> = sk.gaps.iter().map(|&x| x + 1).collect();
    let l_frob = frobenius_l(&parts)?;
    let mut out_gaps = Vec::with_capacity(ts.len());
    let mut word: Vec<Symbol> = Vec::new();
    for &t in ts {
        let surgery = if sk.contains(t) {
            let mut block = vec![0; t as usize];
            block.push(1);
            GapSurgery {
                gap: t,
                replaced: false,
                block: Word(block),
                realized: ExactRational::zero(),
                bound: ExactRational::zero(),
            }
        } else {
            cut_gap(t, &parts, s_max, l_frob)?
        };
        word.extend_from_slice(&surgery.block);
        out_gaps.push(surgery);
    }
    let point = PeriodicPoint::periodic(Word(word))?;
    let density = mismatch_density(&gap_point(ts)?, &point);
    let sup_realized = out_gaps
        .iter()
        .map(|g| g.realized.clone())
        .max()
        .unwrap_or_default();
    let sup_bound = out_gaps
        .iter()
        .map(|g| g.bound.clone())
        .max()
        .unwrap_or_default();
    Ok(InnerApprox {
        point,
        gaps: out_gaps,
        sup_realized,
        sup_bound,
        density,
        frobenius_l: l_frob,
        s_max,
    })
}

fn cut_gap(t: u64, parts: &[u64], s_max: u64, l_frob: u64) -> Result<GapSurgery> {
    if t == 0 || t + 1 < l_frob {
        return Err(Error::GapTooShort {
            gap: t,
            needed: l_frob.saturating_sub(1).max(1),
        });
    }
    let m = s_max + 1;
    let target = t + 1;
    let l = (l_frob..l_frob + m)
        .find(|&l| l % m == target % m)
        .expect("window covers all residues");
    let l = if l <= target { l } else { target };
    let p = (target - l) / m;
    let tail = fewest_parts(parts, l).ok_or(Error::GapTooShort {
        gap: t,
        needed: l_frob,
    })?;
    let mut block: Vec<Symbol> = Vec::with_capacity(target as usize);
    for _ in 0..p {
        block.extend(core::iter::repeat_n(0, s_max as usize));
        block.push(1);
    }
    for &q in &tail {
        block.extend(core::iter::repeat_n(0, q as usize - 1));
        block.push(1);
    }
    debug_assert_eq!(block.len() as u64, target);
    let ones_in_v = block[..t as usize].iter().filter(|&&b| b == 1).count() as u64;
    let realized = ExactRational::from_counts(ones_in_v, t);
    let bound = (ExactRational::from_counts(t, m)
        + ExactRational::from_integer((l_frob + s_max) as i64))
        / ExactRational::from_integer(t as i64);
    Ok(GapSurgery {
        gap: t,
        replaced: true,
        block: Word(block),
        realized,
        bound,
    })
}
