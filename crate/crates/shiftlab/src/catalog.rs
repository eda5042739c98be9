//! Named shifts and points used by the experiment suites.

use shiftlab_core::bfree::{hereditary_orbit_graph, indicator_window, primes_up_to};
use shiftlab_core::sofic::{build_sft_graph, LabeledGraph, SftSpec};
use shiftlab_core::word::hamming_normalized;
use shiftlab_core::{Alphabet, ExactRational, PeriodicPoint, Result, Word};

pub fn full_shift() -> LabeledGraph {
    build_sft_graph(&SftSpec::new(Alphabet::binary(), []).expect("valid")).expect("nonempty")
}

/// No two consecutive 1s.
pub fn golden_mean() -> LabeledGraph {
    build_sft_graph(&SftSpec::new(Alphabet::binary(), [Word::binary("11")]).expect("valid"))
        .expect("nonempty")
}

/// Runs of 1s bounded by 0s have even length.
pub fn even_shift() -> LabeledGraph {
    LabeledGraph::from_triples(Alphabet::binary(), 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1)])
        .expect("valid")
}

/// Sequences vanishing on all even or on all odd coordinates: the hereditary
/// closure of the orbit of `(01)^inf`.
pub fn parity_shift() -> LabeledGraph {
    hereditary_orbit_graph(&PeriodicPoint::parse(&Alphabet::binary(), "(01)^inf").expect("valid"))
        .expect("valid")
}

/// `((10)^{k+1} 0^{2k+1})^inf`.
pub fn nondbar_point(k: usize) -> PeriodicPoint {
    let mut w = Vec::with_capacity(4 * k + 3);
    for _ in 0..=k {
        w.extend([1, 0]);
    }
    w.extend(std::iter::repeat_n(0, 2 * k + 1));
    PeriodicPoint::periodic(Word(w)).expect("nonempty")
}

/// `{2} ∪ {p^2 : p prime, p >= 13}`, generators `<= bound`.
pub fn sparse_bset(bound: u64) -> Vec<u64> {
    let mut g = vec![2];
    g.extend(
        primes_up_to(bound.isqrt())
            .into_iter()
            .filter(|&p| p >= 13)
            .map(|p| p * p),
    );
    g.retain(|&b| b <= bound);
    g
}

/// Upper bound on `sum_{b in B, b > 2} 1/b` for [`sparse_bset`]: the squares up
/// to `m^2` summed, plus `1/m` for all later squares.
pub fn sparse_tail_bound(m: u64) -> f64 {
    let head: f64 = primes_up_to(m)
        .into_iter()
        .filter(|&p| p >= 13)
        .map(|p| 1.0 / (p * p) as f64)
        .sum();
    head + 1.0 / m as f64
}

/// The witness `y = (u 0^{2n-1})^inf` with `u = eta_B[0, 2n)`.
#[derive(Clone, Debug)]
pub struct SparseWitness {
    pub n: usize,
    pub u: Word,
    /// `d_Ham((01)^n, u)`
    pub to_alternating: ExactRational,
    pub y: PeriodicPoint,
}

pub fn sparse_witness(n: usize) -> Result<SparseWitness> {
    let gens = sparse_bset(2 * n as u64);
    let u = Word(indicator_window(&gens, 0, 2 * n));
    let alternating: Word = (0..2 * n).map(|i| (i % 2) as u8).collect();
    let to_alternating = hamming_normalized(&alternating, &u)?;
    let mut period = u.0.clone();
    period.extend(std::iter::repeat_n(0, 2 * n - 1));
    let y = PeriodicPoint::periodic(Word(period))?;
    Ok(SparseWitness {
        n,
        u,
        to_alternating,
        y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nondbar_points() {
        let p = PeriodicPoint::parse(&Alphabet::binary(), "((10)(10)0 0 0)^inf").unwrap();
        assert_eq!(nondbar_point(1), p);
        assert_eq!(nondbar_point(3).period().len(), 15);
    }

    #[test]
    fn sparse_set() {
        assert_eq!(sparse_bset(300), vec![2, 169, 289]);
        let t = sparse_tail_bound(10_000);
        assert!(t < 1.0 / 32.0, "{t}");
    }
}
