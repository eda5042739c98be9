//! B-free integers: sieves, densities, Davenport–Erdős deficiencies and the
//! sofic presentation of hereditary closures of periodic orbits.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sofic::{Edge, LabeledGraph};
use crate::word::{Alphabet, PeriodicPoint, Symbol, Word};

/// Largest lcm accepted by exact density computations.
pub const LCM_CAP: u64 = 1 << 63;
/// Largest generator count for inclusion–exclusion.
pub const INCLUSION_EXCLUSION_CAP: usize = 26;

/// A finite set of generators, sorted, distinct and at least 2.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BSet {
    generators: Vec<u64>,
}

impl BSet {
    pub fn new(mut generators: Vec<u64>) -> Result<Self> {
        generators.sort_unstable();
        generators.dedup();
        if generators.first().is_some_and(|&b| b < 2) {
            return Err(Error::InvalidParameter(
                "generators must be at least 2".into(),
            ));
        }
        Ok(BSet { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The `k` smallest generators.
    pub fn truncate(&self, k: usize) -> BSet {
        BSet {
            generators: self.generators[..k.min(self.len())].to_vec(),
        }
    }

    pub fn without(&self, b: u64) -> BSet {
        BSet {
            generators: self
                .generators
                .iter()
                .copied()
                .filter(|&x| x != b)
                .collect(),
        }
    }

    /// lcm of all generators, or a resource error above [`LCM_CAP`].
    pub fn lcm(&self) -> Result<u64> {
        self.generators
            .iter()
            .try_fold(1u64, |acc, &b| checked_lcm(acc, b))
    }
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    let g = num_integer::gcd(a, b);
    (a / g)
        .checked_mul(b)
        .filter(|&l| l <= LCM_CAP)
        .ok_or(Error::ResourceLimit {
            what: "lcm of generators",
            limit: LCM_CAP,
        })
}

/// Lazily enumerated, strictly increasing generator sequences.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GeneratorStream {
    /// the complete (finite) set
    Explicit(Vec<u64>),
    /// the generators are known only up to `complete_up_to`
    Prefix {
        generators: Vec<u64>,
        complete_up_to: u64,
    },
    /// `{p^2 : p prime}`
    SquaresOfPrimes,
    /// `{start + i step : i >= 0}`
    Progression {
        start: u64,
        step: u64,
    },
    Union(Vec<GeneratorStream>),
}

impl GeneratorStream {
    /// All generators `<= bound`, sorted and distinct.
    pub fn up_to(&self, bound: u64) -> Result<Vec<u64>> {
        let mut out = match self {
            GeneratorStream::Explicit(v) => v.iter().copied().filter(|&b| b <= bound).collect(),
            GeneratorStream::Prefix {
                generators,
                complete_up_to,
            } => {
                if bound > *complete_up_to {
                    return Err(Error::StreamExhausted(bound));
                }
                generators.iter().copied().filter(|&b| b <= bound).collect()
            }
            GeneratorStream::SquaresOfPrimes => primes_up_to(num_integer::sqrt(bound))
                .into_iter()
                .map(|p| p * p)
                .collect(),
            GeneratorStream::Progression { start, step } => {
                if *start < 2 || *step == 0 {
                    return Err(Error::InvalidParameter(
                        "progression needs start >= 2, step >= 1".into(),
                    ));
                }
                let mut v = Vec::new();
                let mut x = *start;
                while x <= bound {
                    v.push(x);
                    x = match x.checked_add(*step) {
                        Some(y) => y,
                        None => break,
                    };
                }
                v
            }
            GeneratorStream::Union(parts) => {
                let mut v = Vec::new();
                for p in parts {
                    v.extend(p.up_to(bound)?);
                }
                v
            }
        };
        out.sort_unstable();
        out.dedup();
        if out.first().is_some_and(|&b| b < 2) {
            return Err(Error::InvalidParameter(
                "generators must be at least 2".into(),
            ));
        }
        Ok(out)
    }

    /// The `k` smallest generators (fewer if the set is finite and smaller).
    pub fn first(&self, k: usize) -> Result<Vec<u64>> {
        if let GeneratorStream::Prefix { complete_up_to, .. } = self {
            let v = self.up_to(*complete_up_to)?;
            if v.len() >= k {
                return Ok(v[..k].to_vec());
            }
            return Err(Error::StreamExhausted(*complete_up_to));
        }
        let mut bound = 64u64;
        loop {
            let v = self.up_to(bound)?;
            if v.len() >= k {
                return Ok(v[..k].to_vec());
            }
            if self.is_finite() && bound >= self.finite_max() {
                return Ok(v);
            }
            bound = bound.checked_mul(4).ok_or(Error::ResourceLimit {
                what: "generator bound",
                limit: u64::MAX,
            })?;
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            GeneratorStream::Explicit(_) => true,
            GeneratorStream::Union(parts) => parts.iter().all(|p| p.is_finite()),
            _ => false,
        }
    }

    fn finite_max(&self) -> u64 {
        match self {
            GeneratorStream::Explicit(v) => v.iter().copied().max().unwrap_or(0),
            GeneratorStream::Union(parts) => {
                parts.iter().map(|p| p.finite_max()).max().unwrap_or(0)
            }
            _ => u64::MAX,
        }
    }
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `eta_B` on `[0, n)`: 1 exactly at integers divisible by no generator.
pub fn bfree_indicator(b: &BSet, n: usize) -> Word {
    Word(indicator_window(b.generators(), 0, n))
}

/// `eta_B` on `[start, start + len)` from an explicit generator list.
pub fn indicator_window(generators: &[u64], start: u64, len: usize) -> Vec<Symbol> {
    let mut out = vec![1 as Symbol; len];
    for &b in generators {
        let first = start.div_ceil(b) * b;
        let mut x = first;
        while x < start + len as u64 {
            out[(x - start) as usize] = 0;
            x += b;
        }
    }
    out
}

/// Natural density of the union of `b N_0` over the generators, by
/// inclusion–exclusion over subsets.
pub fn density_union(b: &BSet) -> Result<ExactRational> {
    b.lcm()?;
    if b.len() > INCLUSION_EXCLUSION_CAP {
        return Err(Error::ResourceLimit {
            what: "generators for inclusion-exclusion",
            limit: INCLUSION_EXCLUSION_CAP as u64,
        });
    }
    let gens = b.generators();
    let mut sum = BigRational::zero();
    // depth-first over subsets, carrying the running lcm and sign
    let mut stack: Vec<(usize, u64, bool)> = vec![(0, 1, false)];
    while let Some((next, l, odd)) = stack.pop() {
        for i in next..gens.len() {
            let l2 = checked_lcm(l, gens[i])?;
            let odd2 = !odd;
            let term = BigRational::new(BigInt::one(), BigInt::from(l2));
            if odd2 {
                sum += term;
            } else {
                sum -= term;
            }
            stack.push((i + 1, l2, odd2));
        }
    }
    Ok(sum.into())
}

/// The same density by counting multiples over one period `lcm(B)`.
pub fn density_union_direct(b: &BSet, max_period: u64) -> Result<ExactRational> {
    let l = b.lcm()?;
    if l > max_period {
        return Err(Error::ResourceLimit {
            what: "period for direct count",
            limit: max_period,
        });
    }
    let eta = indicator_window(b.generators(), 0, l as usize);
    let hits = eta.iter().filter(|&&s| s == 0).count();
    Ok(ExactRational::from_counts(hits as u64, l))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BClass {
    pub primitive: bool,
    pub taut: bool,
}

/// Primitive: no generator divides another. Taut: dropping any generator
/// strictly lowers the density of the union of multiples.
pub fn bset_classify(b: &BSet) -> Result<BClass> {
    let g = b.generators();
    let primitive = (0..g.len()).all(|i| (i + 1..g.len()).all(|j| !g[j].is_multiple_of(g[i])));
    let full = density_union(b)?;
    let mut taut = true;
    for &x in g {
        if density_union(&b.without(x))? >= full {
            taut = false;
            break;
        }
    }
    Ok(BClass { primitive, taut })
}

/// One row of a Davenport–Erdős table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeRow {
    pub k: usize,
    /// `|(F_{B|k} \ F_B) ∩ [0, N)|`
    pub count: u64,
    /// `count / N`
    pub deficiency: ExactRational,
    /// `sum of 1/b over generators b_k < b <= N`
    pub tail_bound: ExactRational,
    /// `k / N`
    pub boundary: ExactRational,
}

/// Deficiency of the truncation `B|k` on the window `[0, n)`.
pub fn de_deficiency(stream: &GeneratorStream, k: usize, n: u64) -> Result<DeRow> {
    Ok(de_table(stream, &[k], n)?.remove(0))
}

/// Deficiency rows for several truncations from a single sieve.
///
/// Each integer below `n` is tagged with the index of the smallest generator
/// dividing it; it lies in `F_{B|k} \ F_B` exactly when that index is `>= k`.
pub fn de_table(stream: &GeneratorStream, ks: &[usize], n: u64) -> Result<Vec<DeRow>> {
    if n == 0 {
        return Err(Error::InvalidParameter("horizon must be positive".into()));
    }
    if ks.contains(&0) {
        return Err(Error::InvalidOrder(0));
    }
    let gens = stream.up_to(n)?;
    let mut first_div = vec![u32::MAX; n as usize];
    for (idx, &b) in gens.iter().enumerate() {
        let mut x = 0u64;
        while x < n {
            let slot = &mut first_div[x as usize];
            if *slot == u32::MAX {
                *slot = idx as u32;
            }
            x += b;
        }
    }
    // histogram of the smallest divisor index
    let mut hist = vec![0u64; gens.len() + 1];
    for &d in &first_div {
        if d != u32::MAX {
            hist[d as usize] += 1;
        }
    }
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let count: u64 = hist.iter().skip(k).sum();
        let mut tail = BigRational::zero();
        for &b in gens.iter().skip(k) {
            tail += BigRational::new(BigInt::one(), BigInt::from(b));
        }
        out.push(DeRow {
            k,
            count,
            deficiency: ExactRational::from_counts(count, n),
            tail_bound: tail.into(),
            boundary: ExactRational::from_counts(k as u64, n),
        });
    }
    Ok(out)
}

/// Presentation of the hereditary closure of the orbit of a purely periodic
/// 0/1 point: a cycle of `0`-edges, with a parallel `1`-edge wherever the
/// point has a 1.
pub fn hereditary_orbit_graph(x: &PeriodicPoint) -> Result<LabeledGraph> {
    if !x.is_purely_periodic() {
        return Err(Error::NonemptyPreperiod);
    }
    let p = x.period();
    if let Some(&s) = p.iter().find(|&&s| s > 1) {
        return Err(Error::SymbolOutOfRange(s));
    }
    let n = p.len();
    let mut edges = Vec::with_capacity(2 * n);
    for (j, &s) in p.iter().enumerate() {
        edges.push(Edge {
            src: j,
            dst: (j + 1) % n,
            label: 0,
        });
        if s == 1 {
            edges.push(Edge {
                src: j,
                dst: (j + 1) % n,
                label: 1,
            });
        }
    }
    LabeledGraph::new(Alphabet::binary(), n, edges)
}

/// Presentation of the hereditary closure of the orbit of `eta_B` for finite `B`.
pub fn bfree_graph(b: &BSet, max_period: u64) -> Result<LabeledGraph> {
    let l = b.lcm()?;
    if l > max_period {
        return Err(Error::ResourceLimit {
            what: "period of eta_B",
            limit: max_period,
        });
    }
    let eta = bfree_indicator(b, l as usize);
    hereditary_orbit_graph(&PeriodicPoint::periodic(eta)?)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Projection {
    pub y: Word,
    /// `|{i < N : x_i != y_i}|`
    pub mismatches: u64,
    /// `|{i < N : eta_{B|k}(i+m) != eta_B(i+m)}|`
    pub deficiency_count: u64,
}

/// Projects a word dominated by `sigma^m(eta_{B|k})` to one dominated by
/// `sigma^m(eta_B)`, zeroing the coordinates where the two indicators differ.
pub fn dominance_projection(
    x: &[Symbol],
    stream: &GeneratorStream,
    k: usize,
    m: u64,
) -> Result<Projection> {
    let n = x.len();
    let end = m + n as u64;
    let all = stream.up_to(end.max(2))?;
    let trunc = stream.first(k)?;
    let eta_k = indicator_window(&trunc, m, n);
    let eta = indicator_window(&all, m, n);
    for i in 0..n {
        if x[i] > eta_k[i] {
            return Err(Error::DominanceViolated { index: i });
        }
    }
    let mut y = Vec::with_capacity(n);
    let mut mismatches = 0;
    let mut deficiency_count = 0;
    for i in 0..n {
        let same = eta_k[i] == eta[i];
        if !same {
            deficiency_count += 1;
        }
        let yi = if same { x[i] } else { 0 };
        if yi != x[i] {
            mismatches += 1;
        }
        y.push(yi);
    }
    Ok(Projection {
        y: Word(y),
        mismatches,
        deficiency_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sofic::{classify_graph, language_n};
    use alloc::string::String;

    fn bset(v: &[u64]) -> BSet {
        BSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn indicator_examples() {
        let render = |w: &Word| Alphabet::binary().render(w);
        assert_eq!(render(&bfree_indicator(&bset(&[2]), 6)), "010101");
        assert_eq!(render(&bfree_indicator(&bset(&[]), 4)), "1111");
        let w = bfree_indicator(&bset(&[4, 9, 25]), 30);
        for i in 0..30u64 {
            let free = [4, 9, 25].iter().all(|b| i % b != 0);
            assert_eq!(w[i as usize] == 1, free, "{i}");
        }
        assert!(BSet::new(vec![1, 3]).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(
            density_union(&bset(&[2])).unwrap(),
            ExactRational::new(1, 2)
        );
        assert_eq!(
            density_union(&bset(&[2, 3])).unwrap(),
            ExactRational::new(2, 3)
        );
        assert_eq!(
            density_union(&bset(&[4, 6])).unwrap(),
            ExactRational::new(1, 3)
        );
        for b in [
            &[2u64, 3][..],
            &[4, 6],
            &[4, 9, 25],
            &[6, 10, 15],
            &[3, 5, 7, 11],
        ] {
            let b = bset(b);
            assert_eq!(
                density_union(&b).unwrap(),
                density_union_direct(&b, 1 << 20).unwrap()
            );
        }
        let huge = BSet::new(primes_up_to(200)).unwrap();
        assert!(density_union(&huge).unwrap_err().is_resource());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            bset_classify(&bset(&[2, 4])).unwrap(),
            BClass {
                primitive: false,
                taut: false
            }
        );
        assert_eq!(
            bset_classify(&bset(&[2, 3])).unwrap(),
            BClass {
                primitive: true,
                taut: true
            }
        );
        assert_eq!(
            bset_classify(&bset(&[4, 6])).unwrap(),
            BClass {
                primitive: true,
                taut: true
            }
        );
    }

    #[test]
    fn streams() {
        let sq = GeneratorStream::SquaresOfPrimes;
        assert_eq!(sq.up_to(100).unwrap(), vec![4, 9, 25, 49]);
        assert_eq!(sq.first(5).unwrap(), vec![4, 9, 25, 49, 121]);
        let ap = GeneratorStream::Progression { start: 3, step: 4 };
        assert_eq!(ap.up_to(20).unwrap(), vec![3, 7, 11, 15, 19]);
        let u = GeneratorStream::Union(vec![GeneratorStream::Explicit(vec![2]), ap]);
        assert_eq!(u.first(3).unwrap(), vec![2, 3, 7]);
        let pre = GeneratorStream::Prefix {
            generators: vec![4, 9],
            complete_up_to: 20,
        };
        assert_eq!(pre.up_to(30), Err(Error::StreamExhausted(30)));
        assert_eq!(
            GeneratorStream::Explicit(vec![5, 7]).first(9).unwrap(),
            vec![5, 7]
        );
    }

    /// Integers below `n` free of the first `k` prime squares but divisible by a
    /// larger one, by trial division.
    fn brute_deficiency(k: usize, n: u64) -> u64 {
        let sq: Vec<u64> = primes_up_to(1000).into_iter().map(|p| p * p).collect();
        (0..n)
            .filter(|&i| {
                sq[..k].iter().all(|b| i % b != 0)
                    && sq[k..].iter().any(|&b| b <= i.max(1) && i % b == 0)
            })
            .count() as u64
    }

    #[test]
    fn deficiency_matches_double_sieve() {
        let row = de_deficiency(&GeneratorStream::SquaresOfPrimes, 3, 10_000).unwrap();
        assert_eq!(row.count, brute_deficiency(3, 10_000));
        assert!(row.count > 0);
        assert!(row.deficiency <= row.tail_bound);
    }

    #[test]
    fn deficiency_zero_when_truncation_complete() {
        let s = GeneratorStream::Explicit(vec![4, 9, 25]);
        assert!(de_deficiency(&s, 3, 1000).unwrap().deficiency.is_zero());
        let row = de_deficiency(&GeneratorStream::SquaresOfPrimes, 30, 500).unwrap();
        assert!(row.deficiency.is_zero());
    }

    #[test]
    fn deficiency_table_monotone_and_bounded() {
        let ks: Vec<usize> = (1..=8).collect();
        let rows = de_table(&GeneratorStream::SquaresOfPrimes, &ks, 20_000).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].deficiency <= w[0].deficiency);
        }
        for r in &rows {
            assert!(r.deficiency <= r.tail_bound);
            assert_eq!(r.count, brute_deficiency(r.k, 20_000));
        }
    }

    #[test]
    fn exhaustion_reported() {
        let pre = GeneratorStream::Prefix {
            generators: vec![4, 9, 25],
            complete_up_to: 100,
        };
        assert_eq!(
            de_deficiency(&pre, 1, 1000),
            Err(Error::StreamExhausted(1000))
        );
    }

    fn pt(s: &str) -> PeriodicPoint {
        PeriodicPoint::parse(&Alphabet::binary(), s).unwrap()
    }

    #[test]
    fn hereditary_graph_examples() {
        let g = hereditary_orbit_graph(&pt("(01)^inf")).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (2, 3));
        let l2: Vec<String> = language_n(&g, 2)
            .iter()
            .map(|w| Alphabet::binary().render(w))
            .collect();
        assert_eq!(l2, ["00", "01", "10"]);
        let c = classify_graph(&g).unwrap();
        assert!(c.is_transitive && !c.is_mixing);

        let g = hereditary_orbit_graph(&pt("(1)^inf")).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (1, 2));
        let g = hereditary_orbit_graph(&pt("(0)^inf")).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (1, 1));
        assert_eq!(
            hereditary_orbit_graph(&pt("1(0)^inf")),
            Err(Error::NonemptyPreperiod)
        );
    }

    /// Language of the hereditary closure straight from the definition: words
    /// dominated by some window of the orbit.
    fn brute_hereditary(x: &PeriodicPoint, n: usize) -> Vec<Word> {
        let p = x.period().len();
        Alphabet::binary()
            .all_words(n)
            .into_iter()
            .filter(|w| (0..p).any(|s| (0..n).all(|i| w[i] <= x.symbol_at(s + i))))
            .collect()
    }

    #[test]
    fn heredity_of_language() {
        for s in [
            "(01)^inf",
            "(0110100)^inf",
            "(1101)^inf",
            "(100100)^inf",
            "(0)^inf",
            "(1)^inf",
        ] {
            let x = pt(s);
            let g = hereditary_orbit_graph(&x).unwrap();
            let c = classify_graph(&g).unwrap();
            assert!(c.is_transitive);
            if x.period().len() >= 2 {
                assert!(!c.is_mixing, "{s}");
            }
            for n in 1..=8 {
                let l = language_n(&g, n);
                assert_eq!(l, brute_hereditary(&x, n), "{s} n={n}");
                // closed downward under coordinatewise order
                for w in &l {
                    for mask in 0..(1u32 << n) {
                        let lower: Word = (0..n).map(|i| w[i] & ((mask >> i) & 1) as u8).collect();
                        assert!(l.binary_search(&lower).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let sq = GeneratorStream::SquaresOfPrimes;
        let zeros = vec![0u8; 50];
        let p = dominance_projection(&zeros, &sq, 2, 7).unwrap();
        assert_eq!(p.y.0, zeros);
        assert_eq!(p.mismatches, 0);

        let n = 1000;
        let eta2 = indicator_window(&[4, 9], 0, n);
        let p = dominance_projection(&eta2, &sq, 2, 0).unwrap();
        let eta = indicator_window(&sq.up_to(n as u64).unwrap(), 0, n);
        assert_eq!(p.y.0, eta);
        let row = de_deficiency(&sq, 2, n as u64).unwrap();
        assert_eq!(p.mismatches, row.count);
        assert_eq!(p.deficiency_count, row.count);

        let mut bad = vec![0u8; 10];
        bad[4] = 1;
        assert_eq!(
            dominance_projection(&bad, &sq, 2, 0),
            Err(Error::DominanceViolated { index: 4 })
        );
    }

    #[test]
    fn truncation_dominates() {
        let sq = GeneratorStream::SquaresOfPrimes;
        let all = sq.up_to(5000).unwrap();
        for k in [1, 2, 5, 10] {
            let t = sq.first(k).unwrap();
            let a = indicator_window(&all, 1000, 4000);
            let b = indicator_window(&t, 1000, 4000);
            assert!(a.iter().zip(&b).all(|(x, y)| x <= y));
        }
    }
}
