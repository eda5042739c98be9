use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sofic::LabeledGraph;
use crate::word::{Symbol, Word};

/// Hamming–Hausdorff distance between two sets of `n`-words.
///
/// A finite-horizon diagnostic; nothing is claimed about the behaviour as `n`
/// grows.
pub fn hausdorff_n(lx: &[Word], ly: &[Word], n: usize) -> Result<ExactRational> {
    let a = directed_hausdorff(lx, ly, n)?;
    let b = directed_hausdorff(ly, lx, n)?;
    Ok(a.max(b))
}

/// `max_{a in from} min_{b in to} d_Ham(a, b)`, inner minimum by a trie DP.
pub fn directed_hausdorff(from: &[Word], to: &[Word], n: usize) -> Result<ExactRational> {
    check(from, n)?;
    check(to, n)?;
    let trie = Trie::build(to);
    let worst = from.iter().map(|a| trie.min_mismatch(a)).max().unwrap_or(0);
    Ok(ExactRational::from_counts(worst as u64, n as u64))
}

/// Directed distance from `from` to `L_n(X(g))`, with the inner minimum taken
/// by a min-cost DP over paths of `g` instead of enumerating the language.
pub fn directed_hausdorff_to_graph(
    from: &[Word],
    g: &LabeledGraph,
    n: usize,
) -> Result<ExactRational> {
    check(from, n)?;
    let g = g.trim()?;
    let mut worst = 0u64;
    for a in from {
        let mut cost = vec![0u64; g.vertex_count()];
        for &s in a.iter() {
            let mut next = vec![u64::MAX; g.vertex_count()];
            for e in g.edges() {
                let c = cost[e.src].saturating_add(u64::from(e.label != s));
                next[e.dst] = next[e.dst].min(c);
            }
            cost = next;
        }
        worst = worst.max(cost.into_iter().min().unwrap_or(u64::MAX));
    }
    Ok(ExactRational::from_counts(worst, n as u64))
}

fn check(ws: &[Word], n: usize) -> Result<()> {
    if ws.is_empty() {
        return Err(Error::EmptySet);
    }
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    for w in ws {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: w.len(),
            });
        }
    }
    Ok(())
}

struct Trie {
    children: Vec<Vec<(Symbol, usize)>>,
}

impl Trie {
    fn build(words: &[Word]) -> Self {
        let mut t = Trie {
            children: vec![Vec::new()],
        };
        for w in words {
            let mut node = 0;
            for &s in w.iter() {
                node = match t.children[node].iter().find(|(c, _)| *c == s) {
                    Some(&(_, child)) => child,
                    None => {
                        let child = t.children.len();
                        t.children.push(Vec::new());
                        t.children[node].push((s, child));
                        child
                    }
                };
            }
        }
        t
    }

    fn min_mismatch(&self, a: &[Symbol]) -> usize {
        fn go(t: &Trie, node: usize, a: &[Symbol], depth: usize) -> usize {
            if depth == a.len() {
                return 0;
            }
            t.children[node]
                .iter()
                .map(|&(s, child)| usize::from(s != a[depth]) + go(t, child, a, depth + 1))
                .min()
                .unwrap_or(usize::MAX / 2)
        }
        go(self, 0, a, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sofic::language_n;
    use crate::word::{hamming_count, Alphabet};
    use proptest::prelude::*;

    fn brute(from: &[Word], to: &[Word], n: usize) -> ExactRational {
        let worst = from
            .iter()
            .map(|a| to.iter().map(|b| hamming_count(a, b)).min().unwrap())
            .max()
            .unwrap();
        ExactRational::from_counts(worst as u64, n as u64)
    }

    #[test]
    fn trivial_cases() {
        let l = vec![Word::binary("0101"), Word::binary("1100")];
        assert!(hausdorff_n(&l, &l, 4).unwrap().is_zero());
        let z = vec![Word::binary("0000")];
        let o = vec![Word::binary("1111")];
        assert_eq!(hausdorff_n(&z, &o, 4).unwrap(), ExactRational::one());
        assert_eq!(hausdorff_n(&[], &o, 4), Err(Error::EmptySet));
        assert!(hausdorff_n(&z, &[Word::binary("11")], 4).is_err());
    }

    #[test]
    fn graph_dp_matches_enumeration() {
        let g =
            LabeledGraph::from_triples(Alphabet::binary(), 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 0)])
                .unwrap();
        for n in 1..=8 {
            let all = Alphabet::binary().all_words(n);
            let ln = language_n(&g, n);
            assert_eq!(
                directed_hausdorff_to_graph(&all, &g, n).unwrap(),
                directed_hausdorff(&all, &ln, n).unwrap()
            );
        }
    }

    fn word_set(n: usize) -> impl Strategy<Value = Vec<Word>> {
        proptest::collection::vec(proptest::collection::vec(0u8..2, n), 1..8)
            .prop_map(|v| v.into_iter().map(Word).collect())
    }

    proptest! {
        #[test]
        fn pseudometric_axioms(a in word_set(6), b in word_set(6), c in word_set(6)) {
            let ab = hausdorff_n(&a, &b, 6).unwrap();
            let ba = hausdorff_n(&b, &a, 6).unwrap();
            let bc = hausdorff_n(&b, &c, 6).unwrap();
            let ac = hausdorff_n(&a, &c, 6).unwrap();
            prop_assert_eq!(&ab, &ba);
            prop_assert!(hausdorff_n(&a, &a, 6).unwrap().is_zero());
            prop_assert!(ac <= ab.clone() + bc);
            prop_assert_eq!(directed_hausdorff(&a, &b, 6).unwrap(), brute(&a, &b, 6));
        }
    }
}
