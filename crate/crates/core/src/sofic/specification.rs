use alloc::vec::Vec;

use super::determinize::{irreducible_presentation, subset_states};
use super::vset::minimal_sets;
use super::{classify_graph, LabeledGraph, VertexSet};
use crate::error::{Error, Result};

/// Smallest `k <= k_max` such that any two words `u, w` of the language can be
/// joined as `u v w` with some `|v| = k`; `None` if no such `k <= k_max`.
///
/// With a right-resolving trimmed presentation, `u` determines the set `T(u)` of
/// vertices where a path labelled `u` may end and `w` the set `I(w)` where a
/// path labelled `w` may start. A bridge of length `k` exists exactly when some
/// `k`-step path runs from `T(u)` into `I(w)`, so only the inclusion-minimal
/// sets on each side need checking.
pub fn specification_constant(g: &LabeledGraph, k_max: usize) -> Result<Option<usize>> {
    let d = irreducible_presentation(g)?.ok_or(Error::NotMixing)?;
    if !classify_graph(&d)?.is_mixing {
        return Err(Error::NotMixing);
    }
    let ends = minimal_sets(nonempty_word_states(&d)?);
    let starts = minimal_sets(nonempty_word_states(&d.reversed())?);
    let st = d.stepper();
    let mut reach: Vec<VertexSet> = ends;
    for k in 0..=k_max {
        if reach.iter().all(|r| starts.iter().all(|s| r.intersects(s))) {
            return Ok(Some(k));
        }
        reach = reach.iter().map(|r| st.step_any(r)).collect();
    }
    Ok(None)
}

/// Subset states reached from the full vertex set after at least one symbol.
fn nonempty_word_states(g: &LabeledGraph) -> Result<Vec<VertexSet>> {
    let (states, edges) = subset_states(g)?;
    let mut hit = alloc::vec![false; states.len()];
    for e in &edges {
        hit[e.dst] = true;
    }
    Ok(states
        .into_iter()
        .zip(hit)
        .filter(|(_, h)| *h)
        .map(|(s, _)| s)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sofic::language_n;
    use crate::sofic::testgraphs::*;
    use crate::word::{Alphabet, Word};

    /// Exhaustive word-level check: every pair of words up to `len` glues with
    /// some bridge of length exactly `k`.
    fn bridges_all(g: &LabeledGraph, k: usize, len: usize) -> bool {
        let words: Vec<Word> = (1..=len).flat_map(|n| language_n(g, n)).collect();
        let bridges = g.alphabet().all_words(k);
        words.iter().all(|u| {
            words.iter().all(|w| {
                bridges
                    .iter()
                    .any(|v| g.accepts_word(&u.concat(v).concat(w)))
            })
        })
    }

    fn word_level_constant(g: &LabeledGraph, kmax: usize, len: usize) -> Option<usize> {
        (0..=kmax).find(|&k| bridges_all(g, k, len))
    }

    #[test]
    fn examples() {
        assert_eq!(specification_constant(&full2(), 10).unwrap(), Some(0));
        assert_eq!(specification_constant(&golden(), 10).unwrap(), Some(1));
        assert_eq!(specification_constant(&cycle(2), 10), Err(Error::NotMixing));
    }

    #[test]
    fn golden_mean_zero_fails_on_one_one() {
        let g = golden();
        assert!(!g.accepts_word(&Word::binary("11")));
        assert!(g.accepts_word(&Word::binary("101")));
        assert!(!bridges_all(&g, 0, 4));
        assert!(bridges_all(&g, 1, 4));
    }

    #[test]
    fn even_shift_needs_two() {
        assert_eq!(specification_constant(&even(), 10).unwrap(), Some(2));
        assert_eq!(specification_constant(&even_nondet(), 10).unwrap(), Some(2));
        assert_eq!(word_level_constant(&even(), 4, 5), Some(2));
    }

    #[test]
    fn bound_respected() {
        assert_eq!(specification_constant(&even(), 1).unwrap(), None);
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let a = Alphabet::binary();
        let graphs = [
            full2(),
            golden(),
            even(),
            // runs of 0s of length at most 2
            LabeledGraph::from_triples(
                a.clone(),
                3,
                &[(0, 0, 1), (0, 1, 0), (1, 2, 0), (1, 0, 1), (2, 0, 1)],
            )
            .unwrap(),
            // 3-cycle plus a chord: cycle lengths 2 and 3
            LabeledGraph::from_triples(a.clone(), 3, &[(0, 1, 0), (1, 2, 0), (2, 0, 1), (1, 0, 1)])
                .unwrap(),
        ];
        for g in &graphs {
            let k = specification_constant(g, 8).unwrap();
            assert_eq!(k, word_level_constant(g, 8, 5), "{g:?}");
        }
    }
}
