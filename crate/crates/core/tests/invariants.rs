use std::collections::BTreeSet;

use proptest::prelude::*;
use shiftlab_core::approx::{rauzy_graph, LanguageOracle};
use shiftlab_core::bfree::{indicator_window, BSet};
use shiftlab_core::metrics::dist_point_to_sofic;
use shiftlab_core::sgap::{gap_point, sgap_graph, SGapSet};
use shiftlab_core::sofic::language_n;
use shiftlab_core::word::mismatch_density;
use shiftlab_core::{
    Alphabet, ExactRational, LabeledGraph, PeriodicPoint, SftSpec, ShiftSpec, Word,
};

fn golden() -> LabeledGraph {
    ShiftSpec::Sft(SftSpec::new(Alphabet::binary(), [Word::binary("11")]).unwrap())
        .presentation()
        .unwrap()
}

fn point() -> impl Strategy<Value = PeriodicPoint> {
    (
        prop::collection::vec(0u8..2, 0..4),
        prop::collection::vec(0u8..2, 1..7),
    )
        .prop_map(|(pre, per)| PeriodicPoint::new(Word(pre), Word(per)).unwrap())
}

/// A periodic point of the golden mean shift: blocks `0` and `01` repeated.
fn golden_point() -> impl Strategy<Value = PeriodicPoint> {
    prop::collection::vec(any::<bool>(), 1..6).prop_map(|blocks| {
        let w: Vec<u8> = blocks
            .iter()
            .flat_map(|&b| if b { vec![0, 1] } else { vec![0] })
            .collect();
        PeriodicPoint::periodic(Word(w)).unwrap()
    })
}

proptest! {
    #[test]
    fn distance_below_any_point_of_the_shift(p in point(), q in golden_point()) {
        let g = golden();
        prop_assert!(g.accepts_point(&q));
        let d = dist_point_to_sofic(&p, &g).unwrap();
        prop_assert!(d <= mismatch_density(&p, &q));
        // the preperiod carries no density
        let tail = p.shift_by(p.preperiod().len());
        prop_assert_eq!(d.is_zero(), g.accepts_point(&tail));
    }

    #[test]
    fn points_render_and_parse_back(p in point()) {
        let a = Alphabet::binary();
        prop_assert_eq!(PeriodicPoint::parse(&a, &p.render(&a)).unwrap(), p);
    }

    #[test]
    fn bfree_indicator_matches_divisibility(gens in prop::collection::btree_set(2u64..40, 1..4), start in 0u64..500) {
        let gens: Vec<u64> = gens.into_iter().collect();
        let w = indicator_window(&gens, start, 64);
        for (i, &s) in w.iter().enumerate() {
            let n = start + i as u64;
            let free = n != 0 && gens.iter().all(|b| n % b != 0);
            prop_assert_eq!(s == 1, free, "n = {}", n);
        }
        let b = BSet::new(gens.clone()).unwrap();
        if b.lcm().map_or(false, |l| l <= 1 << 12) {
            let g = ShiftSpec::BFree(b).presentation().unwrap();
            prop_assert!(g.accepts_word(&indicator_window(&gens, start.max(1), 24)));
        }
    }

    #[test]
    fn gap_points_lie_in_their_gap_shift(gaps in prop::collection::btree_set(1u64..9, 1..4), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5)) {
        let s = SGapSet::new(gaps.into_iter().collect()).unwrap();
        let ts: Vec<u64> = picks.iter().map(|i| s.gaps()[i.index(s.gaps().len())]).collect();
        prop_assert!(sgap_graph(&s).unwrap().accepts_point(&gap_point(&ts).unwrap()));
    }
}

#[test]
fn markov_approximations_contain_the_language() {
    let g = golden();
    let mut oracle = LanguageOracle::from_graph(&g).unwrap();
    for n in 1..=5 {
        let r = rauzy_graph(&mut oracle, n).unwrap();
        for j in 1..=10 {
            let inner: BTreeSet<Word> = language_n(&g, j).into_iter().collect();
            let outer: BTreeSet<Word> = language_n(&r, j).into_iter().collect();
            assert!(inner.is_subset(&outer), "n={n} j={j}");
        }
    }
    let parity =
        ShiftSpec::HereditaryOrbit(PeriodicPoint::parse(&Alphabet::binary(), "(01)^inf").unwrap());
    let pg = parity.presentation().unwrap();
    let y = PeriodicPoint::parse(&Alphabet::binary(), "((10)^2 0^3)^inf").unwrap();
    assert!(dist_point_to_sofic(&y, &pg).unwrap() >= ExactRational::new(1, 8));
}
