use std::collections::BTreeSet;

use crosscap::enumerate::{all_schemes, enumerate_schemes};
use crosscap::search::{
    exhaustive_perfect_search, find, search_drawings, SearchOutcome, SearchSpec,
};
use crosscap::{perm, SignedCyclicPermutation};

/// For every perfect drawing (one per mirror pair), the edges entering no
/// cross-cap.
fn empty_edge_sets(p: &SignedCyclicPermutation) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let stats = search_drawings(&SearchSpec::perfect(p, 1_000_000), |d| {
        assert!(d.is_perfect(p).unwrap());
        out.push(
            d.words
                .iter()
                .filter(|(_, w)| w.is_empty())
                .map(|(&e, _)| e)
                .collect(),
        );
        false
    });
    assert!(stats.complete);
    out.sort();
    out
}

#[test]
fn projective_pair_leaves_one_edge_straight() {
    assert_eq!(empty_edge_sets(&perm("1 -2")), vec![vec![1], vec![2]]);
}

#[test]
fn four_edge_genus_two_leaves_each_edge_straight_once() {
    let p = perm("1 -3 -4 2");
    assert_eq!(
        empty_edge_sets(&p),
        vec![vec![1], vec![2], vec![3], vec![4]]
    );
    assert!(matches!(
        find(&SearchSpec::fantastic(&p, 1_000_000)),
        SearchOutcome::Exhausted { .. }
    ));
}

#[test]
fn smallest_block_pair_has_no_perfect_drawing() {
    let p = perm("1 3 2 4 -8 -6 -7 -5");
    assert_eq!(p.crosscap_number(), 5);
    match exhaustive_perfect_search(&p, 1_000_000_000) {
        SearchOutcome::Exhausted { nodes } => assert!(nodes > 0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn found_drawings_are_perfect() {
    for n in 1..=4 {
        for p in all_schemes(n) {
            match exhaustive_perfect_search(&p, 1_000_000) {
                SearchOutcome::Found { drawing, .. } => {
                    assert!(drawing.is_perfect(&p).unwrap(), "{p}");
                    assert_eq!(drawing.crosscaps, p.crosscap_number());
                }
                other => panic!("{p}: {other:?}"),
            }
        }
    }
}

#[test]
fn pruning_does_not_change_verdicts() {
    for n in 1..=5 {
        for p in enumerate_schemes(n) {
            let pruned = exhaustive_perfect_search(&p, 10_000_000);
            let mut spec = SearchSpec::perfect(&p, 10_000_000);
            spec.class_pruning = false;
            let plain = find(&spec);
            assert_eq!(
                matches!(pruned, SearchOutcome::Found { .. }),
                matches!(plain, SearchOutcome::Found { .. }),
                "{p}"
            );
        }
    }
}

#[test]
fn pruned_search_visits_every_drawing() {
    for p in enumerate_schemes(4) {
        let collect = |pruning: bool| {
            let mut spec = SearchSpec::perfect(&p, 10_000_000);
            spec.class_pruning = pruning;
            let mut seen = BTreeSet::new();
            let stats = search_drawings(&spec, |d| {
                seen.insert(d.words.clone());
                false
            });
            assert!(stats.complete);
            seen
        };
        assert_eq!(collect(true), collect(false), "{p}");
    }
}

#[test]
fn fewer_crosscaps_never_suffice() {
    for n in 2..=4 {
        for p in enumerate_schemes(n) {
            let g = p.crosscap_number();
            if g == 0 {
                continue;
            }
            let mut spec = SearchSpec::perfect(&p, 1_000_000);
            spec.crosscaps = g - 1;
            assert!(
                matches!(find(&spec), SearchOutcome::Exhausted { .. }),
                "{p}"
            );
        }
    }
}

#[test]
fn budget_is_reported() {
    let p = perm("1 3 2 4 -8 -6 -7 -5");
    assert!(matches!(
        exhaustive_perfect_search(&p, 10),
        SearchOutcome::BudgetExceeded { nodes: 11 }
    ));
}
