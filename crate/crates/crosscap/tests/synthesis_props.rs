use std::collections::BTreeSet;

use crosscap::assets::{base_drawings, exceptional_forms};
use crosscap::blocks::{is_reduced, non_trivial_blocks, reduce};
use crosscap::enumerate::{all_schemes, enumerate_schemes};
use crosscap::hp::hp_sort;
use crosscap::search::{exhaustive_perfect_search, find, SearchOutcome, SearchSpec};
use crosscap::synthesis::{
    add_orienting_edge, base_fantastic, classify, descent, draw_negative_block, expansion_stages,
    fantastic_drawing, is_fantastic_exception, is_normal_negative_block, no_perfect_certificate,
    perfect_drawing, theorem1_genus, Synthesis, Verdict,
};
use crosscap::{cycle_type, perm, CurveClass, SignedCyclicPermutation, SynthesisError};
use proptest::prelude::*;

fn permutations(v: Vec<i32>) -> Vec<Vec<i32>> {
    if v.len() <= 1 {
        return vec![v];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.clone();
        let x = rest.remove(i);
        for mut q in permutations(rest) {
            q.insert(0, x);
            out.push(q);
        }
    }
    out
}

/// Non-trivial positive blocks `(1, …, m)` in standalone form.
fn positive_blocks(m: i32) -> Vec<SignedCyclicPermutation> {
    permutations((2..m).collect())
        .into_iter()
        .map(|inner| {
            let mut e = vec![1];
            e.extend(inner);
            e.push(m);
            SignedCyclicPermutation::new(e).unwrap()
        })
        .filter(|p| !p.is_sorted())
        .collect()
}

/// Non-trivial negative blocks `(m̄, …, 1̄)` in standalone form.
fn negative_blocks(m: i32) -> Vec<SignedCyclicPermutation> {
    permutations((2..m).map(|x| -x).collect())
        .into_iter()
        .map(|inner| {
            let mut e = vec![-m];
            e.extend(inner);
            e.push(-1);
            SignedCyclicPermutation::new(e).unwrap()
        })
        .filter(|p| !p.flip(crosscap::Vertex::V2).is_sorted())
        .collect()
}

fn expect_perfect(p: &SignedCyclicPermutation) {
    match perfect_drawing(p).unwrap_or_else(|e| panic!("{p}: {e}")) {
        Synthesis::Perfect { drawing } => {
            assert!(drawing.is_perfect(p).unwrap(), "{p}");
            assert_eq!(drawing.crosscaps, p.crosscap_number(), "{p}");
        }
        Synthesis::Exceptional { classification } => panic!("{p} classified {classification:?}"),
    }
}

#[test]
fn every_scheme_up_to_five_edges_is_drawn() {
    for n in 1..=5 {
        for p in all_schemes(n) {
            expect_perfect(&p);
        }
    }
}

#[test]
fn every_census_class_on_six_and_seven_edges_is_drawn() {
    for n in 6..=7 {
        for p in enumerate_schemes(n) {
            expect_perfect(&p);
        }
    }
}

#[test]
fn stages_keep_the_crosscap_budget() {
    for s in [
        "1 3 2 4 -5",
        "1 -5 -3 -4 -2 6",
        "1 2 4 3 5 -6 7 -8",
        "-1 -5 -3 -4 -2 6 -7 -9 -8 -10",
    ] {
        let p = perm(s);
        for (q, d) in expansion_stages(&p).unwrap() {
            assert!(d.is_perfect(&q).unwrap(), "{s}: stage {q}");
            assert_eq!(d.crosscaps, q.crosscap_number(), "{s}: stage {q}");
        }
    }
}

#[test]
fn negative_block_frames_are_reversed() {
    let z = perm("-4 -2 -3 -1");
    let d = draw_negative_block(&z).unwrap();
    assert!(d.is_perfect(&z).unwrap());
    assert_eq!(d.crosscaps, z.euler_genus() + 1);
    assert_eq!(d.crosscaps % 2, 1);
    let mut back = d.word(1).to_vec();
    back.reverse();
    assert_eq!(d.word(4), back.as_slice());
    let caps: BTreeSet<usize> = d.word(4).iter().copied().collect();
    assert_eq!(caps.len(), d.crosscaps);
}

#[test]
fn all_small_negative_blocks() {
    for m in 4..=7 {
        for z in negative_blocks(m)
            .into_iter()
            .filter(is_normal_negative_block)
        {
            let d = draw_negative_block(&z).unwrap_or_else(|e| panic!("{z}: {e}"));
            assert!(d.is_perfect(&z).unwrap(), "{z}");
            assert_eq!(d.crosscaps, z.euler_genus() + 1, "{z}");
            let a = d.word(m as u32);
            let b: Vec<usize> = d.word(1).iter().rev().copied().collect();
            assert_eq!(a, b.as_slice(), "{z}");
            assert_eq!(a.len(), d.crosscaps, "{z}");
        }
    }
}

#[test]
fn negative_block_rejects_other_shapes() {
    for s in ["-4 -3 -2 -1", "1 -2", "-4 -2 -3 1", "-6 -3 -5 -4 -2 -1"] {
        assert!(
            matches!(
                draw_negative_block(&perm(s)),
                Err(SynthesisError::Precondition(_))
            ),
            "{s}"
        );
    }
}

#[test]
fn orienting_edge_keeps_faces() {
    let mut seen = 0;
    for n in 2..=7 {
        for p in enumerate_schemes(n) {
            if !p.is_orientable() || !is_reduced(&p) {
                continue;
            }
            seen += 1;
            let ext = add_orienting_edge(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
            let q = &ext.scheme;
            assert!(!q.is_orientable() && is_reduced(q), "{p} -> {q}");
            assert_eq!(q.face_count(), p.face_count(), "{p} -> {q}");
            assert_eq!(q.crosscap_number(), p.crosscap_number(), "{p} -> {q}");
            let d = fantastic_drawing(&p).unwrap();
            assert!(d.is_fantastic(&p).unwrap());
        }
    }
    assert!(seen > 10);
    assert!(add_orienting_edge(&perm("1 -2")).is_err());
    let all_negative = perm("1 3 5 2 4").flip(crosscap::Vertex::V2);
    assert!(all_negative.entries().iter().all(|&x| x < 0));
    assert!(!add_orienting_edge(&all_negative)
        .unwrap()
        .scheme
        .is_orientable());
}

#[test]
fn fantastic_exceptions() {
    for s in ["1", "1 -2", "1 -3 -4 2", "-1 2"] {
        for p in perm(s).flip_class() {
            assert!(is_fantastic_exception(&p), "{p}");
            assert!(
                matches!(
                    fantastic_drawing(&p),
                    Err(SynthesisError::FantasticException(_))
                ),
                "{p}"
            );
        }
    }
    assert!(is_fantastic_exception(&perm("1 -3 -4 2").shift_values(2)));
    assert!(!is_fantastic_exception(&perm("1 -2 3 -4")));
    assert!(matches!(
        base_fantastic(&perm("1 -3 -4 2")),
        Err(SynthesisError::FantasticException(_))
    ));
}

#[test]
fn base_cases_from_the_table() {
    for s in [
        "1 -2 3 -4",
        "1 3 -2",
        "1 -6 5 -4 3 -2",
        "1 -4 -6 -2 5 3",
        "1 -2 -3",
    ] {
        let p = perm(s);
        let d = base_fantastic(&p).unwrap();
        assert!(d.is_fantastic(&p).unwrap(), "{s}");
        assert_eq!(d.crosscaps, p.crosscap_number());
    }
}

#[test]
fn stored_drawings_are_fantastic() {
    let table = base_drawings().unwrap();
    assert_eq!(table.len(), 10);
    for b in table {
        assert!(b.drawing.is_fantastic(&b.scheme).unwrap(), "{}", b.scheme);
    }
}

#[test]
fn search_rediscovers_genus_two_base_cases() {
    for s in ["1 -2 3 -4", "1 3 -2"] {
        let p = perm(s);
        let SearchOutcome::Found { drawing, .. } = find(&SearchSpec::fantastic(&p, 1_000_000))
        else {
            panic!("{s}")
        };
        assert!(drawing.is_fantastic(&p).unwrap());
    }
}

#[test]
fn exceptional_forms_have_one_flag_per_element() {
    let forms = exceptional_forms().unwrap();
    assert_eq!(forms.len(), 2);
    for f in forms {
        assert_eq!(f.blocks.len(), f.scheme.n());
        assert!(is_fantastic_exception(&f.scheme));
    }
}

#[test]
fn fantastic_beyond_genus_three() {
    let mut checked = 0;
    for p in enumerate_schemes(7) {
        if p.crosscap_number() > 3 && is_reduced(&p) && !is_fantastic_exception(&p) {
            let d = fantastic_drawing(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
            assert!(d.is_fantastic(&p).unwrap());
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn descent_where_sorting_stalls() {
    let p = perm("1 -2 3 5 -6 7 4");
    assert!(is_reduced(&p) && !p.is_orientable() && non_trivial_blocks(&p).is_empty());
    assert!(hp_sort(&p, None).is_err());
    assert!(descent(&p, 1).is_none());
    let d = fantastic_drawing(&p).unwrap();
    assert!(d.is_fantastic(&p).unwrap());
    let q = perm("1 -6 5 -4 3 -2 7 -8");
    let path = descent(&q, q.crosscap_number() - 3).unwrap();
    assert_eq!(path.terminal().unwrap().crosscap_number(), 3);
}

#[test]
fn block_pair_certificates() {
    let mut count = 0;
    for (ma, mb) in [(4, 4), (4, 5), (5, 4), (4, 6), (6, 4), (5, 5)] {
        for a in positive_blocks(ma) {
            for b in negative_blocks(mb) {
                let split = theorem1_genus(&a, &b).unwrap();
                assert_eq!(
                    split.genus + 1,
                    split.positive_genus + split.negative_genus,
                    "{}",
                    split.scheme
                );
                assert_eq!(
                    split.faces + 1,
                    split.positive_faces + split.negative_faces,
                    "{}",
                    split.scheme
                );
                let p = split.scheme;
                let cert = no_perfect_certificate(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                cert.verify(&p).unwrap();
                let flipped = p.flip(crosscap::Vertex::V1);
                no_perfect_certificate(&flipped)
                    .unwrap()
                    .verify(&flipped)
                    .unwrap();
                let c = classify(&p).unwrap();
                assert_eq!(c.verdict, Verdict::ExceptionalReduced, "{p}");
                assert!(c.block_pair_certificate.is_some());
                count += 1;
            }
        }
    }
    assert_eq!(count, 82);
}

#[test]
fn certificate_of_the_smallest_pair() {
    let p = perm("1 3 2 4 -8 -6 -7 -5");
    let cert = no_perfect_certificate(&p).unwrap();
    assert_eq!(cert.positive_frames, (1, 4));
    assert_eq!(cert.negative_frames, (8, 5));
    assert_eq!(cert.genus, 5);
    assert_eq!(cert.genus + 1, cert.positive_genus + cert.negative_genus);
    assert_eq!(cycle_type(&p, 1, 8).unwrap().class, CurveClass::Orienting);
    assert_eq!(cycle_type(&p, 1, 4).unwrap().class, CurveClass::Separating);
    assert!(no_perfect_certificate(&perm("1 -2 3 -4")).is_err());
    assert!(theorem1_genus(&perm("1 2 3"), &perm("-4 -2 -3 -1")).is_err());
}

#[test]
fn classification_examples() {
    let c = classify(&perm("1 -6 5 -4 3 -2")).unwrap();
    assert_eq!(c.verdict, Verdict::Constructible);
    assert_eq!(
        classify(&perm("1")).unwrap().verdict,
        Verdict::Constructible
    );
    // Four blocks hung on the four edges of (1,3̄,4̄,2).
    let four = perm("1 3 2 4 -12 -10 -11 -9 -16 -14 -15 -13 5 7 6 8");
    let c = classify(&four).unwrap();
    assert!(reduce(&four).root.n() == 4, "{}", reduce(&four).root);
    assert_eq!(c.verdict, Verdict::ExceptionalReduced, "{c:?}");
    assert_eq!(c.exceptional_form.as_deref(), Some("four-edge genus two"));
}

#[test]
fn search_agrees_with_synthesis_on_small_classes() {
    for n in 1..=5 {
        for p in enumerate_schemes(n) {
            let found = matches!(
                exhaustive_perfect_search(&p, 5_000_000),
                SearchOutcome::Found { .. }
            );
            let built = matches!(perfect_drawing(&p).unwrap(), Synthesis::Perfect { .. });
            assert_eq!(found, built, "{p}");
        }
    }
}

/// Replaces a random element by a block of `k` edges in its place.
fn inflate(e: &mut Vec<i32>, at: usize, k: i32, order: &[usize]) {
    let x = e[at];
    let a = x.abs();
    let mut inner: Vec<i32> = (a + 1..a + k - 1).collect();
    let mut shuffled = inner.clone();
    for (i, &j) in order.iter().take(inner.len()).enumerate() {
        shuffled.swap(i, j % inner.len().max(1));
    }
    inner = shuffled;
    let mut block = vec![a];
    block.extend(inner);
    block.push(a + k - 1);
    if x < 0 {
        block.reverse();
    }
    for y in e.iter_mut() {
        if y.abs() > a {
            *y += y.signum() * (k - 1);
        }
    }
    e.splice(at..=at, block.into_iter().map(|v| v * x.signum()));
}

fn arb_nested() -> impl Strategy<Value = SignedCyclicPermutation> {
    let base = (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(any::<bool>(), n),
        )
    });
    let steps = prop::collection::vec(
        (
            any::<prop::sample::Index>(),
            2i32..=6,
            prop::collection::vec(0usize..8, 4),
        ),
        0..=3,
    );
    (base, steps).prop_map(|((_, order, signs), steps)| {
        let mut e: Vec<i32> = order
            .iter()
            .zip(&signs)
            .map(|(&x, &s)| if s { x } else { -x })
            .collect();
        for (ix, k, sw) in steps {
            let at = ix.index(e.len());
            inflate(&mut e, at, k, &sw);
        }
        SignedCyclicPermutation::new(e).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prop_nested_blocks_are_drawn_or_exceptional(p in arb_nested()) {
        match perfect_drawing(&p).unwrap() {
            Synthesis::Perfect { drawing } => {
                prop_assert!(drawing.is_perfect(&p).unwrap());
                prop_assert_eq!(drawing.crosscaps, p.crosscap_number());
            }
            Synthesis::Exceptional { classification } => {
                prop_assert!(classification.exceptional_form.is_some());
                prop_assert!(is_fantastic_exception(&classification.root));
            }
        }
    }

    #[test]
    fn prop_drawings_obey_the_parity_law(p in arb_nested()) {
        if let Synthesis::Perfect { drawing } = perfect_drawing(&p).unwrap() {
            let n = p.n() as u32;
            for a in 1..=n.min(6) {
                for b in a + 1..=n.min(6) {
                    let from_scheme = cycle_type(&p, a, b).unwrap();
                    let from_drawing = drawing.curve_parity_class(a, b).unwrap();
                    prop_assert_eq!(from_scheme.sidedness, from_drawing.sidedness);
                    if from_scheme.class != CurveClass::Neither {
                        prop_assert_eq!(from_scheme.class, from_drawing.class);
                    }
                }
            }
        }
    }
}
