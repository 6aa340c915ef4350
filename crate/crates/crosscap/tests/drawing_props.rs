#![allow(clippy::needless_range_loop)]

use crosscap::blocks::non_trivial_blocks;
use crosscap::drawing::{from_reversal_path, monotone_drawing, splice_prefix};
use crosscap::enumerate::all_schemes;
use crosscap::hp::{hp_sort, ReversalPath};
use crosscap::{cycle_type, perm, CurveClass, SignedCyclicPermutation, Vertex};

fn hp_inputs(max_n: usize) -> impl Iterator<Item = SignedCyclicPermutation> {
    (1..=max_n)
        .flat_map(all_schemes)
        .filter(|p| !p.is_orientable() && non_trivial_blocks(p).is_empty())
}

#[test]
fn monotone_drawings_are_sound() {
    for p in hp_inputs(6) {
        let path = hp_sort(&p, None).unwrap();
        let d = from_reversal_path(&path).unwrap();
        assert!(d.validate().ok(), "{p:?}: {:?}", d.validate());
        assert!(d.realizes(&p).unwrap(), "{p:?}");
        assert!(d.is_perfect(&p).unwrap(), "{p:?}");
        assert_eq!(d.crosscaps, p.euler_genus());
        for &x in p.entries() {
            let odd = d.word(x.unsigned_abs()).len() % 2 == 1;
            assert_eq!(odd, x < 0);
        }
    }
}

#[test]
fn parity_agrees_with_cycle_type_on_monotone_drawings() {
    for p in hp_inputs(6) {
        let d = from_reversal_path(&hp_sort(&p, None).unwrap()).unwrap();
        let n = p.n() as u32;
        // edge names in the drawing are the values of p; cycle_type uses the same names
        for a in 1..=n {
            for b in a + 1..=n {
                let t = cycle_type(&p, a, b).unwrap();
                let q = d.curve_parity_class(a, b).unwrap();
                assert_eq!(t.sidedness, q.sidedness);
                if t.class != CurveClass::Neither {
                    assert_eq!(t.class, q.class, "{p:?} {a}.{b}");
                }
            }
        }
    }
}

#[test]
fn splicing_any_prefix_reassembles_the_path() {
    for p in hp_inputs(5) {
        let path = hp_sort(&p, None).unwrap();
        let states = path.permutations().unwrap();
        for k in 0..=path.len() {
            let head = ReversalPath {
                start: p.clone(),
                steps: path.steps[..k].to_vec(),
            };
            let tail = ReversalPath {
                start: states[k].clone(),
                steps: path.steps[k..].to_vec(),
            };
            let d = splice_prefix(&from_reversal_path(&tail).unwrap(), &head).unwrap();
            assert!(d.validate().ok());
            assert!(d.is_perfect(&p).unwrap());
            assert_eq!(d, from_reversal_path(&path).unwrap());
        }
    }
}

#[test]
fn splice_accepts_mirrored_and_flipped_tails() {
    let p = perm("1 -6 5 -4 3 -2");
    let path = hp_sort(&p, None).unwrap();
    let states = path.permutations().unwrap();
    let head = ReversalPath {
        start: p.clone(),
        steps: path.steps[..2].to_vec(),
    };
    let tail = ReversalPath {
        start: states[2].clone(),
        steps: path.steps[2..].to_vec(),
    };
    let d = from_reversal_path(&tail).unwrap();
    for variant in [d.clone(), d.mirror()] {
        let s = splice_prefix(&variant, &head).unwrap();
        assert!(s.is_perfect(&p).unwrap());
    }
    let wrong = from_reversal_path(&hp_sort(&perm("1 -2 3 -4 5 -6"), None).unwrap()).unwrap();
    assert!(splice_prefix(&wrong, &head).is_err());
}

#[test]
fn monotone_flip_of_start() {
    let p = perm("1 3 -2");
    let d = monotone_drawing(&hp_sort(&p, None).unwrap()).unwrap();
    assert!(d.realizes(&p.flip(Vertex::V1)).unwrap());
    assert!(d.realizes(&p.mirror()).unwrap());
    assert!(!d.realizes(&perm("1 -2 -3")).unwrap());
}
