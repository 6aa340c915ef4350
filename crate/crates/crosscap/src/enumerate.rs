//! Exhaustive generation of schemes and the reduced-scheme census.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::{has_homotopic_pair, is_reduced};
use crate::scheme::{SignedCyclicPermutation, Vertex};

/// Every signed cyclic permutation on `n` edges (no quotient), in
/// lexicographic order of canonical entries.
pub fn all_schemes(n: usize) -> Vec<SignedCyclicPermutation> {
    assert!(
        (1..=9).contains(&n),
        "exhaustive generation supports 1..=9 edges"
    );
    let mut out = Vec::new();
    let mut rest: Vec<i32> = (2..=n as i32).collect();
    let mut perms = Vec::new();
    permutations(&mut rest, 0, &mut perms);
    perms.sort();
    for first in [-1, 1] {
        for p in &perms {
            for mask in 0..(1u32 << (n - 1)) {
                let mut e = Vec::with_capacity(n);
                e.push(first);
                for (k, &x) in p.iter().enumerate() {
                    e.push(if mask >> k & 1 == 1 { -x } else { x });
                }
                out.push(SignedCyclicPermutation::from_valid(e));
            }
        }
    }
    out.sort();
    out
}

fn permutations(v: &mut Vec<i32>, k: usize, out: &mut Vec<Vec<i32>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Representative of the census symmetry class: rotation, flip at `v2`, and
/// cyclic relabeling of values.
pub fn census_canonical(p: &SignedCyclicPermutation) -> SignedCyclicPermutation {
    (0..p.n())
        .flat_map(|k| {
            let s = p.shift_values(k);
            let f = s.flip(Vertex::V2);
            [s, f]
        })
        .min_by_key(census_key)
        .expect("nonempty orbit")
}

/// Orders by absolute values first so that positive representatives win.
fn census_key(p: &SignedCyclicPermutation) -> Vec<(u32, bool)> {
    p.entries()
        .iter()
        .map(|x| (x.unsigned_abs(), *x < 0))
        .collect()
}

/// One representative per census class on `n` edges, sorted.
pub fn enumerate_schemes(n: usize) -> Vec<SignedCyclicPermutation> {
    all_schemes(n)
        .into_iter()
        .filter(|p| census_canonical(p) == *p)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub scheme: SignedCyclicPermutation,
    pub crosscap_number: usize,
    pub face_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub genus: usize,
    pub maximal: bool,
    pub schemes: Vec<CensusEntry>,
}

/// Reduced schemes (no homotopic pair, no non-trivial block) with the given
/// cross-cap number. With `maximal`, keep the non-orientable schemes that
/// have both signs and to which no edge can be added without breaking one
/// of these properties.
pub fn census(g: usize, maximal: bool) -> CensusReport {
    assert!(g <= 3, "census supports cross-cap numbers up to 3");
    // A reduced scheme without bigons has e <= 2 eg, and eg <= g.
    let max_n = (2 * g).max(1);
    let mut schemes: Vec<SignedCyclicPermutation> = (1..=max_n)
        .into_par_iter()
        .flat_map_iter(|n| {
            enumerate_schemes(n)
                .into_iter()
                .filter(|p| is_reduced(p) && p.crosscap_number() == g)
                .collect::<Vec<_>>()
        })
        .collect();
    if maximal {
        schemes.retain(|p| !p.is_orientable() && is_maximal(p));
    }
    schemes.sort_by(|a, b| (a.n(), a).cmp(&(b.n(), b)));
    let schemes = schemes
        .into_iter()
        .map(|p| CensusEntry {
            crosscap_number: p.crosscap_number(),
            face_degrees: p.faces().degrees(),
            scheme: p,
        })
        .collect();
    CensusReport {
        genus: g,
        maximal,
        schemes,
    }
}

/// All schemes obtained by inserting one new edge anywhere.
pub fn one_edge_extensions(p: &SignedCyclicPermutation) -> Vec<SignedCyclicPermutation> {
    let n = p.n() as i32;
    let mut out = Vec::new();
    // new label goes after value `v` in the v1 order, i.e. becomes v+1
    for v in 0..n {
        let relabeled: Vec<i32> = p
            .entries()
            .iter()
            .map(|&x| if x.abs() > v { x + x.signum() } else { x })
            .collect();
        for pos in 0..relabeled.len() {
            for s in [1, -1] {
                let mut e = relabeled.clone();
                e.insert(pos + 1, s * (v + 1));
                out.push(SignedCyclicPermutation::from_valid(e));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Non-orientable, reduced, and every one-edge extension with the same
/// cross-cap number is orientable or not reduced.
pub fn is_maximal(p: &SignedCyclicPermutation) -> bool {
    let g = p.crosscap_number();
    one_edge_extensions(p).iter().all(|q| {
        q.crosscap_number() != g || q.is_orientable() || !is_reduced(q) || has_homotopic_pair(q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_without_quotient() {
        assert_eq!(all_schemes(1).len(), 2);
        assert_eq!(all_schemes(3).len(), 2 * 2 * 4);
    }

    #[test]
    fn quotient_small() {
        assert_eq!(enumerate_schemes(1), vec![crate::perm("1")]);
        let two = enumerate_schemes(2);
        assert!(two
            .iter()
            .any(|p| census_canonical(&crate::perm("1 -2")) == *p));
        assert!(two
            .iter()
            .any(|p| census_canonical(&crate::perm("1 2")) == *p));
    }
}
