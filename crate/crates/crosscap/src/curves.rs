//! Two-edge cycles `a·b`: wedges, sidedness, and orienting/separating tests.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::SchemeError;
use crate::scheme::{SignedCyclicPermutation, Vertex};

/// A half-edge named by its edge label and the vertex it is attached to.
pub type HalfEdge = (u32, Vertex);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wedge {
    pub a: u32,
    pub b: u32,
    pub contents: BTreeSet<HalfEdge>,
}

impl Wedge {
    /// Number of half-edges of `e` inside the wedge.
    pub fn ends_of(&self, e: u32) -> usize {
        [Vertex::V1, Vertex::V2]
            .iter()
            .filter(|&&v| self.contents.contains(&(e, v)))
            .count()
    }

    /// The wedge encloses `e` when it holds both of its half-edges or none.
    pub fn encloses(&self, e: u32) -> bool {
        self.ends_of(e) != 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveClass {
    Orienting,
    Separating,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    pub sidedness: Sidedness,
    pub class: CurveClass,
}

fn check_pair(p: &SignedCyclicPermutation, a: u32, b: u32) -> Result<(), SchemeError> {
    for x in [a, b] {
        if x == 0 || x as usize > p.n() {
            return Err(SchemeError::InvalidEdge(x));
        }
    }
    if a == b {
        return Err(SchemeError::SameEdge);
    }
    Ok(())
}

/// Labels strictly between `x` and `y` walking forward through `order`.
fn open_interval(order: &[u32], x: u32, y: u32) -> Vec<u32> {
    let n = order.len();
    let i = order.iter().position(|&l| l == x).expect("present");
    (1..n)
        .map(|k| order[(i + k) % n])
        .take_while(|&l| l != y)
        .collect()
}

pub fn wedge(p: &SignedCyclicPermutation, a: u32, b: u32) -> Result<Wedge, SchemeError> {
    check_pair(p, a, b)?;
    let v1: Vec<u32> = (1..=p.n() as u32).collect();
    let v2: Vec<u32> = p.entries().iter().rev().map(|x| x.unsigned_abs()).collect();
    let mut contents = BTreeSet::new();
    for l in open_interval(&v1, a, b) {
        contents.insert((l, Vertex::V1));
    }
    let both_negative = p.sign(a) < 0 && p.sign(b) < 0;
    let at_v2 = if both_negative {
        open_interval(&v2, a, b)
    } else {
        open_interval(&v2, b, a)
    };
    for l in at_v2 {
        contents.insert((l, Vertex::V2));
    }
    Ok(Wedge { a, b, contents })
}

/// Sufficient wedge criterion for `a·b` to be orienting.
pub fn wedge_says_orienting(
    p: &SignedCyclicPermutation,
    a: u32,
    b: u32,
) -> Result<bool, SchemeError> {
    let w = wedge(p, a, b)?;
    let both_negative = p.sign(a) < 0 && p.sign(b) < 0;
    let others = (1..=p.n() as u32).filter(|&e| e != a && e != b);
    Ok(others.into_iter().all(|e| {
        let split = p.sign(e) < 0;
        let split = if both_negative { !split } else { split };
        if split {
            w.ends_of(e) == 1
        } else {
            w.encloses(e)
        }
    }))
}

/// Sufficient wedge criterion for `a·b` to be separating.
pub fn wedge_says_separating(
    p: &SignedCyclicPermutation,
    a: u32,
    b: u32,
) -> Result<bool, SchemeError> {
    let w = wedge(p, a, b)?;
    Ok(p.sign(a) == p.sign(b)
        && (1..=p.n() as u32)
            .filter(|&e| e != a && e != b)
            .all(|e| w.encloses(e)))
}

/// Exact classification by contracting `a` and testing the loop `b` in the
/// resulting one-vertex scheme: a loop is orienting iff its ends alternate
/// exactly with the negative loops, and separating iff it is two-sided and
/// alternates with no loop.
pub fn cycle_type(p: &SignedCyclicPermutation, a: u32, b: u32) -> Result<CycleType, SchemeError> {
    check_pair(p, a, b)?;
    let (m, remap) = p.to_map().contract(a as usize - 1)?;
    let rot = &m.rotations[0];
    let slot = |h: usize| rot.iter().position(|&x| x == h).expect("present");
    let lb = remap[b as usize - 1].expect("b survives");
    let (s, t) = {
        let (x, y) = (slot(2 * lb), slot(2 * lb + 1));
        (x.min(y), x.max(y))
    };
    let sided = if m.edges[lb].sign < 0 {
        Sidedness::OneSided
    } else {
        Sidedness::TwoSided
    };
    let mut alternates_exactly_negatives = true;
    let mut alternates_any = false;
    for (l, e) in m.edges.iter().enumerate() {
        if l == lb {
            continue;
        }
        let inside = |h: usize| {
            let k = slot(h);
            s < k && k < t
        };
        let alt = inside(2 * l) != inside(2 * l + 1);
        alternates_any |= alt;
        if alt != (e.sign < 0) {
            alternates_exactly_negatives = false;
        }
    }
    let class = if !p.is_orientable() && alternates_exactly_negatives {
        CurveClass::Orienting
    } else if sided == Sidedness::TwoSided && !alternates_any {
        CurveClass::Separating
    } else {
        CurveClass::Neither
    };
    Ok(CycleType {
        sidedness: sided,
        class,
    })
}
