//! Exhaustive backtracking search for perfect cross-cap drawings.
//!
//! Edges are drawn one after another. Each edge picks its next cross-cap
//! and the corner where it enters, one segment at a time, on a sketch that
//! stays planar. Two prunings keep this small: empty cross-caps are
//! interchangeable, so only the first empty one is ever tried, and every
//! cycle `a·b` must enter each cross-cap an odd number of times when it is
//! orienting and an even number of times when it is separating.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::curves::{cycle_type, CurveClass};
use crate::drawing::{CrossCapDrawing, LabeledScheme};
use crate::router::{Pen, Sketch};
use crate::scheme::{SignedCyclicPermutation, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        drawing: CrossCapDrawing,
        nodes: usize,
    },
    Exhausted {
        nodes: usize,
    },
    BudgetExceeded {
        nodes: usize,
    },
}

/// What to look for.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub scheme: SignedCyclicPermutation,
    pub crosscaps: usize,
    /// Lower bounds on the number of transits of particular edges.
    pub min_transits: BTreeMap<u32, usize>,
    pub budget: usize,
    /// Prune with the parity of each cycle `a·b` at every cross-cap.
    pub class_pruning: bool,
}

impl SearchSpec {
    pub fn perfect(p: &SignedCyclicPermutation, budget: usize) -> Self {
        Self {
            scheme: p.clone(),
            crosscaps: p.crosscap_number(),
            min_transits: BTreeMap::new(),
            budget,
            class_pruning: true,
        }
    }

    pub fn fantastic(p: &SignedCyclicPermutation, budget: usize) -> Self {
        let min_transits = (1..=p.n() as u32).map(|e| (e, 1)).collect();
        Self {
            min_transits,
            ..Self::perfect(p, budget)
        }
    }
}

/// Whether the search ran to completion, and how many nodes it used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub complete: bool,
    pub stopped: bool,
    pub nodes: usize,
}

#[derive(PartialEq, Eq)]
enum Flow {
    Go,
    Stop,
    Budget,
}

struct Searcher<'a, F> {
    spec: &'a SearchSpec,
    target: LabeledScheme,
    order: Vec<u32>,
    class: BTreeMap<(u32, u32), CurveClass>,
    nodes: usize,
    visit: F,
}

impl<F: FnMut(&CrossCapDrawing) -> bool> Searcher<'_, F> {
    fn class(&self, a: u32, b: u32) -> CurveClass {
        self.class[&(a.min(b), a.max(b))]
    }

    fn drawn(&self, i: usize) -> &[u32] {
        &self.order[..i]
    }

    fn step_ok(&self, s: &Sketch, i: usize, e: u32, c: usize) -> bool {
        !self.spec.class_pruning
            || self.drawn(i).iter().all(|&b| {
                let has = s.words[&b].contains(&c);
                match self.class(e, b) {
                    CurveClass::Orienting => !has,
                    CurveClass::Separating => has,
                    CurveClass::Neither => true,
                }
            })
    }

    fn finish_ok(&self, s: &Sketch, i: usize, e: u32) -> bool {
        let g = self.spec.crosscaps;
        let mine: BTreeSet<usize> = s.words[&e].iter().copied().collect();
        !self.spec.class_pruning
            || self.drawn(i).iter().all(|&b| {
                let theirs: BTreeSet<usize> = s.words[&b].iter().copied().collect();
                let all_even = mine == theirs;
                let all_odd = g > 0 && mine.is_disjoint(&theirs) && mine.len() + theirs.len() == g;
                match self.class(e, b) {
                    CurveClass::Orienting => all_odd,
                    CurveClass::Separating => all_even,
                    CurveClass::Neither => !all_odd && !all_even,
                }
            })
    }

    fn edge(&mut self, s: &Sketch, i: usize) -> Flow {
        if i == self.order.len() {
            if (0..self.spec.crosscaps).any(|c| s.cap_is_empty(c)) {
                return Flow::Go;
            }
            let d = s.to_drawing();
            debug_assert!(d.validate().ok());
            return if (self.visit)(&d) {
                Flow::Stop
            } else {
                Flow::Go
            };
        }
        let e = self.order[i];
        let mut t = s.clone();
        let pen = t.start(e, &self.target.v2);
        self.walk(t, i, pen)
    }

    fn walk(&mut self, s: Sketch, i: usize, pen: Pen) -> Flow {
        self.nodes += 1;
        if self.nodes > self.spec.budget {
            return Flow::Budget;
        }
        let e = self.order[i];
        let word = &s.words[&e];
        let len = word.len();
        let odd = self.target.signs[&e] < 0;
        let min = self.spec.min_transits.get(&e).copied().unwrap_or(0);
        if (len % 2 == 1) == odd && len >= min && self.finish_ok(&s, i, e) {
            let mut t = s.clone();
            if t.finish(&pen, &self.target.v1) {
                let f = self.edge(&t, i + 1);
                if f != Flow::Go {
                    return f;
                }
            }
        }
        let g = self.spec.crosscaps;
        if len + 1 > g || ((len + 1) % 2 == 1) != odd && len + 2 > g {
            return Flow::Go;
        }
        let mut tried_empty = false;
        for c in 0..g {
            if word.contains(&c) {
                continue;
            }
            if s.cap_is_empty(c) {
                if tried_empty {
                    continue;
                }
                tried_empty = true;
            }
            if !self.step_ok(&s, i, e, c) {
                continue;
            }
            for gap in s.entry_gaps(&pen, c) {
                let mut t = s.clone();
                let next = t.enter(&pen, c, gap);
                let f = self.walk(t, i, next);
                if f != Flow::Go {
                    return f;
                }
            }
        }
        Flow::Go
    }
}

/// Edges ordered so that each next one is tied to as many drawn ones as
/// possible by orienting or separating cycles.
fn edge_order(n: u32, class: &BTreeMap<(u32, u32), CurveClass>) -> Vec<u32> {
    let mut order = vec![1];
    let mut rest: Vec<u32> = (2..=n).collect();
    while !rest.is_empty() {
        let ties = |e: u32| {
            order
                .iter()
                .filter(|&&b| class[&(b.min(e), b.max(e))] != CurveClass::Neither)
                .count()
        };
        let (k, _) = rest
            .iter()
            .enumerate()
            .max_by_key(|&(k, &e)| (ties(e), std::cmp::Reverse(k)))
            .expect("nonempty");
        order.push(rest.remove(k));
    }
    order
}

/// Runs the search, calling `visit` on every drawing found (one per mirror
/// pair). `visit` returns `true` to stop.
pub fn search_drawings<F: FnMut(&CrossCapDrawing) -> bool>(
    spec: &SearchSpec,
    visit: F,
) -> SearchStats {
    let p = &spec.scheme;
    let n = p.n() as u32;
    let mut class = BTreeMap::new();
    for a in 1..=n {
        for b in a + 1..=n {
            class.insert((a, b), cycle_type(p, a, b).expect("valid pair").class);
        }
    }
    let order = edge_order(n, &class);
    let base = LabeledScheme::of(p);
    let mut empty = CrossCapDrawing {
        crosscaps: spec.crosscaps,
        ..Default::default()
    };
    empty.crosscap_orders = vec![Vec::new(); spec.crosscaps];
    let sketch = Sketch::new(&empty).expect("empty drawing is well formed");
    let mut nodes = 0;
    let mut visit = visit;
    // A drawing realizing either remaining flip is the mirror image of one
    // realizing these two.
    for target in [base.clone(), base.flip(Vertex::V1)] {
        let mut s = Searcher {
            spec,
            target,
            order: order.clone(),
            class: class.clone(),
            nodes,
            visit: &mut visit,
        };
        let flow = s.edge(&sketch, 0);
        nodes = s.nodes;
        match flow {
            Flow::Go => {}
            Flow::Stop => {
                return SearchStats {
                    complete: false,
                    stopped: true,
                    nodes,
                }
            }
            Flow::Budget => {
                return SearchStats {
                    complete: false,
                    stopped: false,
                    nodes,
                }
            }
        }
    }
    SearchStats {
        complete: true,
        stopped: false,
        nodes,
    }
}

/// Looks for a drawing with the scheme's cross-cap number in which no edge
/// enters a cross-cap twice.
pub fn exhaustive_perfect_search(p: &SignedCyclicPermutation, budget: usize) -> SearchOutcome {
    find(&SearchSpec::perfect(p, budget))
}

pub fn find(spec: &SearchSpec) -> SearchOutcome {
    let mut found = None;
    let stats = search_drawings(spec, |d| {
        found = Some(d.clone());
        true
    });
    match found {
        Some(drawing) => SearchOutcome::Found {
            drawing,
            nodes: stats.nodes,
        },
        None if stats.complete => SearchOutcome::Exhausted { nodes: stats.nodes },
        None => SearchOutcome::BudgetExceeded { nodes: stats.nodes },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::perm;

    #[test]
    fn projective_pair() {
        let p = perm("1 -2");
        let SearchOutcome::Found { drawing, .. } = exhaustive_perfect_search(&p, 10_000) else {
            panic!()
        };
        assert!(drawing.is_perfect(&p).unwrap());
        assert_eq!(drawing.crosscaps, 1);
    }

    #[test]
    fn genus_two_fantastic() {
        let p = perm("1 -2 3 -4");
        let SearchOutcome::Found { drawing, .. } = find(&SearchSpec::fantastic(&p, 1_000_000))
        else {
            panic!()
        };
        assert!(drawing.is_fantastic(&p).unwrap());
    }
}
