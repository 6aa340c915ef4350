//! Inserting edges into a partial cross-cap drawing.
//!
//! A [`Sketch`] is the derived map of a drawing under construction, kept
//! planar at every step. An edge is drawn from `v2` one segment at a time:
//! the pen sits in a corner, and a segment may only join two corners of the
//! same face (or reach a vertex that has nothing attached yet). Entering a
//! cross-cap fixes the exit corner, which is antipodal to the entry.

use std::collections::BTreeMap;

use crate::drawing::{CrossCapDrawing, Side, TransitEnd};
use crate::error::DrawingError;

const V1: usize = 0;
const V2: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tag {
    V1(u32),
    V2(u32),
    Cap(TransitEnd),
}

/// Where the next dart of the edge in progress will be attached.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Pen {
    pub(crate) vertex: usize,
    pub(crate) gap: usize,
    tag: Tag,
    edge: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct Sketch {
    rot: Vec<Vec<usize>>,
    tag: Vec<Tag>,
    vert: Vec<usize>,
    face: Vec<usize>,
    pub(crate) words: BTreeMap<u32, Vec<usize>>,
}

impl Sketch {
    /// Starts from a drawing that may have empty cross-caps.
    pub(crate) fn new(base: &CrossCapDrawing) -> Result<Self, DrawingError> {
        let map = base.derived_map()?;
        let mut tag = Vec::with_capacity(2 * map.edges.len());
        for (&e, w) in &base.words {
            for k in 0..=w.len() {
                tag.push(if k == 0 {
                    Tag::V2(e)
                } else {
                    Tag::Cap(TransitEnd::new(e, k - 1, Side::Out))
                });
                tag.push(if k == w.len() {
                    Tag::V1(e)
                } else {
                    Tag::Cap(TransitEnd::new(e, k, Side::In))
                });
            }
        }
        let vert = map.edges.iter().flat_map(|m| m.ends).collect();
        let mut s = Self {
            rot: map.rotations,
            tag,
            vert,
            face: Vec::new(),
            words: base.words.clone(),
        };
        s.refresh();
        Ok(s)
    }

    pub(crate) fn crosscaps(&self) -> usize {
        self.rot.len() - 2
    }

    pub(crate) fn cap_is_empty(&self, c: usize) -> bool {
        self.rot[2 + c].is_empty()
    }

    fn refresh(&mut self) {
        let n = self.tag.len();
        let mut pos = vec![0; n];
        for r in &self.rot {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        self.face = vec![usize::MAX; n];
        let mut f = 0;
        for s in 0..n {
            if self.face[s] != usize::MAX {
                continue;
            }
            let mut d = s;
            loop {
                self.face[d] = f;
                let o = d ^ 1;
                let r = &self.rot[self.vert[o]];
                d = r[(pos[o] + 1) % r.len()];
                if d == s {
                    break;
                }
            }
            f += 1;
        }
    }

    /// Face of the corner just before position `gap`; `None` for a bare vertex.
    fn corner_face(&self, v: usize, gap: usize) -> Option<usize> {
        let r = &self.rot[v];
        (!r.is_empty()).then(|| self.face[r[gap % r.len()]])
    }

    fn label(&self, d: usize) -> u32 {
        match self.tag[d] {
            Tag::V1(e) | Tag::V2(e) => e,
            Tag::Cap(t) => t.edge,
        }
    }

    /// Position at which `e` must go so that `v` follows `target`.
    fn gap_for(&self, v: usize, target: &[u32], e: u32) -> usize {
        let r = &self.rot[v];
        let Some(i) = target.iter().position(|&x| x == e) else {
            return 0;
        };
        for k in 1..target.len() {
            let l = target[(i + k) % target.len()];
            if let Some(p) = r.iter().position(|&d| self.label(d) == l) {
                return p;
            }
        }
        0
    }

    pub(crate) fn start(&mut self, e: u32, target_v2: &[u32]) -> Pen {
        self.words.insert(e, Vec::new());
        Pen {
            vertex: V2,
            gap: self.gap_for(V2, target_v2, e),
            tag: Tag::V2(e),
            edge: e,
        }
    }

    fn reachable(&self, pen: &Pen, v: usize, gap: usize) -> bool {
        if pen.vertex == v {
            return false;
        }
        match (
            self.corner_face(pen.vertex, pen.gap),
            self.corner_face(v, gap),
        ) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Gaps of cross-cap `c` the pen can reach.
    pub(crate) fn entry_gaps(&self, pen: &Pen, c: usize) -> Vec<usize> {
        let v = 2 + c;
        let len = self.rot[v].len().max(1);
        (0..len).filter(|&g| self.reachable(pen, v, g)).collect()
    }

    fn connect(&mut self, pen: &Pen, v: usize, gap: usize, t: Tag) {
        let a = self.tag.len();
        self.tag.extend([pen.tag, t]);
        self.vert.extend([pen.vertex, v]);
        self.rot[pen.vertex].insert(pen.gap, a);
        self.rot[v].insert(gap, a + 1);
        self.refresh();
    }

    /// Draws the next segment into cross-cap `c` at `gap` and moves the pen
    /// to the antipodal exit.
    pub(crate) fn enter(&mut self, pen: &Pen, c: usize, gap: usize) -> Pen {
        let e = pen.edge;
        let w = self.words.get_mut(&e).expect("edge started");
        let occ = w.len();
        w.push(c);
        let v = 2 + c;
        let m = self.rot[v].len() / 2;
        self.connect(pen, v, gap, Tag::Cap(TransitEnd::new(e, occ, Side::In)));
        let exit = (gap + m + 1) % (2 * m + 1);
        Pen {
            vertex: v,
            gap: exit,
            tag: Tag::Cap(TransitEnd::new(e, occ, Side::Out)),
            edge: e,
        }
    }

    /// Closes the edge at `v1`, if its prescribed corner is reachable.
    pub(crate) fn finish(&mut self, pen: &Pen, target_v1: &[u32]) -> bool {
        let gap = self.gap_for(V1, target_v1, pen.edge);
        if !self.reachable(pen, V1, gap) {
            return false;
        }
        self.connect(pen, V1, gap, Tag::V1(pen.edge));
        true
    }

    pub(crate) fn to_drawing(&self) -> CrossCapDrawing {
        let labels = |v: usize| self.rot[v].iter().map(|&d| self.label(d)).collect();
        let crosscap_orders = self.rot[2..]
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&d| match self.tag[d] {
                        Tag::Cap(t) => t,
                        other => unreachable!("vertex dart {other:?} at a cross-cap"),
                    })
                    .collect()
            })
            .collect();
        CrossCapDrawing {
            crosscaps: self.crosscaps(),
            v1: labels(V1),
            v2: labels(V2),
            words: self.words.clone(),
            crosscap_orders,
        }
    }
}

/// An edge to add, with candidate words tried in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub edge: u32,
    pub words: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Routed {
    Found(CrossCapDrawing),
    Impossible,
    OutOfBudget(usize),
}

enum Step {
    Done(Box<Sketch>),
    Fail,
    Budget,
}

struct Router<'a> {
    v1: &'a [u32],
    v2: &'a [u32],
    edges: &'a [Insertion],
    nodes: usize,
    budget: usize,
}

impl Router<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    fn edge(&mut self, s: &Sketch, i: usize) -> Step {
        let Some(ins) = self.edges.get(i) else {
            return Step::Done(Box::new(s.clone()));
        };
        for w in &ins.words {
            let mut t = s.clone();
            let pen = t.start(ins.edge, self.v2);
            match self.walk(t, i, w, pen) {
                Step::Fail => {}
                other => return other,
            }
        }
        Step::Fail
    }

    fn walk(&mut self, s: Sketch, i: usize, word: &[usize], pen: Pen) -> Step {
        if !self.tick() {
            return Step::Budget;
        }
        let Some((&c, rest)) = word.split_first() else {
            let mut t = s;
            return if t.finish(&pen, self.v1) {
                self.edge(&t, i + 1)
            } else {
                Step::Fail
            };
        };
        for gap in s.entry_gaps(&pen, c) {
            let mut t = s.clone();
            let next = t.enter(&pen, c, gap);
            match self.walk(t, i, rest, next) {
                Step::Fail => {}
                other => return other,
            }
        }
        Step::Fail
    }
}

/// Adds `edges` to `base` so that the rotations at `v1` and `v2` become the
/// given cyclic orders. `base` may carry empty cross-caps; the result is
/// returned only if it is a valid drawing.
pub fn insert_edges(
    base: &CrossCapDrawing,
    v1: &[u32],
    v2: &[u32],
    edges: &[Insertion],
    budget: usize,
) -> Result<Routed, DrawingError> {
    let s = Sketch::new(base)?;
    let mut r = Router {
        v1,
        v2,
        edges,
        nodes: 0,
        budget,
    };
    Ok(match r.edge(&s, 0) {
        Step::Done(t) => {
            let d = t.to_drawing();
            if d.validate().ok() {
                Routed::Found(d)
            } else {
                Routed::Impossible
            }
        }
        Step::Fail => Routed::Impossible,
        Step::Budget => Routed::OutOfBudget(r.nodes),
    })
}
