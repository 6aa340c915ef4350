//! Combinatorial cross-cap drawings of 2-vertex schemes.
//!
//! A drawing lives on the sphere. Every edge runs from `v2` to `v1` and its
//! word lists the cross-caps it passes, in that direction. Around a
//! cross-cap with `m` transits the `2m` strand endpoints appear in a cyclic
//! order in which both ends of a transit are exactly `m` apart. Rotations at
//! `v1`, `v2` and the cross-caps are all counter-clockwise.
//!
//! Replacing each cross-cap by a vertex gives the derived map; the drawing is
//! valid exactly when the derived map is a connected planar map.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::curves::{CurveClass, CycleType, Sidedness};
use crate::error::DrawingError;
use crate::hp::ReversalPath;
use crate::map::{MapEdge, RotationSystemMap};
use crate::scheme::{SignedCyclicPermutation, Vertex};

/// Which end of a transit: the one facing `v2` (`In`) or `v1` (`Out`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    In,
    Out,
}

/// One endpoint of the `occurrence`-th transit of `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, usize, Side)", into = "(u32, usize, Side)")]
pub struct TransitEnd {
    pub edge: u32,
    pub occurrence: usize,
    pub side: Side,
}

impl TransitEnd {
    pub fn new(edge: u32, occurrence: usize, side: Side) -> Self {
        Self {
            edge,
            occurrence,
            side,
        }
    }

    pub fn partner(self) -> Self {
        let side = match self.side {
            Side::In => Side::Out,
            Side::Out => Side::In,
        };
        Self { side, ..self }
    }
}

impl From<(u32, usize, Side)> for TransitEnd {
    fn from((edge, occurrence, side): (u32, usize, Side)) -> Self {
        Self {
            edge,
            occurrence,
            side,
        }
    }
}

impl From<TransitEnd> for (u32, usize, Side) {
    fn from(t: TransitEnd) -> Self {
        (t.edge, t.occurrence, t.side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CrossCapDrawing {
    pub crosscaps: usize,
    /// Counter-clockwise order of edges at `v1`.
    pub v1: Vec<u32>,
    /// Counter-clockwise order of edges at `v2`.
    pub v2: Vec<u32>,
    /// Cross-caps visited by each edge, from `v2` to `v1`.
    pub words: BTreeMap<u32, Vec<usize>>,
    pub crosscap_orders: Vec<Vec<TransitEnd>>,
}

/// Rotation systems at the two vertices together with edge signatures,
/// with edge names kept. Equality up to flips is [`LabeledScheme::equivalent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledScheme {
    pub v1: Vec<u32>,
    pub v2: Vec<u32>,
    pub signs: BTreeMap<u32, i32>,
}

fn cyclic_eq(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(k) => a
            .iter()
            .enumerate()
            .all(|(i, &x)| b[(i + k) % b.len()] == x),
        None => false,
    }
}

impl LabeledScheme {
    /// The rotation system used for face tracing: `v1` is `1..n`, `v2` the
    /// reversed entries.
    pub fn of(p: &SignedCyclicPermutation) -> Self {
        let v1 = (1..=p.n() as u32).collect();
        let v2 = p.entries().iter().rev().map(|x| x.unsigned_abs()).collect();
        let signs = p
            .entries()
            .iter()
            .map(|&x| (x.unsigned_abs(), x.signum()))
            .collect();
        Self { v1, v2, signs }
    }

    pub fn flip(&self, v: Vertex) -> Self {
        let mut out = self.clone();
        match v {
            Vertex::V1 => out.v1.reverse(),
            Vertex::V2 => out.v2.reverse(),
        }
        for s in out.signs.values_mut() {
            *s = -*s;
        }
        out
    }

    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        out.v1.reverse();
        out.v2.reverse();
        out
    }

    /// The four flip images, starting with `self`.
    pub fn flip_class(&self) -> [Self; 4] {
        let a = self.flip(Vertex::V1);
        let b = self.flip(Vertex::V2);
        let c = self.mirror();
        [self.clone(), a, b, c]
    }

    /// Same rotations (as cyclic orders) and same signatures.
    pub fn same_as(&self, other: &Self) -> bool {
        self.signs == other.signs
            && cyclic_eq(&self.v1, &other.v1)
            && cyclic_eq(&self.v2, &other.v2)
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.flip_class().iter().any(|f| f.same_as(other))
    }

    /// Keeps only the given edges.
    pub fn restrict(&self, keep: &BTreeSet<u32>) -> Self {
        Self {
            v1: self
                .v1
                .iter()
                .copied()
                .filter(|e| keep.contains(e))
                .collect(),
            v2: self
                .v2
                .iter()
                .copied()
                .filter(|e| keep.contains(e))
                .collect(),
            signs: self
                .signs
                .iter()
                .filter(|(e, _)| keep.contains(e))
                .map(|(&e, &s)| (e, s))
                .collect(),
        }
    }

    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Self {
        let m = |e: &u32| *map.get(e).unwrap_or(e);
        Self {
            v1: self.v1.iter().map(m).collect(),
            v2: self.v2.iter().map(m).collect(),
            signs: self.signs.iter().map(|(e, &s)| (m(e), s)).collect(),
        }
    }

    /// The signed cyclic permutation with the same rotation system, edges
    /// renamed by their rank in `v1` counted from the smallest label.
    pub fn to_scheme(&self) -> Result<SignedCyclicPermutation, DrawingError> {
        let first = self
            .v1
            .iter()
            .enumerate()
            .min_by_key(|&(_, &e)| e)
            .map_or(0, |(k, _)| k);
        let len = self.v1.len();
        let rank: BTreeMap<u32, i32> = (0..len)
            .map(|k| (self.v1[(first + k) % len], k as i32 + 1))
            .collect();
        let mut entries = Vec::with_capacity(self.v2.len());
        for e in self.v2.iter().rev() {
            let r = rank
                .get(e)
                .ok_or_else(|| DrawingError::Malformed(format!("edge {e} missing at v1")))?;
            let s = self
                .signs
                .get(e)
                .ok_or_else(|| DrawingError::Malformed(format!("edge {e} has no signature")))?;
            entries.push(s * r);
        }
        Ok(SignedCyclicPermutation::new(entries)?)
    }
}

/// A failed validity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Structure(String),
    NotAntipodal {
        crosscap: usize,
        edge: u32,
        occurrence: usize,
    },
    Disconnected,
    NotPlanar {
        euler_genus: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CrossCapDrawing {
    /// A drawing with no cross-caps: parallel edges, `v2` listing them in
    /// the reverse of their `v1` order.
    pub fn planar(v1: Vec<u32>) -> Self {
        let mut v2 = v1.clone();
        v2.reverse();
        let words = v1.iter().map(|&e| (e, Vec::new())).collect();
        Self {
            crosscaps: 0,
            v1,
            v2,
            words,
            crosscap_orders: Vec::new(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, e: u32) -> &[usize] {
        self.words.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn transit_count(&self) -> usize {
        self.words.values().map(Vec::len).sum()
    }

    fn structure_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let keys: BTreeSet<u32> = self.words.keys().copied().collect();
        for (name, rot) in [("v1", &self.v1), ("v2", &self.v2)] {
            let set: BTreeSet<u32> = rot.iter().copied().collect();
            if set.len() != rot.len() || set != keys {
                errs.push(format!(
                    "rotation at {name} does not list every edge exactly once"
                ));
            }
        }
        if self.crosscap_orders.len() != self.crosscaps {
            errs.push(format!(
                "{} cross-cap orders for {} cross-caps",
                self.crosscap_orders.len(),
                self.crosscaps
            ));
            return errs;
        }
        let mut expected: Vec<BTreeSet<TransitEnd>> = vec![BTreeSet::new(); self.crosscaps];
        for (&e, w) in &self.words {
            for (k, &c) in w.iter().enumerate() {
                if c >= self.crosscaps {
                    errs.push(format!("edge {e} visits unknown cross-cap {c}"));
                    continue;
                }
                expected[c].insert(TransitEnd::new(e, k, Side::In));
                expected[c].insert(TransitEnd::new(e, k, Side::Out));
            }
        }
        for (c, order) in self.crosscap_orders.iter().enumerate() {
            let got: BTreeSet<TransitEnd> = order.iter().copied().collect();
            if got.len() != order.len() || got != expected[c] {
                errs.push(format!(
                    "order at cross-cap {c} does not match the edge words"
                ));
            }
        }
        errs
    }

    /// The derived map: vertex 0 is `v1`, vertex 1 is `v2`, vertex `2 + c`
    /// is cross-cap `c`. Map edge ids follow edges in label order, then
    /// segments along the word.
    pub fn derived_map(&self) -> Result<RotationSystemMap, DrawingError> {
        if let Some(e) = self.structure_errors().into_iter().next() {
            return Err(DrawingError::Malformed(e));
        }
        let mut first_segment = BTreeMap::new();
        let mut edges = Vec::with_capacity(self.edge_count() + self.transit_count());
        for (&e, w) in &self.words {
            first_segment.insert(e, edges.len());
            let mut from = 1;
            for &c in w {
                edges.push(MapEdge {
                    ends: [from, 2 + c],
                    sign: 1,
                });
                from = 2 + c;
            }
            edges.push(MapEdge {
                ends: [from, 0],
                sign: 1,
            });
        }
        let seg = |e: u32, k: usize| first_segment[&e] + k;
        let mut rotations = vec![Vec::new(); 2 + self.crosscaps];
        rotations[0] = self
            .v1
            .iter()
            .map(|&e| 2 * seg(e, self.word(e).len()) + 1)
            .collect();
        rotations[1] = self.v2.iter().map(|&e| 2 * seg(e, 0)).collect();
        for (c, order) in self.crosscap_orders.iter().enumerate() {
            rotations[2 + c] = order
                .iter()
                .map(|t| match t.side {
                    Side::In => 2 * seg(t.edge, t.occurrence) + 1,
                    Side::Out => 2 * seg(t.edge, t.occurrence + 1),
                })
                .collect();
        }
        Ok(RotationSystemMap {
            vertex_count: 2 + self.crosscaps,
            edges,
            rotations,
        })
    }

    pub fn validate(&self) -> ValidityReport {
        let mut violations: Vec<Violation> = self
            .structure_errors()
            .into_iter()
            .map(Violation::Structure)
            .collect();
        if !violations.is_empty() {
            return ValidityReport { violations };
        }
        for (c, order) in self.crosscap_orders.iter().enumerate() {
            let m = order.len() / 2;
            for (k, t) in order.iter().enumerate() {
                if t.side == Side::In && order[(k + m) % order.len()] != t.partner() {
                    violations.push(Violation::NotAntipodal {
                        crosscap: c,
                        edge: t.edge,
                        occurrence: t.occurrence,
                    });
                }
            }
        }
        let map = self.derived_map().expect("structure checked");
        match map.euler_genus() {
            Err(_) => violations.push(Violation::Disconnected),
            Ok(0) => {}
            Ok(g) => violations.push(Violation::NotPlanar { euler_genus: g }),
        }
        ValidityReport { violations }
    }

    fn ensure_valid(&self) -> Result<(), DrawingError> {
        let r = self.validate();
        match r.violations.first() {
            None => Ok(()),
            Some(v) => Err(DrawingError::Invalid(format!("{v:?}"))),
        }
    }

    /// Rotations at the two vertices with signatures `(-1)^{|word|}`.
    pub fn labeled_scheme(&self) -> LabeledScheme {
        let signs = self
            .words
            .iter()
            .map(|(&e, w)| (e, if w.len() % 2 == 0 { 1 } else { -1 }))
            .collect();
        LabeledScheme {
            v1: self.v1.clone(),
            v2: self.v2.clone(),
            signs,
        }
    }

    pub fn induced_scheme(&self) -> Result<SignedCyclicPermutation, DrawingError> {
        self.ensure_valid()?;
        self.labeled_scheme().to_scheme()
    }

    /// Edge `k` of the drawing is edge `k` of `p`; rotations and signatures
    /// must agree up to flips.
    pub fn realizes(&self, p: &SignedCyclicPermutation) -> Result<bool, DrawingError> {
        self.ensure_valid()?;
        Ok(self.labeled_scheme().equivalent(&LabeledScheme::of(p)))
    }

    fn repeats_a_crosscap(&self) -> bool {
        self.words.values().any(|w| {
            let s: BTreeSet<usize> = w.iter().copied().collect();
            s.len() != w.len()
        })
    }

    pub fn is_perfect(&self, p: &SignedCyclicPermutation) -> Result<bool, DrawingError> {
        Ok(
            self.realizes(p)?
                && self.crosscaps == p.crosscap_number()
                && !self.repeats_a_crosscap(),
        )
    }

    pub fn is_fantastic(&self, p: &SignedCyclicPermutation) -> Result<bool, DrawingError> {
        Ok(self.is_perfect(p)? && self.words.values().all(|w| !w.is_empty()))
    }

    /// Classifies the cycle `a·b` by its transit counts: one-sided iff the
    /// total is odd, orienting iff it enters every cross-cap an odd number
    /// of times, separating iff an even number of times.
    pub fn curve_parity_class(&self, a: u32, b: u32) -> Result<CycleType, DrawingError> {
        for e in [a, b] {
            if !self.words.contains_key(&e) {
                return Err(DrawingError::Malformed(format!("no edge {e}")));
            }
        }
        if a == b {
            return Err(DrawingError::Malformed(
                "a cycle needs two distinct edges".into(),
            ));
        }
        self.ensure_valid()?;
        let mut count = vec![0usize; self.crosscaps];
        for e in [a, b] {
            for &c in self.word(e) {
                count[c] += 1;
            }
        }
        let total: usize = count.iter().sum();
        let sidedness = if total % 2 == 1 {
            Sidedness::OneSided
        } else {
            Sidedness::TwoSided
        };
        let class = if self.crosscaps > 0 && count.iter().all(|k| k % 2 == 1) {
            CurveClass::Orienting
        } else if count.iter().all(|k| k % 2 == 0) {
            CurveClass::Separating
        } else {
            CurveClass::Neither
        };
        Ok(CycleType { sidedness, class })
    }

    /// Reflection of the sphere: every rotation is reversed, words are kept.
    pub fn mirror(&self) -> Self {
        let mut d = self.clone();
        d.v1.reverse();
        d.v2.reverse();
        for o in &mut d.crosscap_orders {
            o.reverse();
        }
        d
    }

    /// Renames edges; labels absent from `map` are kept.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Self {
        let m = |e: u32| *map.get(&e).unwrap_or(&e);
        Self {
            crosscaps: self.crosscaps,
            v1: self.v1.iter().map(|&e| m(e)).collect(),
            v2: self.v2.iter().map(|&e| m(e)).collect(),
            words: self.words.iter().map(|(&e, w)| (m(e), w.clone())).collect(),
            crosscap_orders: self
                .crosscap_orders
                .iter()
                .map(|o| {
                    o.iter()
                        .map(|t| TransitEnd {
                            edge: m(t.edge),
                            ..*t
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Deletes an edge. Cross-caps it alone used stay behind, empty.
    pub fn remove_edge(&mut self, e: u32) {
        self.words.remove(&e);
        self.v1.retain(|&x| x != e);
        self.v2.retain(|&x| x != e);
        for o in &mut self.crosscap_orders {
            o.retain(|t| t.edge != e);
        }
    }

    /// Drops cross-caps with no transit and renumbers the rest.
    pub fn remove_empty_crosscaps(&mut self) {
        let mut new_id = vec![usize::MAX; self.crosscaps];
        let mut next = 0;
        for (c, o) in self.crosscap_orders.iter().enumerate() {
            if !o.is_empty() {
                new_id[c] = next;
                next += 1;
            }
        }
        self.crosscap_orders.retain(|o| !o.is_empty());
        for w in self.words.values_mut() {
            for c in w.iter_mut() {
                *c = new_id[*c];
            }
        }
        self.crosscaps = next;
    }

    /// Renumbers cross-caps so that they appear in order of first use when
    /// reading edges in label order.
    pub fn normalize_crosscap_ids(&mut self) {
        let mut new_id = vec![usize::MAX; self.crosscaps];
        let mut next = 0;
        for w in self.words.values() {
            for &c in w {
                if new_id[c] == usize::MAX {
                    new_id[c] = next;
                    next += 1;
                }
            }
        }
        for slot in new_id.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = next;
            next += 1;
        }
        let mut orders = vec![Vec::new(); self.crosscaps];
        for (c, o) in self.crosscap_orders.drain(..).enumerate() {
            orders[new_id[c]] = o;
        }
        self.crosscap_orders = orders;
        for w in self.words.values_mut() {
            for c in w.iter_mut() {
                *c = new_id[*c];
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DrawingJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, DrawingError> {
        let j: DrawingJson =
            serde_json::from_str(text).map_err(|e| DrawingError::Json(e.to_string()))?;
        Self::try_from(j)
    }
}

impl TryFrom<DrawingJson> for CrossCapDrawing {
    type Error = DrawingError;

    fn try_from(j: DrawingJson) -> Result<Self, DrawingError> {
        if j.format != 1 {
            return Err(DrawingError::Json(format!(
                "unsupported format {}",
                j.format
            )));
        }
        let d = Self {
            crosscaps: j.crosscaps,
            v1: j.v1,
            v2: j.v2,
            words: j.words,
            crosscap_orders: j.crosscap_orders,
        };
        if let Some(e) = d.structure_errors().into_iter().next() {
            return Err(DrawingError::Malformed(e));
        }
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
struct DrawingJson {
    format: u32,
    crosscaps: usize,
    v1: Vec<u32>,
    v2: Vec<u32>,
    words: BTreeMap<u32, Vec<usize>>,
    crosscap_orders: Vec<Vec<TransitEnd>>,
}

impl From<&CrossCapDrawing> for DrawingJson {
    fn from(d: &CrossCapDrawing) -> Self {
        Self {
            format: 1,
            crosscaps: d.crosscaps,
            v1: d.v1.clone(),
            v2: d.v2.clone(),
            words: d.words.clone(),
            crosscap_orders: d.crosscap_orders.clone(),
        }
    }
}

impl Serialize for CrossCapDrawing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DrawingJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CrossCapDrawing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Self::try_from(DrawingJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// The drawing traced by a sequence of reversals: edges are strands on a
/// cylinder from `v2` to `v1`, each reversal crosses its strands at one
/// cross-cap. The terminal permutation may be anything.
pub fn monotone_drawing(path: &ReversalPath) -> Result<CrossCapDrawing, DrawingError> {
    let states = path.permutations()?;
    let mut words: BTreeMap<u32, Vec<usize>> = path
        .start
        .entries()
        .iter()
        .map(|x| (x.unsigned_abs(), Vec::new()))
        .collect();
    let mut orders = Vec::with_capacity(path.len());
    for (t, r) in path.steps.iter().enumerate() {
        let strands = r.elements(&states[t]);
        let mut ins = Vec::with_capacity(strands.len());
        let mut outs = Vec::with_capacity(strands.len());
        for x in &strands {
            let e = x.unsigned_abs();
            let w = words.get_mut(&e).expect("edge present");
            ins.push(TransitEnd::new(e, w.len(), Side::In));
            outs.push(TransitEnd::new(e, w.len(), Side::Out));
            w.push(t);
        }
        ins.reverse();
        outs.reverse();
        ins.extend(outs);
        orders.push(ins);
    }
    let terminal = states.last().expect("nonempty");
    Ok(CrossCapDrawing {
        crosscaps: path.len(),
        v1: terminal
            .entries()
            .iter()
            .rev()
            .map(|x| x.unsigned_abs())
            .collect(),
        v2: path
            .start
            .entries()
            .iter()
            .map(|x| x.unsigned_abs())
            .collect(),
        words,
        crosscap_orders: orders,
    })
}

/// One cross-cap per reversal of a path ending at the identity.
pub fn from_reversal_path(path: &ReversalPath) -> Result<CrossCapDrawing, DrawingError> {
    let end = path.terminal()?;
    if !end.is_sorted() {
        return Err(DrawingError::Malformed(format!(
            "path ends at {end}, not the identity"
        )));
    }
    monotone_drawing(path)
}

/// The same path run on the `v2`-flipped permutations.
fn flipped_path(path: &ReversalPath) -> Result<ReversalPath, DrawingError> {
    let states = path.permutations()?;
    let mut steps = Vec::with_capacity(path.len());
    for (r, q) in path.steps.iter().zip(&states) {
        let f = q.flip(Vertex::V2);
        let last = r.elements(q).last().expect("nonempty").unsigned_abs();
        steps.push(crate::hp::Reversal {
            start: f.position(last),
            len: r.len,
        });
    }
    Ok(ReversalPath {
        start: path.start.flip(Vertex::V2),
        steps,
    })
}

/// Glues the monotone drawing of `path` in front of `d`, a drawing of the
/// path's terminal permutation whose edges carry the same names.
pub fn splice_prefix(
    d: &CrossCapDrawing,
    path: &ReversalPath,
) -> Result<CrossCapDrawing, DrawingError> {
    if path.is_empty() {
        return Ok(d.clone());
    }
    let flipped = flipped_path(path)?;
    for dd in [d.clone(), d.mirror()] {
        let lab = dd.labeled_scheme();
        for p in [path, &flipped] {
            let end = p.terminal()?;
            let order: Vec<u32> = end.entries().iter().map(|x| x.unsigned_abs()).collect();
            let signs_match = end
                .entries()
                .iter()
                .all(|&x| lab.signs.get(&x.unsigned_abs()) == Some(&x.signum()));
            if signs_match && cyclic_eq(&dd.v2, &order) {
                return Ok(glue(&monotone_drawing(p)?, &dd));
            }
        }
    }
    Err(DrawingError::BoundaryMismatch(format!(
        "drawing does not start where the path ends ({})",
        path.terminal()?
    )))
}

fn glue(prefix: &CrossCapDrawing, d: &CrossCapDrawing) -> CrossCapDrawing {
    let k = prefix.crosscaps;
    let mut words = BTreeMap::new();
    for (&e, w) in &d.words {
        let mut full = prefix.word(e).to_vec();
        full.extend(w.iter().map(|c| c + k));
        words.insert(e, full);
    }
    let mut orders = prefix.crosscap_orders.clone();
    for o in &d.crosscap_orders {
        orders.push(
            o.iter()
                .map(|t| TransitEnd {
                    occurrence: t.occurrence + prefix.word(t.edge).len(),
                    ..*t
                })
                .collect(),
        );
    }
    CrossCapDrawing {
        crosscaps: k + d.crosscaps,
        v1: d.v1.clone(),
        v2: prefix.v2.clone(),
        words,
        crosscap_orders: orders,
    }
}
