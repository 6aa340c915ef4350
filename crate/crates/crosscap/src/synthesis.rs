//! Building perfect cross-cap drawings.
//!
//! The scheme is reduced first. The reduced root gets a fantastic drawing
//! (or, for the few small roots without one, a searched drawing in which
//! every edge carrying a block still enters a cross-cap). The reduction is
//! then undone level by level: homotopic copies follow the word of the edge
//! they copy, and a block sitting on an edge replaces one of the edge's
//! cross-caps by a drawing of the block.
//!
//! Every edge insertion goes through the router, and every stage is
//! checked against the target rotation system before moving on.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::assets::{base_drawings, exceptional_forms};
use crate::blocks::{
    is_reduced, non_trivial_blocks, reduce, BlockSign, ClusterKind, ReductionLevel, ReductionTree,
};
use crate::curves::{cycle_type, CurveClass};
use crate::drawing::{
    from_reversal_path, splice_prefix, CrossCapDrawing, LabeledScheme, Side, TransitEnd,
};
use crate::enumerate::census_canonical;
use crate::error::SynthesisError;
use crate::hp::{homotopizing_reversals, hp_sort, interleaving_graph, Reversal, ReversalPath};
use crate::router::{insert_edges, Insertion, Routed};
use crate::scheme::{SignedCyclicPermutation, Vertex};
use crate::search::{find, SearchOutcome, SearchSpec};

/// Node budget for each call to the router.
pub const ROUTE_BUDGET: usize = 2_000_000;
/// Node budget for the descent toward three cross-caps.
pub const DESCENT_BUDGET: usize = 100_000;
/// Node budget for a drawing search when no construction applies.
pub const SEARCH_BUDGET: usize = 50_000_000;

fn internal(msg: impl Into<String>) -> SynthesisError {
    SynthesisError::InternalInvariantViolated(msg.into())
}

fn route(
    base: &CrossCapDrawing,
    target: &LabeledScheme,
    edges: &[Insertion],
) -> Result<Option<CrossCapDrawing>, SynthesisError> {
    let mut present: BTreeSet<u32> = base.words.keys().copied().collect();
    present.extend(edges.iter().map(|i| i.edge));
    let t = target.restrict(&present);
    Ok(
        match insert_edges(base, &t.v1, &t.v2, edges, ROUTE_BUDGET)? {
            Routed::Found(d) if d.labeled_scheme().same_as(&t) => Some(d),
            _ => None,
        },
    )
}

/// `p` and `q` are the same graph up to renaming edges and flips.
pub fn same_shape(p: &SignedCyclicPermutation, q: &SignedCyclicPermutation) -> bool {
    p.n() == q.n() && {
        let key = census_canonical(p);
        q.flip_class().iter().any(|f| census_canonical(f) == key)
    }
}

/// The reduced schemes with no fantastic drawing: a single edge, the
/// projective pair, and `(1,3̄,4̄,2)`.
pub fn is_fantastic_exception(p: &SignedCyclicPermutation) -> bool {
    p.n() == 1
        || ["1 -2", "1 -3 -4 2"]
            .iter()
            .any(|s| same_shape(p, &crate::scheme::perm(s)))
}

/// `steps` reversals, each making a reversible pair homotopic, after each of
/// which the permutation is still non-orientable with no non-trivial block.
/// Pairs of maximal score are tried first, so this is the sorting path
/// whenever that path exists; a few permutations (the smallest is
/// `(1,2̄,3,5,6̄,7,4)`) need a different choice or have none at all.
pub fn descent(p: &SignedCyclicPermutation, steps: usize) -> Option<ReversalPath> {
    fn go(
        cur: &SignedCyclicPermutation,
        left: usize,
        out: &mut Vec<Reversal>,
        budget: &mut usize,
    ) -> bool {
        if left == 0 {
            return true;
        }
        let g = interleaving_graph(cur);
        let mut pairs: Vec<(usize, u32)> = g
            .reversible_vertices()
            .into_iter()
            .filter_map(|v| Some((g.score(v).ok()?, v)))
            .collect();
        pairs.sort_by_key(|&(sc, v)| (std::cmp::Reverse(sc), v));
        let eg = cur.euler_genus();
        for (_, v) in pairs {
            let Ok(options) = homotopizing_reversals(cur, v) else {
                continue;
            };
            for r in options {
                if *budget == 0 {
                    return false;
                }
                *budget -= 1;
                let Ok(next) = r.apply(cur) else { continue };
                if next.euler_genus() + 1 != eg
                    || next.is_orientable()
                    || !non_trivial_blocks(&next).is_empty()
                {
                    continue;
                }
                out.push(r);
                if go(&next, left - 1, out, budget) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    let mut steps_taken = Vec::new();
    let mut budget = DESCENT_BUDGET;
    go(p, steps, &mut steps_taken, &mut budget).then(|| ReversalPath {
        start: p.clone(),
        steps: steps_taken,
    })
}

/// Relabelings of `1..=n` that keep the cyclic order (rotations and
/// reflections).
fn dihedral_maps(n: u32) -> impl Iterator<Item = BTreeMap<u32, u32>> {
    (0..n).flat_map(move |k| {
        [false, true].into_iter().map(move |refl| {
            (1..=n)
                .map(|x| {
                    (
                        x,
                        if refl {
                            (n - x + k) % n + 1
                        } else {
                            (x - 1 + k) % n + 1
                        },
                    )
                })
                .collect()
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientingExtension {
    /// The non-orientable scheme with one more edge.
    pub scheme: SignedCyclicPermutation,
    pub added: u32,
    /// Label in `scheme` of each original edge.
    pub labels: BTreeMap<u32, u32>,
}

/// Adds a negative edge next to an existing one so that the scheme becomes
/// non-orientable while keeping its faces (and so its cross-cap number).
pub fn add_orienting_edge(
    p: &SignedCyclicPermutation,
) -> Result<OrientingExtension, SynthesisError> {
    if !p.is_orientable() {
        return Err(SynthesisError::Precondition(format!(
            "{p} is already non-orientable"
        )));
    }
    let base = if p.sign(1) < 0 {
        p.flip(Vertex::V2)
    } else {
        p.clone()
    };
    let n = base.n();
    let faces = base.face_count();
    let g = base.crosscap_number();
    for k in 0..n {
        let s = base.shift_values(k);
        let at = s.position(n as u32);
        for pos in [at, at + 1] {
            let mut e = s.entries().to_vec();
            e.insert(pos, -(n as i32 + 1));
            let q = SignedCyclicPermutation::new(e)?;
            if !q.is_orientable()
                && is_reduced(&q)
                && q.face_count() == faces
                && q.crosscap_number() == g
            {
                let labels = (1..=n as u32)
                    .map(|x| (x, (x - 1 + k as u32) % n as u32 + 1))
                    .collect();
                return Ok(OrientingExtension {
                    scheme: q,
                    added: n as u32 + 1,
                    labels,
                });
            }
        }
    }
    Err(SynthesisError::Precondition(format!(
        "no orienting edge keeps {p} reduced"
    )))
}

/// A stored drawing renamed to a larger scheme, with the new label of each
/// original edge.
type Extended = (CrossCapDrawing, BTreeMap<u32, u32>);

/// Grows `p` one edge at a time, keeping it reduced, non-orientable, of the
/// same cross-cap number and clear of the exceptions, until it is maximal
/// and has a stored drawing. Returns the stored drawing renamed to the
/// grown scheme's labels, and the label there of every edge of `p`.
fn extend_to_stored(
    p: &SignedCyclicPermutation,
    g: usize,
) -> Result<Option<Extended>, SynthesisError> {
    let n = p.n() as i32;
    let mut maximal = true;
    let mut tried = BTreeSet::new();
    for v in 0..n {
        let shifted: Vec<i32> = p
            .entries()
            .iter()
            .map(|&x| if x.abs() > v { x + x.signum() } else { x })
            .collect();
        for pos in 0..shifted.len() {
            for s in [1, -1] {
                let mut e = shifted.clone();
                e.insert(pos + 1, s * (v + 1));
                let q = SignedCyclicPermutation::from_valid(e);
                if q.crosscap_number() != g || q.is_orientable() || !is_reduced(&q) {
                    continue;
                }
                maximal = false;
                if is_fantastic_exception(&q) || !tried.insert(q.flip_canonical()) {
                    continue;
                }
                if let Some((d, labels)) = extend_to_stored(&q, g)? {
                    let mut out = BTreeMap::new();
                    for x in 1..=n as u32 {
                        let y = if x as i32 > v { x + 1 } else { x };
                        out.insert(x, labels[&y]);
                    }
                    return Ok(Some((d, out)));
                }
            }
        }
    }
    if !maximal {
        return Ok(None);
    }
    let identity = (1..=n as u32).map(|x| (x, x)).collect();
    Ok(stored_drawing(p)?.map(|d| (d, identity)))
}

/// A stored drawing of a scheme with the shape of `p`, renamed to `p`'s
/// labels.
fn stored_drawing(p: &SignedCyclicPermutation) -> Result<Option<CrossCapDrawing>, SynthesisError> {
    let Some(entry) = base_drawings()?.iter().find(|b| same_shape(&b.scheme, p)) else {
        return Ok(None);
    };
    let target = LabeledScheme::of(p);
    for map in dihedral_maps(p.n() as u32) {
        let d = entry.drawing.relabel(&map);
        if d.labeled_scheme().equivalent(&target) {
            return Ok(Some(d));
        }
    }
    Err(internal(format!(
        "stored drawing of {} does not match {p}",
        entry.scheme
    )))
}

/// Fantastic drawing of a reduced non-orientable scheme with at most three
/// cross-caps, from the stored table.
pub fn base_fantastic(p: &SignedCyclicPermutation) -> Result<CrossCapDrawing, SynthesisError> {
    if is_fantastic_exception(p) {
        return Err(SynthesisError::FantasticException(p.to_string()));
    }
    if !is_reduced(p) || p.is_orientable() || p.crosscap_number() > 3 {
        return Err(SynthesisError::Precondition(format!(
            "{p} is not a reduced non-orientable scheme of genus at most 3"
        )));
    }
    let (mut d, labels) = extend_to_stored(p, p.crosscap_number())?
        .ok_or_else(|| SynthesisError::AssetMissing(p.to_string()))?;
    let keep: BTreeSet<u32> = labels.values().copied().collect();
    let all: Vec<u32> = d.words.keys().copied().collect();
    for e in all {
        if !keep.contains(&e) {
            d.remove_edge(e);
        }
    }
    let back: BTreeMap<u32, u32> = labels.iter().map(|(&old, &new)| (new, old)).collect();
    let d = d.relabel(&back);
    if !d.is_fantastic(p)? {
        return Err(internal(format!(
            "trimmed base drawing of {p} is not fantastic"
        )));
    }
    Ok(d)
}

/// Fantastic drawing of a reduced scheme other than the three exceptions.
pub fn fantastic_drawing(p: &SignedCyclicPermutation) -> Result<CrossCapDrawing, SynthesisError> {
    if is_fantastic_exception(p) {
        return Err(SynthesisError::FantasticException(p.to_string()));
    }
    if !is_reduced(p) {
        return Err(SynthesisError::Precondition(format!("{p} is not reduced")));
    }
    let d = if p.is_orientable() {
        let ext = add_orienting_edge(p)?;
        let mut d = fantastic_drawing(&ext.scheme)?;
        d.remove_edge(ext.added);
        let back: BTreeMap<u32, u32> = ext.labels.iter().map(|(&old, &new)| (new, old)).collect();
        d.relabel(&back)
    } else if p.crosscap_number() <= 3 {
        base_fantastic(p)?
    } else {
        match descent(p, p.crosscap_number() - 3) {
            Some(prefix) => {
                let mid = prefix.terminal()?;
                let tree = reduce(&mid);
                if tree
                    .levels
                    .iter()
                    .any(|l| l.clusters.iter().any(|c| c.kind == ClusterKind::Block))
                {
                    return Err(internal(format!(
                        "descent from {p} passed through {mid}, which has a block"
                    )));
                }
                let mut d = base_fantastic(&tree.root)?;
                for level in tree.levels.iter().rev() {
                    d = expand_level(&d, level)?;
                }
                splice_prefix(&d, &prefix)?
            }
            None => match find(&SearchSpec::fantastic(p, SEARCH_BUDGET)) {
                SearchOutcome::Found { drawing, .. } => drawing,
                SearchOutcome::Exhausted { .. } => {
                    return Err(internal(format!("{p} has no fantastic drawing")));
                }
                SearchOutcome::BudgetExceeded { nodes } => {
                    return Err(SynthesisError::BudgetExhausted(nodes))
                }
            },
        }
    };
    if !d.is_fantastic(p)? {
        return Err(internal(format!("drawing of {p} is not fantastic")));
    }
    Ok(d)
}

/// A whole-permutation negative block `(n̄, …, 1̄)`: all negative, `1̄`
/// followed by `n̄`, not sorted, and with no smaller non-trivial block.
pub fn is_normal_negative_block(z: &SignedCyclicPermutation) -> bool {
    let n = z.n();
    let e = z.entries();
    n >= 4
        && e.iter().all(|&x| x < 0)
        && e[(z.position(1) + 1) % n] == -(n as i32)
        && !z.flip(Vertex::V2).is_sorted()
        && non_trivial_blocks(z).iter().all(|b| b.len == n)
}

/// Perfect drawing of a minimal negative block in which the two frames
/// enter every cross-cap, in opposite orders.
///
/// `1̄` is replaced by a positive edge `n+1`; sorting while never moving
/// that edge leaves it straight, and edge `1` is then redrawn along the
/// reverse of the route of edge `n`.
pub fn draw_negative_block(z: &SignedCyclicPermutation) -> Result<CrossCapDrawing, SynthesisError> {
    if !is_normal_negative_block(z) {
        return Err(SynthesisError::Precondition(format!(
            "{z} is not a minimal negative block (n̄ … 1̄)"
        )));
    }
    let n = z.n() as i32;
    let lowered: Vec<i32> = z
        .entries()
        .iter()
        .map(|&x| {
            if x == -1 {
                n
            } else {
                x.signum() * (x.abs() - 1)
            }
        })
        .collect();
    let pp = SignedCyclicPermutation::new(lowered)?;
    let path = hp_sort(&pp, Some(n as u32))?;
    let up: BTreeMap<u32, u32> = (1..=n as u32).map(|l| (l, l + 1)).collect();
    let mut d = from_reversal_path(&path)?.relabel(&up);
    let stand_in = n as u32 + 1;
    if !d.word(stand_in).is_empty() {
        return Err(internal(format!("sorting {pp} moved the forbidden edge")));
    }
    let back: Vec<usize> = d.word(n as u32).iter().rev().copied().collect();
    d.remove_edge(stand_in);
    let rest: BTreeSet<u32> = (2..=n as u32).collect();
    let now = d.labeled_scheme();
    for t in LabeledScheme::of(z).flip_class() {
        if !t.restrict(&rest).same_as(&now) {
            continue;
        }
        if let Some(out) = route(
            &d,
            &t,
            &[Insertion {
                edge: 1,
                words: vec![back.clone()],
            }],
        )? {
            if out.is_perfect(z)? {
                return Ok(out);
            }
        }
    }
    Err(internal(format!("could not add the frame of {z}")))
}

/// Renames the edges of a negative block seen through `z` (a labeled
/// scheme on the block's edges) to the normal form `(n̄, …, 1̄)`. Returns
/// the form and the map from its labels back to the block's.
fn negative_block_form(z: &LabeledScheme) -> Option<(SignedCyclicPermutation, BTreeMap<u32, u32>)> {
    let m = z.v1.len();
    (0..m).find_map(|r| {
        let order: Vec<u32> = (0..m).map(|i| z.v1[(r + i) % m]).collect();
        let rank: BTreeMap<u32, i32> = order
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as i32 + 1))
            .collect();
        let entries = z.v2.iter().rev().map(|l| z.signs[l] * rank[l]).collect();
        let p = SignedCyclicPermutation::new(entries).ok()?;
        is_normal_negative_block(&p).then(|| {
            (
                p,
                order
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| (i as u32 + 1, l))
                    .collect(),
            )
        })
    })
}

/// Replaces the `at`-th cross-cap of edge `e` by a drawing of the block
/// `members`, which takes the place of `e`. Strands that crossed `e` there
/// cross the new cross-caps in the order one frame of the block does, or
/// the reverse. `target` is the rotation system the finished drawing must
/// have, restricted to whatever edges it contains.
pub fn blow_up(
    d: &CrossCapDrawing,
    e: u32,
    at: usize,
    members: &[u32],
    target: &LabeledScheme,
) -> Result<CrossCapDrawing, SynthesisError> {
    let w = d.word(e).to_vec();
    if w.len() <= at {
        return Err(SynthesisError::NoTransit(e));
    }
    let c = w[at];
    let xs: BTreeSet<u32> = members.iter().copied().collect();
    // Each cross-cap passed before `c` turns the bundle over.
    let local = target.restrict(&xs);
    let local = if at % 2 == 1 {
        local.flip(Vertex::V2)
    } else {
        local
    };
    let mut seen: Vec<BTreeMap<u32, Vec<usize>>> = Vec::new();
    for z in local.flip_class() {
        let Some((form, names)) = negative_block_form(&z) else {
            continue;
        };
        let dx = draw_negative_block(&form)?.relabel(&names);
        if seen.contains(&dx.words) {
            continue;
        }
        seen.push(dx.words.clone());
        let frame = names[&(form.n() as u32)];
        if let Some(out) = substitute(d, e, at, &dx, frame, target)? {
            return Ok(out);
        }
    }
    Err(internal(format!(
        "blowing up cross-cap {c} of edge {e} failed"
    )))
}

fn substitute(
    d: &CrossCapDrawing,
    e: u32,
    at: usize,
    dx: &CrossCapDrawing,
    frame: u32,
    target: &LabeledScheme,
) -> Result<Option<CrossCapDrawing>, SynthesisError> {
    let w = d.word(e);
    let c = w[at];
    let mut base = d.clone();
    base.remove_edge(e);
    let foreign: Vec<u32> = d
        .words
        .iter()
        .filter(|(&f, wf)| f != e && wf.contains(&c))
        .map(|(&f, _)| f)
        .collect();
    for &f in &foreign {
        base.remove_edge(f);
    }
    let old = base.crosscaps;
    let k = dx.crosscaps;
    base.crosscaps += k - 1;
    base.crosscap_orders.resize(base.crosscaps, Vec::new());
    let sigma = |t: usize| if t == 0 { c } else { old + t - 1 };
    let splice = |word: &[usize], i: usize, middle: &[usize]| {
        let mut out = word[..i].to_vec();
        out.extend_from_slice(middle);
        out.extend_from_slice(&word[i + 1..]);
        out
    };
    let mut edges: Vec<Insertion> = target
        .v1
        .iter()
        .filter(|x| dx.words.contains_key(x))
        .map(|&x| {
            let inner: Vec<usize> = dx.word(x).iter().map(|&t| sigma(t)).collect();
            Insertion {
                edge: x,
                words: vec![splice(w, at, &inner)],
            }
        })
        .collect();
    let a_route: Vec<usize> = dx.word(frame).iter().map(|&t| sigma(t)).collect();
    let b_route: Vec<usize> = a_route.iter().rev().copied().collect();
    for &f in &foreign {
        let wf = d.word(f);
        let i = wf.iter().position(|&x| x == c).expect("foreign strand");
        edges.push(Insertion {
            edge: f,
            words: vec![splice(wf, i, &a_route), splice(wf, i, &b_route)],
        });
    }
    route(&base, target, &edges)
}

/// Makes all of a positive block pass through the first cross-cap of `e`
/// alongside it, which leaves a negative block to blow up at the second.
pub fn insert_positive_block(
    d: &CrossCapDrawing,
    e: u32,
    members: &[u32],
    target: &LabeledScheme,
) -> Result<CrossCapDrawing, SynthesisError> {
    if d.word(e).len() < 2 {
        return Err(SynthesisError::Precondition(format!(
            "edge {e} enters fewer than two cross-caps"
        )));
    }
    blow_up(d, e, 1, members, target)
}

/// Undoes one reduction level. `d` is a drawing of `level.after`.
fn expand_level(
    d: &CrossCapDrawing,
    level: &ReductionLevel,
) -> Result<CrossCapDrawing, SynthesisError> {
    let reps: BTreeMap<u32, u32> = level
        .clusters
        .iter()
        .map(|c| (c.label, c.members[0].unsigned_abs()))
        .collect();
    let mut cur = d.relabel(&reps);
    let keep: BTreeSet<u32> = reps.values().copied().collect();
    let now = cur.labeled_scheme();
    let target = LabeledScheme::of(&level.before)
        .flip_class()
        .into_iter()
        .find(|t| t.restrict(&keep).same_as(&now))
        .ok_or_else(|| internal(format!("drawing does not realize {}", level.after)))?;
    for cluster in &level.clusters {
        let rep = cluster.members[0].unsigned_abs();
        let members: Vec<u32> = cluster.members.iter().map(|x| x.unsigned_abs()).collect();
        cur = match cluster.kind {
            ClusterKind::Single => continue,
            ClusterKind::Homotopic => {
                let w = cur.word(rep).to_vec();
                let edges: Vec<Insertion> = members[1..]
                    .iter()
                    .map(|&x| Insertion {
                        edge: x,
                        words: vec![w.clone()],
                    })
                    .collect();
                route(&cur, &target, &edges)?
                    .ok_or_else(|| internal(format!("homotopic copies of {rep}")))?
            }
            ClusterKind::Block => {
                let n = cur.word(rep).len();
                if n == 0 {
                    return Err(SynthesisError::NoTransit(rep));
                }
                if n % 2 == 1 {
                    blow_up(&cur, rep, 0, &members, &target)?
                } else {
                    insert_positive_block(&cur, rep, &members, &target)?
                }
            }
        };
    }
    if !cur.labeled_scheme().same_as(&target) {
        return Err(internal(format!(
            "expansion to {} lost the rotation system",
            level.before
        )));
    }
    Ok(cur)
}

fn single_crosscap_edge() -> CrossCapDrawing {
    CrossCapDrawing {
        crosscaps: 1,
        v1: vec![1],
        v2: vec![1],
        words: [(1, vec![0])].into_iter().collect(),
        crosscap_orders: vec![vec![
            TransitEnd::new(1, 0, Side::In),
            TransitEnd::new(1, 0, Side::Out),
        ]],
    }
}

/// Drawing of the reduced root in which every edge standing for a block
/// enters a cross-cap.
fn draw_root(tree: &ReductionTree) -> Result<CrossCapDrawing, SynthesisError> {
    let root = &tree.root;
    let demanding = tree.demanding();
    if root.n() == 1 {
        return Ok(if demanding[0] {
            single_crosscap_edge()
        } else {
            CrossCapDrawing::planar(vec![1])
        });
    }
    if !is_fantastic_exception(root) {
        return fantastic_drawing(root);
    }
    let mut spec = SearchSpec::perfect(root, ROUTE_BUDGET);
    spec.min_transits = (1..=root.n() as u32)
        .filter(|&l| demanding[l as usize - 1])
        .map(|l| (l, 1))
        .collect();
    match find(&spec) {
        SearchOutcome::Found { drawing, .. } => Ok(drawing),
        _ => Err(internal(format!(
            "no drawing of the root {root} serves its blocks"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Constructible,
    ExceptionalReduced,
}

/// The two frames of the positive block `A` and of the negative block `B`
/// of a scheme `A ++ B`, with the curve facts that rule out a perfect
/// drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPairCertificate {
    pub positive_block: SignedCyclicPermutation,
    pub negative_block: SignedCyclicPermutation,
    /// First and last edge of `A`, then of `B`, as they appear in the scheme.
    pub positive_frames: (u32, u32),
    pub negative_frames: (u32, u32),
    /// `a1·b1` and `a1·b2`: each must enter every cross-cap an odd number of times.
    pub orienting: Vec<(u32, u32)>,
    /// `a1·a2` and `b1·b2`: each must enter every cross-cap an even number of times.
    pub separating: Vec<(u32, u32)>,
    pub genus: usize,
    pub positive_genus: usize,
    pub negative_genus: usize,
}

impl BlockPairCertificate {
    /// Replays every check against `p`.
    pub fn verify(&self, p: &SignedCyclicPermutation) -> Result<(), String> {
        for &(a, b) in &self.orienting {
            let t = cycle_type(p, a, b).map_err(|e| e.to_string())?;
            if t.class != CurveClass::Orienting {
                return Err(format!("{a}·{b} is not orienting"));
            }
        }
        for &(a, b) in &self.separating {
            let t = cycle_type(p, a, b).map_err(|e| e.to_string())?;
            if t.class != CurveClass::Separating {
                return Err(format!("{a}·{b} is not separating"));
            }
        }
        let g = p.crosscap_number();
        let ga = self.positive_block.crosscap_number();
        let gb = self.negative_block.crosscap_number();
        if (g, ga, gb) != (self.genus, self.positive_genus, self.negative_genus) {
            return Err("recorded genera are wrong".into());
        }
        if g + 1 != ga + gb {
            return Err(format!("genus {g} is not {ga} + {gb} - 1"));
        }
        Ok(())
    }
}

/// Genus bookkeeping of a scheme `A ++ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusSplit {
    pub scheme: SignedCyclicPermutation,
    pub genus: usize,
    pub positive_genus: usize,
    pub negative_genus: usize,
    pub faces: usize,
    pub positive_faces: usize,
    pub negative_faces: usize,
}

/// Concatenates a positive block `A` (frames `1` and `|A|`) with a negative
/// block `B` (frames `|B|̄` and `1̄`) and reports the genera and face counts.
pub fn theorem1_genus(
    a: &SignedCyclicPermutation,
    b: &SignedCyclicPermutation,
) -> Result<GenusSplit, SynthesisError> {
    let na = a.n() as i32;
    let nb = b.n();
    let ea = a.entries();
    if ea.iter().any(|&x| x < 0) || ea[na as usize - 1] != na || a.is_sorted() {
        return Err(SynthesisError::Precondition(format!(
            "{a} is not a non-trivial positive block (1 … n)"
        )));
    }
    if b.entries().iter().any(|&x| x > 0) || b.flip(Vertex::V2).is_sorted() {
        return Err(SynthesisError::Precondition(format!(
            "{b} is not a non-trivial negative block"
        )));
    }
    let start = (b.position(1) + 1) % nb;
    let eb: Vec<i32> = (0..nb).map(|k| b.entries()[(start + k) % nb]).collect();
    if eb[0] != -(nb as i32) {
        return Err(SynthesisError::Precondition(format!(
            "{b} is not a negative block (n̄ … 1̄)"
        )));
    }
    let mut e = ea.to_vec();
    e.extend(eb.iter().map(|x| x - na));
    let scheme = SignedCyclicPermutation::new(e)?;
    Ok(GenusSplit {
        genus: scheme.crosscap_number(),
        positive_genus: a.crosscap_number(),
        negative_genus: b.crosscap_number(),
        faces: scheme.face_count(),
        positive_faces: a.face_count(),
        negative_faces: b.face_count(),
        scheme,
    })
}

/// Certificate for a scheme made of exactly one non-trivial positive block
/// followed by one non-trivial negative block.
pub fn no_perfect_certificate(
    p: &SignedCyclicPermutation,
) -> Result<BlockPairCertificate, SynthesisError> {
    let n = p.n();
    let blocks = non_trivial_blocks(p);
    for a in blocks.iter().filter(|b| b.sign == BlockSign::Positive) {
        for b in blocks.iter().filter(|b| b.sign == BlockSign::Negative) {
            if a.len + b.len != n || (a.start + a.len) % n != b.start {
                continue;
            }
            let ea = a.elements(p);
            let eb = b.elements(p);
            let (a1, a2) = (ea[0].unsigned_abs(), ea[ea.len() - 1].unsigned_abs());
            let (b1, b2) = (eb[0].unsigned_abs(), eb[eb.len() - 1].unsigned_abs());
            let positive_block = a.standalone(p);
            let negative_block = b.standalone(p);
            let cert = BlockPairCertificate {
                positive_genus: positive_block.crosscap_number(),
                negative_genus: negative_block.crosscap_number(),
                positive_block,
                negative_block,
                positive_frames: (a1, a2),
                negative_frames: (b1, b2),
                orienting: vec![(a1, b1), (a1, b2)],
                separating: vec![(a1, a2), (b1, b2)],
                genus: p.crosscap_number(),
            };
            cert.verify(p).map_err(internal)?;
            return Ok(cert);
        }
    }
    Err(SynthesisError::Precondition(format!(
        "{p} is not one positive block followed by one negative block"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub scheme: SignedCyclicPermutation,
    pub verdict: Verdict,
    pub root: SignedCyclicPermutation,
    /// For each root element, whether it stands for a non-trivial block.
    pub demanding: Vec<bool>,
    pub exceptional_form: Option<String>,
    pub block_pair_certificate: Option<BlockPairCertificate>,
}

pub fn classify(p: &SignedCyclicPermutation) -> Result<Classification, SynthesisError> {
    let tree = reduce(p);
    let demanding = tree.demanding();
    let root = LabeledScheme::of(&tree.root);
    let mut form_name = None;
    for form in exceptional_forms()? {
        if form.scheme.n() != tree.root.n() {
            continue;
        }
        let shape = LabeledScheme::of(&form.scheme);
        let hit = dihedral_maps(form.scheme.n() as u32).any(|map| {
            shape.relabel(&map).equivalent(&root)
                && form
                    .blocks
                    .iter()
                    .enumerate()
                    .all(|(i, &blk)| !blk || demanding[map[&(i as u32 + 1)] as usize - 1])
        });
        if hit {
            form_name = Some(form.name.clone());
            break;
        }
    }
    Ok(Classification {
        scheme: p.clone(),
        verdict: if form_name.is_some() {
            Verdict::ExceptionalReduced
        } else {
            Verdict::Constructible
        },
        root: tree.root,
        demanding,
        exceptional_form: form_name,
        block_pair_certificate: no_perfect_certificate(p).ok(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Synthesis {
    Perfect { drawing: CrossCapDrawing },
    Exceptional { classification: Classification },
}

/// The drawings built while undoing the reduction of `p`, root first, each
/// with the scheme it is a perfect drawing of. The last one is the drawing
/// of `p`.
pub fn expansion_stages(
    p: &SignedCyclicPermutation,
) -> Result<Vec<(SignedCyclicPermutation, CrossCapDrawing)>, SynthesisError> {
    let tree = reduce(p);
    let mut d = draw_root(&tree)?;
    let mut out = vec![(tree.root.clone(), d.clone())];
    for level in tree.levels.iter().rev() {
        d = expand_level(&d, level)?;
        out.push((level.before.clone(), d.clone()));
    }
    Ok(out)
}

/// A perfect drawing of `p`, or the reason none is built.
pub fn perfect_drawing(p: &SignedCyclicPermutation) -> Result<Synthesis, SynthesisError> {
    let classification = classify(p)?;
    if classification.verdict == Verdict::ExceptionalReduced {
        return Ok(Synthesis::Exceptional { classification });
    }
    let (_, mut d) = expansion_stages(p)?.pop().expect("at least the root");
    d.normalize_crosscap_ids();
    if !d.is_perfect(p)? {
        return Err(internal(format!("drawing of {p} is not perfect")));
    }
    Ok(Synthesis::Perfect { drawing: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::perm;

    #[test]
    fn negative_block_frames() {
        let z = perm("-4 -2 -3 -1");
        let d = draw_negative_block(&z).unwrap();
        assert!(d.is_perfect(&z).unwrap());
        let a: Vec<usize> = d.word(4).to_vec();
        let mut b = d.word(1).to_vec();
        b.reverse();
        assert_eq!(a, b);
        assert_eq!(a.len(), d.crosscaps);
    }

    #[test]
    fn orienting_edge() {
        let p = perm("1 3 5 2 4");
        assert!(p.is_orientable() && is_reduced(&p));
        let ext = add_orienting_edge(&p).unwrap();
        assert!(!ext.scheme.is_orientable());
        assert_eq!(ext.scheme.crosscap_number(), p.crosscap_number());
    }

    #[test]
    fn small_pipeline() {
        for s in ["1 -2", "1", "1 3 2 4 -5", "1 -6 5 -4 3 -2", "1 2 4 -3"] {
            let p = perm(s);
            match perfect_drawing(&p).unwrap() {
                Synthesis::Perfect { drawing } => assert!(drawing.is_perfect(&p).unwrap(), "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }
}
