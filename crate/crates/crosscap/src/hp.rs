//! Sorting signed cyclic permutations by reversals: the interleaving graph,
//! scores, the max-score sorting loop and a breadth-first distance oracle.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::blocks::non_trivial_blocks;
use crate::error::{HpError, SchemeError};
use crate::scheme::SignedCyclicPermutation;

/// Left or right copy of an element in the doubled permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum End {
    L,
    R,
}

/// Each element `x` becomes two tokens: `x^l x^r` when positive, `x^r x^l`
/// when negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledPermutation {
    pub entries: Vec<(u32, End)>,
}

impl DoubledPermutation {
    pub fn new(p: &SignedCyclicPermutation) -> Self {
        let mut entries = Vec::with_capacity(2 * p.n());
        for &x in p.entries() {
            let a = x.unsigned_abs();
            if x > 0 {
                entries.extend([(a, End::L), (a, End::R)]);
            } else {
                entries.extend([(a, End::R), (a, End::L)]);
            }
        }
        Self { entries }
    }

    /// Slot of every token, indexed by `2 * (label - 1) + (0 for l, 1 for r)`.
    fn slots(&self) -> Vec<usize> {
        let mut at = vec![0; self.entries.len()];
        for (k, &(a, end)) in self.entries.iter().enumerate() {
            at[2 * (a as usize - 1) + (end == End::R) as usize] = k;
        }
        at
    }
}

/// A reversal of the cyclic interval of `len` consecutive positions starting
/// at `start`, positions taken in the canonical rotation of the permutation
/// it is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Reversal {
    pub start: usize,
    pub len: usize,
}

impl Reversal {
    /// Last position of the interval (inclusive).
    pub fn end(&self, n: usize) -> usize {
        (self.start + self.len - 1) % n
    }

    pub fn contains_position(&self, k: usize, n: usize) -> bool {
        (k + n - self.start) % n < self.len
    }

    /// Elements of `p` covered by the interval, in their order before it is
    /// reversed.
    pub fn elements(&self, p: &SignedCyclicPermutation) -> Vec<i32> {
        let n = p.n();
        (0..self.len)
            .map(|j| p.entries()[(self.start + j) % n])
            .collect()
    }

    pub fn contains_label(&self, p: &SignedCyclicPermutation, label: u32) -> bool {
        self.contains_position(p.position(label), p.n())
    }

    pub fn apply(
        &self,
        p: &SignedCyclicPermutation,
    ) -> Result<SignedCyclicPermutation, SchemeError> {
        p.apply_reversal(self.start, self.len)
    }
}

/// Every cyclically adjacent value pair `(i, i+1)` whose elements have
/// opposite signs, as `(i, i % n + 1)`.
pub fn reversible_pairs(p: &SignedCyclicPermutation) -> Vec<(u32, u32)> {
    let n = p.n() as u32;
    if n < 2 {
        return Vec::new();
    }
    (1..=n)
        .map(|i| (i, i % n + 1))
        .filter(|&(i, j)| p.sign(i) != p.sign(j))
        .collect()
}

/// The two complementary reversals that make the pair `(i, i+1)` homotopic.
pub fn homotopizing_reversals(
    p: &SignedCyclicPermutation,
    i: u32,
) -> Result<[Reversal; 2], HpError> {
    let n = p.n();
    if i == 0 || i as usize > n {
        return Err(SchemeError::InvalidEdge(i).into());
    }
    let j = i % n as u32 + 1;
    if n < 2 || p.sign(i) == p.sign(j) {
        return Err(HpError::NotReversible(i, j));
    }
    let (a, b) = (p.position(i), p.position(j));
    let ab = (b + n - a) % n;
    let ba = (a + n - b) % n;
    Ok(if p.sign(i) > 0 {
        [
            Reversal {
                start: (a + 1) % n,
                len: ab,
            },
            Reversal {
                start: (b + 1) % n,
                len: ba,
            },
        ]
    } else {
        [
            Reversal { start: a, len: ab },
            Reversal { start: b, len: ba },
        ]
    })
}

/// Graph on the value pairs `(i, i+1)`, vertex `i` standing for the pair that
/// starts at `i`. Two vertices are adjacent when their chords in the doubled
/// permutation cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingGraph {
    reversible: Vec<bool>,
    adj: Vec<Vec<bool>>,
}

pub fn interleaving_graph(p: &SignedCyclicPermutation) -> InterleavingGraph {
    let n = p.n();
    let slots = DoubledPermutation::new(p).slots();
    let len = 2 * n;
    // chord of vertex i joins i^r to (i+1)^l
    let chord = |i: usize| (slots[2 * i + 1], slots[2 * ((i + 1) % n)]);
    let inside = |(a, b): (usize, usize), x: usize| {
        let d = (x + len - a) % len;
        d > 0 && d < (b + len - a) % len
    };
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (c, d) = chord(j);
            let ci = chord(i);
            if inside(ci, c) != inside(ci, d) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let mut reversible = vec![false; n];
    for (i, _) in reversible_pairs(p) {
        reversible[i as usize - 1] = true;
    }
    InterleavingGraph { reversible, adj }
}

/// A connected component of an interleaving graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<u32>,
    /// A single isolated vertex.
    pub trivial: bool,
    /// Every vertex is non-reversible.
    pub orientable: bool,
}

impl InterleavingGraph {
    pub fn n(&self) -> usize {
        self.reversible.len()
    }

    pub fn is_reversible(&self, v: u32) -> bool {
        self.reversible[v as usize - 1]
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize - 1][v as usize - 1]
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let row = &self.adj[v as usize - 1];
        (1..=self.n() as u32)
            .filter(|&u| row[u as usize - 1])
            .collect()
    }

    pub fn reversible_vertices(&self) -> Vec<u32> {
        (1..=self.n() as u32)
            .filter(|&v| self.is_reversible(v))
            .collect()
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let n = self.n() as u32;
        (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adjacent(u, v))
            .collect()
    }

    fn check_reversible(&self, v: u32) -> Result<(), HpError> {
        let n = self.n() as u32;
        if v == 0 || v > n {
            return Err(SchemeError::InvalidEdge(v).into());
        }
        if !self.is_reversible(v) {
            return Err(HpError::NotReversible(v, v % n + 1));
        }
        Ok(())
    }

    /// Number of reversible pairs left after the homotopizing reversal of `v`,
    /// computed as `k - #reversible(N[v]) + #non-reversible(N[v])`.
    pub fn score(&self, v: u32) -> Result<usize, HpError> {
        self.check_reversible(v)?;
        let k = self.reversible.iter().filter(|&&r| r).count();
        let mut plus = 1;
        let mut minus = 0;
        for u in self.neighbors(v) {
            if self.is_reversible(u) {
                plus += 1;
            } else {
                minus += 1;
            }
        }
        Ok(k + minus - plus)
    }

    /// The graph of the permutation after the homotopizing reversal of `v`.
    pub fn apply_reversal_effect(&self, v: u32) -> Result<Self, HpError> {
        self.check_reversible(v)?;
        let mut g = self.clone();
        let nb: Vec<usize> = self.neighbors(v).iter().map(|&u| u as usize - 1).collect();
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                g.adj[x][y] = !g.adj[x][y];
                g.adj[y][x] = !g.adj[y][x];
            }
            g.reversible[x] = !g.reversible[x];
        }
        let v = v as usize - 1;
        for u in 0..self.n() {
            g.adj[u][v] = false;
            g.adj[v][u] = false;
        }
        g.reversible[v] = false;
        Ok(g)
    }

    pub fn components(&self) -> Vec<Component> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut verts = Vec::new();
            while let Some(u) = stack.pop() {
                verts.push(u as u32 + 1);
                for w in 0..n {
                    if self.adj[u][w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            let trivial = verts.len() == 1;
            let orientable = verts.iter().all(|&v| !self.is_reversible(v));
            out.push(Component {
                vertices: verts,
                trivial,
                orientable,
            });
        }
        out
    }
}

pub fn orientable_components(g: &InterleavingGraph) -> Vec<Component> {
    g.components()
}

pub fn score(p: &SignedCyclicPermutation, i: u32) -> Result<usize, HpError> {
    interleaving_graph(p).score(i)
}

/// A sequence of reversals applied one after the other to `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversalPath {
    pub start: SignedCyclicPermutation,
    pub steps: Vec<Reversal>,
}

impl ReversalPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `start` followed by the permutation after each step.
    pub fn permutations(&self) -> Result<Vec<SignedCyclicPermutation>, SchemeError> {
        let mut out = vec![self.start.clone()];
        for r in &self.steps {
            let next = r.apply(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn terminal(&self) -> Result<SignedCyclicPermutation, SchemeError> {
        Ok(self.permutations()?.pop().expect("nonempty"))
    }
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    start: SignedCyclicPermutation,
    steps: Vec<[usize; 2]>,
    terminal: SignedCyclicPermutation,
}

impl Serialize for ReversalPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.start.n();
        let terminal = self.terminal().map_err(serde::ser::Error::custom)?;
        PathJson {
            start: self.start.clone(),
            steps: self.steps.iter().map(|r| [r.start, r.end(n)]).collect(),
            terminal,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReversalPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = PathJson::deserialize(d)?;
        let n = j.start.n();
        let mut steps = Vec::with_capacity(j.steps.len());
        for [a, b] in j.steps {
            if a >= n || b >= n {
                return Err(D::Error::custom(format!(
                    "interval [{a}, {b}] out of range"
                )));
            }
            steps.push(Reversal {
                start: a,
                len: (b + n - a) % n + 1,
            });
        }
        let path = ReversalPath {
            start: j.start,
            steps,
        };
        let end = path.terminal().map_err(D::Error::custom)?;
        if end != j.terminal {
            return Err(D::Error::custom(format!(
                "steps end at {end}, not {}",
                j.terminal
            )));
        }
        Ok(path)
    }
}

/// Sorts by repeatedly reversing a reversible pair of maximal score (smallest
/// `i` among ties). With `forbidden`, every step uses the homotopizing
/// reversal that leaves that element in place.
pub fn hp_sort(
    p: &SignedCyclicPermutation,
    forbidden: Option<u32>,
) -> Result<ReversalPath, HpError> {
    if p.is_orientable() {
        return Err(HpError::PreconditionViolated(format!("{p} is orientable")));
    }
    if let Some(b) = non_trivial_blocks(p).first() {
        return Err(HpError::PreconditionViolated(format!(
            "{p} has the block {:?}",
            b.elements(p)
        )));
    }
    if let Some(f) = forbidden {
        if f == 0 || f as usize > p.n() {
            return Err(SchemeError::InvalidEdge(f).into());
        }
    }
    let genus = p.euler_genus();
    let mut cur = p.clone();
    let mut steps = Vec::new();
    loop {
        let g = interleaving_graph(&cur);
        let candidates = g.reversible_vertices();
        if candidates.is_empty() {
            break;
        }
        if steps.len() == genus {
            return Err(HpError::InternalInvariantViolated(format!(
                "{p} needs more than {genus} steps"
            )));
        }
        let mut best = (0, 0);
        for &v in &candidates {
            let sc = g.score(v)?;
            if best.0 == 0 || sc > best.1 {
                best = (v, sc);
            }
        }
        let options = homotopizing_reversals(&cur, best.0)?;
        let mut ranked = Vec::with_capacity(2);
        for r in options {
            let next = r.apply(&cur)?;
            let hits = forbidden.is_some_and(|f| r.contains_label(&cur, f));
            ranked.push(((hits, !next.is_sorted(), r.len, r.start), r, next));
        }
        ranked.sort_by_key(|t| t.0);
        let ((hits, ..), r, next) = ranked.swap_remove(0);
        if hits {
            return Err(HpError::InternalInvariantViolated(format!(
                "every reversal of {cur} moves the forbidden element"
            )));
        }
        steps.push(r);
        cur = next;
    }
    if !cur.is_sorted() {
        return Err(HpError::Stalled {
            start: p.to_string(),
            at: cur.to_string(),
            steps: steps.len(),
        });
    }
    if steps.len() != genus {
        return Err(HpError::InternalInvariantViolated(format!(
            "{p} sorted in {} steps, not {genus}",
            steps.len()
        )));
    }
    Ok(ReversalPath {
        start: p.clone(),
        steps,
    })
}

/// Exact reversal distance to the identity by breadth-first search over
/// canonical rotations, visiting at most `max_states` permutations.
pub fn reversal_distance_exact(
    p: &SignedCyclicPermutation,
    max_states: usize,
) -> Result<usize, HpError> {
    let n = p.n();
    let mut dist: HashMap<SignedCyclicPermutation, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(p.clone(), 0);
    queue.push_back(p.clone());
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if x.is_sorted() {
            return Ok(d);
        }
        for start in 0..n {
            for len in 1..n {
                let y = x.apply_reversal(start, len)?;
                if !dist.contains_key(&y) {
                    if dist.len() >= max_states {
                        return Err(HpError::SearchBudgetExceeded(max_states));
                    }
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    Err(HpError::Unsortable(p.to_string()))
}

/// Distance from the identity to every permutation on `n` edges reachable
/// by reversals. Reversals are involutions, so this is also the distance to
/// the identity.
pub fn reversal_distance_table(n: usize) -> HashMap<SignedCyclicPermutation, usize> {
    let id = SignedCyclicPermutation::identity(n);
    let mut dist = HashMap::from([(id.clone(), 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for start in 0..n {
            for len in 1..n {
                let y = x.apply_reversal(start, len).expect("proper interval");
                dist.entry(y).or_insert_with_key(|y| {
                    queue.push_back(y.clone());
                    d + 1
                });
            }
        }
    }
    dist
}
