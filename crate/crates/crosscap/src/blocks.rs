//! Blocks, homotopic runs, iterated reduction and classification.
//!
//! Intervals are cyclic intervals of positions; their value sets are cyclic
//! ranges of labels (a block may hold `n-1, n, 1, 2`). A whole-permutation
//! block is only reported with the cut that puts label 1 and label `n` at its
//! ends.

use serde::{Deserialize, Serialize};

use crate::scheme::SignedCyclicPermutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockSign {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    /// First position of the interval in the canonical rotation.
    pub start: usize,
    pub len: usize,
    pub sign: BlockSign,
    /// First and last element of the interval (signed).
    pub frames: (i32, i32),
    pub trivial: bool,
    pub minimal: bool,
}

impl Block {
    /// Signed elements of the interval in position order.
    pub fn elements(&self, p: &SignedCyclicPermutation) -> Vec<i32> {
        let n = p.n();
        (0..self.len)
            .map(|j| p.entries()[(self.start + j) % n])
            .collect()
    }

    /// Labels of the block in `v1` order (cyclically from its smallest end).
    pub fn labels(&self, p: &SignedCyclicPermutation) -> Vec<u32> {
        let lo = match self.sign {
            BlockSign::Positive => self.frames.0.unsigned_abs(),
            BlockSign::Negative => self.frames.1.unsigned_abs(),
        };
        let n = p.n() as u32;
        (0..self.len as u32).map(|k| (lo - 1 + k) % n + 1).collect()
    }

    /// The block as a standalone scheme relabeled `1..len` from its low
    /// frame, in the linear order of the interval.
    pub fn standalone(&self, p: &SignedCyclicPermutation) -> SignedCyclicPermutation {
        let labels = self.labels(p);
        let n = p.n() as u32;
        let lo = labels[0];
        let e = self
            .elements(p)
            .into_iter()
            .map(|x| x.signum() * (((x.unsigned_abs() + n - lo) % n) + 1) as i32)
            .collect();
        SignedCyclicPermutation::from_valid(e)
    }

    fn contains_interval(&self, other: &Block, n: usize) -> bool {
        if other.len >= self.len {
            return false;
        }
        let off = (other.start + n - self.start) % n;
        off + other.len <= self.len
    }
}

/// Is `(x, y)` (cyclically adjacent, `x` first) a homotopic pair?
pub fn homotopic(x: i32, y: i32, n: usize) -> bool {
    let n = n as i32;
    if n < 2 {
        return false;
    }
    let next = |v: i32| v % n + 1;
    if x > 0 && y > 0 {
        y == next(x)
    } else if x < 0 && y < 0 {
        -x == next(-y)
    } else {
        false
    }
}

pub fn has_homotopic_pair(p: &SignedCyclicPermutation) -> bool {
    let e = p.entries();
    let n = e.len();
    (0..n).any(|k| homotopic(e[k], e[(k + 1) % n], n))
}

/// Checks the block definition on a cyclic interval.
fn block_at(p: &SignedCyclicPermutation, start: usize, len: usize) -> Option<Block> {
    let e = p.entries();
    let n = e.len();
    let first = e[start % n];
    let last = e[(start + len - 1) % n];
    let s = first.signum();
    if (0..len).any(|j| e[(start + j) % n].signum() != s) {
        return None;
    }
    let (lo, hi) = if s > 0 {
        (first.abs(), last.abs())
    } else {
        (last.abs(), first.abs())
    };
    let ni = n as i32;
    if (hi - lo).rem_euclid(ni) != len as i32 - 1 {
        return None;
    }
    if len == n && lo != 1 {
        return None;
    }
    let in_range = |v: i32| (v - lo).rem_euclid(ni) < len as i32;
    if !(0..len).all(|j| in_range(e[(start + j) % n].abs())) {
        return None;
    }
    let trivial = (0..len - 1).all(|j| homotopic(e[(start + j) % n], e[(start + j + 1) % n], n));
    Some(Block {
        start: start % n,
        len,
        sign: if s > 0 {
            BlockSign::Positive
        } else {
            BlockSign::Negative
        },
        frames: (first, last),
        trivial,
        minimal: false,
    })
}

/// Every block of length at least 2, ordered by (start, length), with
/// minimality computed against all other blocks.
pub fn find_blocks(p: &SignedCyclicPermutation) -> Vec<Block> {
    let n = p.n();
    let mut out = Vec::new();
    for start in 0..n {
        for len in 2..n {
            if let Some(b) = block_at(p, start, len) {
                out.push(b);
            }
        }
    }
    if n >= 2 {
        for start in 0..n {
            if let Some(b) = block_at(p, start, n) {
                out.push(b);
            }
        }
    }
    let snapshot = out.clone();
    for b in &mut out {
        b.minimal = !snapshot.iter().any(|o| b.contains_interval(o, n));
    }
    out
}

pub fn non_trivial_blocks(p: &SignedCyclicPermutation) -> Vec<Block> {
    find_blocks(p)
        .into_iter()
        .filter(|b| !b.trivial && b.len < p.n())
        .collect()
}

/// No homotopic pair and no non-trivial block on a proper interval.
pub fn is_reduced(p: &SignedCyclicPermutation) -> bool {
    !has_homotopic_pair(p) && non_trivial_blocks(p).is_empty()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClusterKind {
    Single,
    Homotopic,
    Block,
}

/// One element of a contracted level and what it stands for one level down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    /// Label in the contracted permutation.
    pub label: u32,
    pub kind: ClusterKind,
    /// Members (signed labels of the finer permutation) in `v2` position order.
    pub members: Vec<i32>,
}

impl Cluster {
    /// Member labels in `v1` cyclic order.
    pub fn labels_v1(&self, n_before: usize) -> Vec<u32> {
        let set: Vec<u32> = self.members.iter().map(|x| x.unsigned_abs()).collect();
        let n = n_before as u32;
        let start = *set
            .iter()
            .find(|&&l| !set.contains(&((l + n - 2) % n + 1)))
            .unwrap_or(&set.iter().copied().min().expect("nonempty"));
        (0..set.len() as u32)
            .map(|k| (start - 1 + k) % n + 1)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLevel {
    pub before: SignedCyclicPermutation,
    pub after: SignedCyclicPermutation,
    /// Indexed by `label - 1` of `after`.
    pub clusters: Vec<Cluster>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTree {
    pub original: SignedCyclicPermutation,
    pub root: SignedCyclicPermutation,
    /// Levels in the order they were applied.
    pub levels: Vec<ReductionLevel>,
}

/// Contracts clusters of labels (each contiguous in both rotations and of
/// uniform sign). `cluster_of[label]` names the cluster; labels of the result
/// follow the `v1` order starting from the cluster of label 1.
pub fn contract_clusters(
    p: &SignedCyclicPermutation,
    cluster_of: &[usize],
    kinds: &[ClusterKind],
) -> (SignedCyclicPermutation, Vec<Cluster>) {
    let n = p.n();
    let e = p.entries();
    // v1 order of clusters
    let mut new_label = vec![0u32; kinds.len()];
    let mut next = 1;
    for l in 1..=n {
        let c = cluster_of[l];
        if new_label[c] == 0 {
            new_label[c] = next;
            next += 1;
        }
    }
    // start the v2 walk at a cluster boundary
    let start = (0..n)
        .find(|&k| {
            cluster_of[e[k].unsigned_abs() as usize]
                != cluster_of[e[(k + n - 1) % n].unsigned_abs() as usize]
        })
        .unwrap_or(0);
    let mut entries = Vec::new();
    let mut members: Vec<Vec<i32>> = vec![Vec::new(); kinds.len()];
    for j in 0..n {
        let x = e[(start + j) % n];
        let c = cluster_of[x.unsigned_abs() as usize];
        if members[c].is_empty() {
            entries.push(x.signum() * new_label[c] as i32);
        }
        members[c].push(x);
    }
    let after = SignedCyclicPermutation::from_valid(entries);
    let mut clusters: Vec<Cluster> = (0..kinds.len())
        .map(|c| Cluster {
            label: new_label[c],
            kind: kinds[c],
            members: std::mem::take(&mut members[c]),
        })
        .collect();
    clusters.sort_by_key(|c| c.label);
    (after, clusters)
}

/// Collapses every maximal run of homotopic elements into one element.
pub fn dedupe_homotopic(p: &SignedCyclicPermutation) -> Option<ReductionLevel> {
    let e = p.entries();
    let n = e.len();
    if !has_homotopic_pair(p) {
        return None;
    }
    let all = (0..n).all(|k| homotopic(e[k], e[(k + 1) % n], n));
    let mut cluster_of = vec![usize::MAX; n + 1];
    let mut kinds = Vec::new();
    if all {
        for l in 1..=n {
            cluster_of[l] = 0;
        }
        kinds.push(ClusterKind::Homotopic);
    } else {
        let start = (0..n)
            .find(|&k| !homotopic(e[(k + n - 1) % n], e[k], n))
            .expect("a run boundary");
        for j in 0..n {
            let k = (start + j) % n;
            if j == 0 || !homotopic(e[(k + n - 1) % n], e[k], n) {
                kinds.push(ClusterKind::Single);
            } else {
                *kinds.last_mut().expect("open run") = ClusterKind::Homotopic;
            }
            cluster_of[e[k].unsigned_abs() as usize] = kinds.len() - 1;
        }
    }
    let (after, clusters) = contract_clusters(p, &cluster_of, &kinds);
    Some(ReductionLevel {
        before: p.clone(),
        after,
        clusters,
    })
}

/// Replaces every minimal non-trivial block by one element.
fn contract_minimal_blocks(p: &SignedCyclicPermutation) -> Option<ReductionLevel> {
    let n = p.n();
    let blocks: Vec<Block> = find_blocks(p)
        .into_iter()
        .filter(|b| b.minimal && !b.trivial && b.len < n)
        .collect();
    if blocks.is_empty() {
        return None;
    }
    let mut cluster_of = vec![usize::MAX; n + 1];
    let mut kinds = Vec::new();
    // Two minimal blocks can overlap when their union is the whole cycle;
    // take them left to right and leave a clashing one for the next round.
    for b in &blocks {
        let labels: Vec<usize> = b
            .elements(p)
            .iter()
            .map(|x| x.unsigned_abs() as usize)
            .collect();
        if labels.iter().any(|&l| cluster_of[l] != usize::MAX) {
            continue;
        }
        for l in labels {
            cluster_of[l] = kinds.len();
        }
        kinds.push(ClusterKind::Block);
    }
    for l in 1..=n {
        if cluster_of[l] == usize::MAX {
            cluster_of[l] = kinds.len();
            kinds.push(ClusterKind::Single);
        }
    }
    let (after, clusters) = contract_clusters(p, &cluster_of, &kinds);
    Some(ReductionLevel {
        before: p.clone(),
        after,
        clusters,
    })
}

/// Iterates homotopic dedupe and minimal-block replacement to a fixed point.
pub fn reduce(p: &SignedCyclicPermutation) -> ReductionTree {
    let mut levels = Vec::new();
    let mut cur = p.clone();
    loop {
        if let Some(l) = dedupe_homotopic(&cur) {
            cur = l.after.clone();
            levels.push(l);
            continue;
        }
        if let Some(l) = contract_minimal_blocks(&cur) {
            cur = l.after.clone();
            levels.push(l);
            continue;
        }
        break;
    }
    ReductionTree {
        original: p.clone(),
        root: cur,
        levels,
    }
}

impl ReductionLevel {
    /// Rebuilds `before` from `after` and the clusters.
    pub fn expand(&self) -> SignedCyclicPermutation {
        let mut e = Vec::with_capacity(self.before.n());
        for &x in self.after.entries() {
            e.extend_from_slice(&self.clusters[x.unsigned_abs() as usize - 1].members);
        }
        SignedCyclicPermutation::from_valid(e)
    }
}

impl ReductionTree {
    /// Replays all levels from the root back to the original permutation.
    pub fn expand(&self) -> SignedCyclicPermutation {
        let mut cur = self.root.clone();
        for l in self.levels.iter().rev() {
            assert_eq!(l.after, cur, "levels chain");
            cur = l.expand();
        }
        cur
    }

    /// For each root label (index `label - 1`): does its expansion contain a
    /// non-trivial block?
    pub fn demanding(&self) -> Vec<bool> {
        let mut flags = vec![false; self.original.n()];
        for l in &self.levels {
            let mut next = vec![false; l.after.n()];
            for c in &l.clusters {
                next[c.label as usize - 1] = c.kind == ClusterKind::Block
                    || c.members
                        .iter()
                        .any(|x| flags[x.unsigned_abs() as usize - 1]);
            }
            flags = next;
        }
        flags
    }

    /// For each root label, the original labels it stands for (`v1` order).
    pub fn root_members(&self) -> Vec<Vec<u32>> {
        let mut groups: Vec<Vec<u32>> = (1..=self.original.n() as u32).map(|l| vec![l]).collect();
        for l in &self.levels {
            let n_before = l.before.n();
            groups = l
                .clusters
                .iter()
                .map(|c| {
                    c.labels_v1(n_before)
                        .into_iter()
                        .flat_map(|m| groups[m as usize - 1].clone())
                        .collect()
                })
                .collect();
        }
        groups
    }
}
