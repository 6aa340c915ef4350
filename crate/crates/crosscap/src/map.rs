//! General rotation systems with edge signatures, face tracing and contraction.
//!
//! Half-edge `h` belongs to edge `h / 2`; `h % 2` selects the endpoint.
//! Faces are orbits of the flag group generated by two involutions:
//! the corner move `(h,+) <-> (next(h),-)` and the edge move, which jumps to
//! the opposite half-edge and switches side only on positive edges.

use serde::{Deserialize, Serialize};

use crate::error::SchemeError;
use crate::scheme::SignedCyclicPermutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEdge {
    pub ends: [usize; 2],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystemMap {
    pub vertex_count: usize,
    pub edges: Vec<MapEdge>,
    /// Per vertex, the cyclic order of incident half-edges.
    pub rotations: Vec<Vec<usize>>,
}

/// One traversal of an edge inside a facial walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Traversal {
    /// Half-edge the walk leaves from.
    pub from: usize,
    /// Which side of the edge the walk follows (0 or 1).
    pub side: u8,
}

impl Traversal {
    pub fn edge(&self) -> usize {
        self.from / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSet {
    pub faces: Vec<Vec<Traversal>>,
}

impl FaceSet {
    pub fn count(&self) -> usize {
        self.faces.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }
}

impl RotationSystemMap {
    /// Two-vertex map of a scheme: `v1` (vertex 0) has rotation `1..n`,
    /// `v2` (vertex 1) the reversed entry order.
    pub fn from_scheme(p: &SignedCyclicPermutation) -> Self {
        let n = p.n();
        let mut edges = vec![
            MapEdge {
                ends: [0, 1],
                sign: 1
            };
            n
        ];
        for &x in p.entries() {
            edges[x.unsigned_abs() as usize - 1].sign = x.signum() as i8;
        }
        let r1 = (0..n).map(|e| 2 * e).collect();
        let r2 = p
            .entries()
            .iter()
            .rev()
            .map(|x| 2 * (x.unsigned_abs() as usize - 1) + 1)
            .collect();
        Self {
            vertex_count: 2,
            edges,
            rotations: vec![r1, r2],
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.edges[h / 2].ends[h % 2]
    }

    /// Position of every half-edge inside its vertex rotation.
    fn slots(&self) -> Vec<usize> {
        let mut slot = vec![usize::MAX; 2 * self.edges.len()];
        for rot in &self.rotations {
            for (k, &h) in rot.iter().enumerate() {
                slot[h] = k;
            }
        }
        slot
    }

    /// Checks that every half-edge sits exactly once in its vertex rotation.
    pub fn check_structure(&self) -> Result<(), SchemeError> {
        if self.rotations.len() != self.vertex_count {
            return Err(SchemeError::Malformed(
                "rotation count differs from vertex count".into(),
            ));
        }
        let mut seen = vec![false; 2 * self.edges.len()];
        for (v, rot) in self.rotations.iter().enumerate() {
            for &h in rot {
                if h >= seen.len() || seen[h] || self.vertex_of(h) != v {
                    return Err(SchemeError::Malformed(format!("half-edge {h} misplaced")));
                }
                seen[h] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SchemeError::Malformed(
                "half-edge missing from rotations".into(),
            ));
        }
        if self.edges.iter().any(|e| e.sign != 1 && e.sign != -1) {
            return Err(SchemeError::Malformed("signature must be +1 or -1".into()));
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.ends[0]), find(&mut parent, e.ends[1]));
            parent[a] = b;
        }
        let r = find(&mut parent, 0);
        (0..self.vertex_count).all(|v| find(&mut parent, v) == r)
    }

    /// Number of faces without materializing the walks.
    pub fn face_count(&self) -> usize {
        self.trace(false).0
    }

    pub fn faces(&self) -> Result<FaceSet, SchemeError> {
        if !self.is_connected() {
            return Err(SchemeError::Disconnected);
        }
        Ok(FaceSet {
            faces: self.trace(true).1,
        })
    }

    fn trace(&self, record: bool) -> (usize, Vec<Vec<Traversal>>) {
        let slot = self.slots();
        let hcount = 2 * self.edges.len();
        let mut seen = vec![false; 2 * hcount];
        let mut count = 0;
        let mut walks = Vec::new();
        for start in 0..2 * hcount {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut walk = Vec::new();
            let mut f = start;
            loop {
                seen[f] = true;
                let (h, s) = (f / 2, f % 2);
                if record {
                    walk.push(Traversal {
                        from: h,
                        side: s as u8,
                    });
                }
                // edge move
                let o = h ^ 1;
                let s2 = if self.edges[h / 2].sign > 0 { 1 - s } else { s };
                let g = 2 * o + s2;
                seen[g] = true;
                // corner move
                let rot = &self.rotations[self.vertex_of(o)];
                let k = slot[o];
                let d = rot.len();
                f = if s2 == 0 {
                    2 * rot[(k + 1) % d] + 1
                } else {
                    2 * rot[(k + d - 1) % d]
                };
                if f == start {
                    break;
                }
            }
            if record {
                walks.push(walk);
            }
        }
        (count, walks)
    }

    /// `2 - v + e - f` for a connected map.
    pub fn euler_genus(&self) -> Result<usize, SchemeError> {
        if !self.is_connected() {
            return Err(SchemeError::Disconnected);
        }
        let v = self.vertex_count as isize;
        let e = self.edges.len() as isize;
        let f = self.face_count() as isize;
        Ok((2 - v + e - f) as usize)
    }

    /// True iff some choice of vertex flips makes every signature positive.
    pub fn is_orientable(&self) -> bool {
        let mut state = vec![0i8; self.vertex_count];
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            if e.ends[0] == e.ends[1] {
                if e.sign < 0 {
                    return false;
                }
                continue;
            }
            adj[e.ends[0]].push((e.ends[1], e.sign));
            adj[e.ends[1]].push((e.ends[0], e.sign));
        }
        for root in 0..self.vertex_count {
            if state[root] != 0 {
                continue;
            }
            state[root] = 1;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(w, s) in &adj[v] {
                    let want = state[v] * s;
                    if state[w] == 0 {
                        state[w] = want;
                        stack.push(w);
                    } else if state[w] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Reverses the rotation at `v` and inverts the signature of every
    /// non-loop edge at `v`.
    pub fn flip_vertex(&mut self, v: usize) {
        self.rotations[v].reverse();
        for e in &mut self.edges {
            if (e.ends[0] == v) != (e.ends[1] == v) {
                e.sign = -e.sign;
            }
        }
    }

    /// Contracts non-loop edge `e`, merging its endpoints. Edge ids above `e`
    /// shift down by one; the returned vector maps old edge ids to new ones.
    pub fn contract(
        &self,
        e: usize,
    ) -> Result<(RotationSystemMap, Vec<Option<usize>>), SchemeError> {
        let ed = *self
            .edges
            .get(e)
            .ok_or(SchemeError::InvalidEdge(e as u32 + 1))?;
        let (u, v) = (ed.ends[0], ed.ends[1]);
        if u == v {
            return Err(SchemeError::InvalidEdge(e as u32 + 1));
        }
        let mut m = self.clone();
        if ed.sign < 0 {
            m.flip_vertex(v);
        }
        let slot = m.slots();
        let after = |rot: &Vec<usize>, h: usize| -> Vec<usize> {
            let k = slot[h];
            (1..rot.len()).map(|j| rot[(k + j) % rot.len()]).collect()
        };
        let mut merged = after(&m.rotations[u], 2 * e);
        merged.extend(after(&m.rotations[v], 2 * e + 1));

        let remap: Vec<Option<usize>> = (0..m.edges.len())
            .map(|x| match x.cmp(&e) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            })
            .collect();
        let vmap = |w: usize| -> usize {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let hmap = |h: usize| 2 * remap[h / 2].expect("not the contracted edge") + h % 2;
        let edges = m
            .edges
            .iter()
            .enumerate()
            .filter(|(x, _)| *x != e)
            .map(|(_, me)| MapEdge {
                ends: [vmap(me.ends[0]), vmap(me.ends[1])],
                sign: me.sign,
            })
            .collect();
        let mut rotations = Vec::with_capacity(m.vertex_count - 1);
        for w in 0..m.vertex_count {
            if w == v {
                continue;
            }
            let src = if w == u {
                merged.clone()
            } else {
                m.rotations[w].clone()
            };
            rotations.push(src.into_iter().map(hmap).collect());
        }
        Ok((
            RotationSystemMap {
                vertex_count: m.vertex_count - 1,
                edges,
                rotations,
            },
            remap,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::perm;

    #[test]
    fn sphere_edge() {
        let m = perm("1").to_map();
        let f = m.faces().unwrap();
        assert_eq!(f.count(), 1);
        assert_eq!(f.faces[0].len(), 2);
        assert_eq!(m.euler_genus().unwrap(), 0);
    }

    #[test]
    fn projective_plane_pair() {
        let m = perm("1 -2").to_map();
        assert_eq!(m.face_count(), 1);
        assert!(!m.is_orientable());
        assert_eq!(m.euler_genus().unwrap(), 1);
    }

    #[test]
    fn face_partition_covers_sides() {
        let m = perm("1 -6 5 -4 3 -2").to_map();
        let f = m.faces().unwrap();
        let total: usize = f.faces.iter().map(Vec::len).sum();
        assert_eq!(total, 2 * m.edge_count());
        let mut sides = std::collections::HashSet::new();
        for w in &f.faces {
            for t in w {
                // side identity: the edge plus which side, normalized to the first half-edge
                let canon = if t.from % 2 == 0 {
                    (t.edge(), t.side)
                } else {
                    (t.edge(), 2 + t.side)
                };
                assert!(sides.insert(canon));
            }
        }
    }

    #[test]
    fn contraction_preserves_faces() {
        for text in ["1 -2", "1 3 -2", "1 -6 5 -4 3 -2", "-4 -2 -3 -1", "1 3 2 4"] {
            let p = perm(text);
            let m = p.to_map();
            for e in 0..p.n() {
                let (c, _) = m.contract(e).unwrap();
                c.check_structure().unwrap();
                assert_eq!(c.face_count(), m.face_count(), "{text} contract {e}");
                assert_eq!(c.is_orientable(), m.is_orientable());
            }
        }
    }

    #[test]
    fn disconnected_map_rejected() {
        let m = RotationSystemMap {
            vertex_count: 2,
            edges: vec![],
            rotations: vec![vec![], vec![]],
        };
        assert_eq!(m.faces(), Err(SchemeError::Disconnected));
    }
}
