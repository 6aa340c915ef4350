//! Signed cyclic permutations: the embedding scheme of a loopless graph with
//! two vertices.
//!
//! The rotation at `v1` is the identity `1, 2, …, n`; the entries give the
//! rotation at `v2`, and the sign of an entry is the signature of that edge.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::SchemeError;
use crate::map::{FaceSet, RotationSystemMap};

/// One of the two vertices of a 2-vertex scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    V1,
    V2,
}

/// A cyclic sequence of signed labels `±1..±n`, each label used once.
///
/// The stored representative always starts at the element with absolute
/// value 1, so derived `Eq`/`Hash`/`Ord` compare cyclic objects.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedCyclicPermutation {
    entries: Vec<i32>,
}

impl SignedCyclicPermutation {
    /// Builds a scheme from any rotation of its entries.
    pub fn new(entries: Vec<i32>) -> Result<Self, SchemeError> {
        let n = entries.len();
        if n == 0 {
            return Err(SchemeError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &x in &entries {
            if x == 0 {
                return Err(SchemeError::Zero);
            }
            let a = x.unsigned_abs() as usize;
            if a > n {
                return Err(SchemeError::OutOfRange { value: x, n });
            }
            if seen[a] {
                return Err(SchemeError::DuplicateElement(a as u32));
            }
            seen[a] = true;
        }
        Ok(Self::from_valid(entries))
    }

    /// Canonicalizes entries already known to be a valid signed permutation.
    pub(crate) fn from_valid(mut entries: Vec<i32>) -> Self {
        let p = entries
            .iter()
            .position(|x| x.abs() == 1)
            .expect("label 1 present");
        entries.rotate_left(p);
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "a scheme has at least one edge");
        Self {
            entries: (1..=n as i32).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        let mut entries = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            let tok = tok.trim_matches(|c| c == '(' || c == ')');
            if tok.is_empty() {
                continue;
            }
            let v: i32 = tok
                .parse()
                .map_err(|_| SchemeError::InvalidToken(tok.to_string()))?;
            entries.push(v);
        }
        Self::new(entries)
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Entries in canonical rotation (label 1 first).
    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.entries
    }

    /// Signature (+1 or -1) of edge `label`.
    pub fn sign(&self, label: u32) -> i32 {
        self.entries[self.position(label)].signum()
    }

    /// Position of edge `label` in the canonical rotation.
    pub fn position(&self, label: u32) -> usize {
        self.entries
            .iter()
            .position(|x| x.unsigned_abs() == label)
            .expect("label in range")
    }

    /// Inverse position table indexed by label (index 0 unused).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.n() + 1];
        for (k, x) in self.entries.iter().enumerate() {
            pos[x.unsigned_abs() as usize] = k;
        }
        pos
    }

    pub fn is_orientable(&self) -> bool {
        let s = self.entries[0].signum();
        self.entries.iter().all(|x| x.signum() == s)
    }

    pub fn is_sorted(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &x)| x == k as i32 + 1)
    }

    /// Sorted up to a flip at `v2`: the all-negative descending sequence.
    pub fn is_flip_sorted(&self) -> bool {
        self.is_sorted() || self.flip(Vertex::V2).is_sorted()
    }

    pub fn flip(&self, v: Vertex) -> Self {
        let n = self.n() as i32;
        match v {
            Vertex::V2 => {
                let e: Vec<i32> = self.entries.iter().rev().map(|x| -x).collect();
                Self::from_valid(e)
            }
            Vertex::V1 => {
                let e: Vec<i32> = self
                    .entries
                    .iter()
                    .map(|&x| -x.signum() * (n + 1 - x.abs()))
                    .collect();
                Self::from_valid(e)
            }
        }
    }

    /// Both flips: reverses both rotations and keeps every signature.
    pub fn mirror(&self) -> Self {
        self.flip(Vertex::V1).flip(Vertex::V2)
    }

    /// The four schemes reachable by flips (with repetitions).
    pub fn flip_class(&self) -> [Self; 4] {
        let a = self.flip(Vertex::V1);
        let b = self.flip(Vertex::V2);
        let c = a.flip(Vertex::V2);
        [self.clone(), a, b, c]
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.n() == other.n() && self.flip_class().iter().any(|p| p == other)
    }

    /// Smallest member of the flip class; a canonical key for equivalence.
    pub fn flip_canonical(&self) -> Self {
        self.flip_class().into_iter().min().expect("nonempty")
    }

    /// Relabels every edge `x` as `x + k` (cyclically in `1..=n`).
    pub fn shift_values(&self, k: usize) -> Self {
        let n = self.n() as i32;
        let k = (k % self.n()) as i32;
        let e = self
            .entries
            .iter()
            .map(|&x| x.signum() * ((x.abs() - 1 + k) % n + 1))
            .collect();
        Self::from_valid(e)
    }

    /// Reverses the cyclic interval of `len` positions starting at `start`
    /// (positions in the canonical rotation) and inverts the signs inside it.
    pub fn apply_reversal(&self, start: usize, len: usize) -> Result<Self, SchemeError> {
        let n = self.n();
        if len == 0 || len >= n || start >= n {
            return Err(SchemeError::InvalidInterval { start, len, n });
        }
        let mut e = self.entries.clone();
        for j in 0..len {
            e[(start + j) % n] = -self.entries[(start + len - 1 - j) % n];
        }
        Ok(Self::from_valid(e))
    }

    pub fn to_map(&self) -> RotationSystemMap {
        RotationSystemMap::from_scheme(self)
    }

    pub fn faces(&self) -> FaceSet {
        self.to_map()
            .faces()
            .expect("2-vertex schemes are connected")
    }

    pub fn face_count(&self) -> usize {
        self.to_map().face_count()
    }

    /// `e - f`, i.e. `2 - v + e - f` with two vertices.
    pub fn euler_genus(&self) -> usize {
        self.n() - self.face_count()
    }

    /// Minimum number of cross-caps of a drawing of the scheme.
    pub fn crosscap_number(&self) -> usize {
        let eg = self.euler_genus();
        if !self.is_orientable() {
            eg
        } else if eg > 0 {
            eg + 1
        } else {
            0
        }
    }

    /// Sub-scheme on the given labels, relabeled `1..` in their `v1` order.
    pub fn restrict(&self, keep: &[u32]) -> Result<Self, SchemeError> {
        let mut labels: Vec<u32> = keep.to_vec();
        labels.sort_unstable();
        labels.dedup();
        if labels.is_empty() {
            return Err(SchemeError::Empty);
        }
        let mut rank = vec![0i32; self.n() + 1];
        for (k, &l) in labels.iter().enumerate() {
            if l == 0 || l as usize > self.n() {
                return Err(SchemeError::InvalidEdge(l));
            }
            rank[l as usize] = k as i32 + 1;
        }
        let e = self
            .entries
            .iter()
            .filter(|x| rank[x.unsigned_abs() as usize] != 0)
            .map(|&x| x.signum() * rank[x.unsigned_abs() as usize])
            .collect();
        Ok(Self::from_valid(e))
    }
}

impl fmt::Display for SignedCyclicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedCyclicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for SignedCyclicPermutation {
    type Err = SchemeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for SignedCyclicPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedCyclicPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        Self::new(v).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout tests and assets.
pub fn perm(text: &str) -> SignedCyclicPermutation {
    SignedCyclicPermutation::parse(text).expect("valid permutation literal")
}
