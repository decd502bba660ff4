//! Canonical circulant graphs `C_n(R)` and the plain modular plumbing around
//! them: reflexive reduction of jump values, edge materialization and the
//! periodic-cycle statistics of a single jump.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest order accepted for a circulant graph.
pub const MIN_ORDER: u64 = 3;

/// A connection set folded into `[1, n/2]`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JumpSet {
    n: u64,
    jumps: Vec<u64>,
}

impl JumpSet {
    /// Reflexive modular reduction: each value is reduced mod `n` and then
    /// replaced by `n - r` whenever it exceeds `n / 2`.
    pub fn reduce<I>(n: u64, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        if n < MIN_ORDER {
            return Err(Error::InvalidOrder { n, min: MIN_ORDER });
        }
        let modulus = n as i64;
        let mut jumps = Vec::new();
        for value in raw {
            let r = value.rem_euclid(modulus) as u64;
            if r == 0 {
                return Err(Error::InvalidJump { n, value });
            }
            jumps.push(fold(n, r));
        }
        if jumps.is_empty() {
            return Err(Error::EmptyConnectionSet);
        }
        jumps.sort_unstable();
        jumps.dedup();
        Ok(JumpSet { n, jumps })
    }

    /// Same as [`JumpSet::reduce`] for residues that are already non-negative.
    pub fn from_residues<I>(n: u64, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        Self::reduce(n, raw.into_iter().map(|v| v as i64))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn jumps(&self) -> &[u64] {
        &self.jumps
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn contains(&self, jump: u64) -> bool {
        self.jumps.binary_search(&jump).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.jumps.iter().copied()
    }

    /// True when `n` is even and the self-paired jump `n/2` is present.
    pub fn has_half_jump(&self) -> bool {
        self.n.is_multiple_of(2) && self.jumps.last() == Some(&(self.n / 2))
    }

    /// Jumps divisible by `m`; these are the anchors of a rotation modulus.
    pub fn anchors(&self, m: u64) -> impl Iterator<Item = u64> + '_ {
        self.jumps.iter().copied().filter(move |j| j % m == 0)
    }
}

impl fmt::Display for JumpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.jumps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// Folds a non-zero residue into `[1, n/2]`.
#[inline]
pub fn fold(n: u64, r: u64) -> u64 {
    if 2 * r > n {
        n - r
    } else {
        r
    }
}

/// `reflexive_reduce` under its descriptive name.
pub fn reflexive_reduce(n: u64, raw: &[i64]) -> Result<JumpSet> {
    JumpSet::reduce(n, raw.iter().copied())
}

/// The circulant graph `C_n(R)`. Equality is structural: same order and the
/// same canonical jump sequence. Isomorphism is never implied by equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantGraph {
    jumps: JumpSet,
}

impl CirculantGraph {
    pub fn new(jumps: JumpSet) -> Self {
        CirculantGraph { jumps }
    }

    pub fn n(&self) -> u64 {
        self.jumps.n
    }

    pub fn jumps(&self) -> &JumpSet {
        &self.jumps
    }

    pub fn into_jumps(self) -> JumpSet {
        self.jumps
    }

    /// Vertex degree: two per jump, one for the self-paired `n/2`.
    pub fn degree(&self) -> u64 {
        2 * self.jumps.len() as u64 - u64::from(self.jumps.has_half_jump())
    }

    /// Number of edges predicted from the connection set alone.
    pub fn edge_count(&self) -> u64 {
        let n = self.n();
        let k = self.jumps.len() as u64;
        if self.jumps.has_half_jump() {
            n * (k - 1) + n / 2
        } else {
            n * k
        }
    }
}

impl fmt::Display for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}(", self.n())?;
        for (i, j) in self.jumps.jumps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for CirculantGraph {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.jumps.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CirculantGraph {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u64,
            jumps: Vec<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        make_circulant(raw.n, &raw.jumps).map_err(serde::de::Error::custom)
    }
}

/// Canonical constructor: reduces `raw` reflexively and wraps it as a graph.
pub fn make_circulant(n: u64, raw: &[i64]) -> Result<CirculantGraph> {
    reflexive_reduce(n, raw).map(CirculantGraph::new)
}

/// `R ∪ (n − R)` as residues in `[1, n−1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DirectedJumpSet {
    n: u64,
    values: Vec<u64>,
}

impl DirectedJumpSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn contains(&self, v: u64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// `v ∈ values ⟺ n − v ∈ values` and `0 ∉ values`.
    pub fn is_negation_closed(&self) -> bool {
        self.values.iter().all(|&v| v != 0 && v < self.n && self.contains(self.n - v))
    }
}

pub fn symmetric_closure(g: &CirculantGraph) -> DirectedJumpSet {
    let n = g.n();
    let mut values: Vec<u64> = g.jumps().iter().flat_map(|j| [j, n - j]).collect();
    values.sort_unstable();
    values.dedup();
    DirectedJumpSet { n, values }
}

/// A simple graph on the vertex set `Z_n`, stored as a sorted list of
/// unordered pairs `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: u64,
    edges: Vec<(u64, u64)>,
}

impl LabeledGraph {
    /// Builds a graph from arbitrary vertex pairs; pairs are normalized and
    /// deduplicated, loops are dropped.
    pub fn from_pairs<I>(n: u64, pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut edges: Vec<(u64, u64)> = pairs
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        LabeledGraph { n, edges }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u64, b: u64) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency lists for every vertex.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// `{ {x, x+s} : x ∈ Z_n, s ∈ R }`.
pub fn edge_set(g: &CirculantGraph) -> LabeledGraph {
    let n = g.n();
    let pairs = (0..n).flat_map(|x| g.jumps().iter().map(move |s| (x, (x + s) % n)));
    LabeledGraph::from_pairs(n, pairs)
}

/// Periodic cycles of a single jump `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleStats {
    pub jump: u64,
    pub gcd: u64,
    pub cycle_length: u64,
    pub cycle_count: u64,
}

/// Walks `x ↦ x + r (mod n)` from every unvisited start and records the
/// cycles it traces. The walk must produce `gcd(n, r)` cycles of equal
/// length `n / gcd(n, r)`.
pub fn period_cycle_stats(n: u64, r: u64) -> Result<CycleStats> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, min: 2 });
    }
    if r == 0 || r >= n {
        return Err(Error::InvalidJump { n, value: r as i64 });
    }
    let mut seen = vec![false; n as usize];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        while !seen[x as usize] {
            seen[x as usize] = true;
            len += 1;
            x = (x + r) % n;
        }
        lengths.push(len);
    }
    let g = n.gcd(&r);
    debug_assert!(lengths.iter().all(|&l| l == n / g));
    Ok(CycleStats { jump: r, gcd: g, cycle_length: lengths[0], cycle_count: lengths.len() as u64 })
}

/// `k · C_n(T) = C_{kn}(kT)`.
pub fn scale(k: u64, g: &CirculantGraph) -> Result<CirculantGraph> {
    if k == 0 {
        return Err(Error::InvalidScale);
    }
    let n = g.n() * k;
    let jumps = g.jumps().iter().map(|j| j * k).collect();
    Ok(CirculantGraph::new(JumpSet { n, jumps }))
}
