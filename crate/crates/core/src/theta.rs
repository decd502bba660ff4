//! The rotation map `θ_{n,m,t}(x) = x + j·t·m (mod n)` where `j = x mod m`,
//! images of circulant graphs under it, exact circulant detection and the
//! per-shift classification used to find Type-2 isomorphisms.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_set, CirculantGraph, JumpSet, LabeledGraph};
use crate::type1::type1_witnesses;

/// Smallest connection set size that can carry a Type-2 verdict.
pub const MIN_TYPE2_SIZE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ThetaInvalidity {
    /// `m ≤ 1`.
    MTooSmall { m: u64 },
    /// `m³ ∤ n`.
    NoDivisorCubed { n: u64, m: u64 },
    /// No jump of the connection set is divisible by `m`.
    NoAnchorJump { m: u64 },
    /// `t ∉ [0, n/m − 1]`.
    ShiftOutOfRange { t: u64, limit: u64 },
    /// Parameters and graph disagree on the order.
    OrderMismatch { n: u64, graph_n: u64 },
}

impl fmt::Display for ThetaInvalidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ThetaInvalidity::MTooSmall { m } => write!(f, "m = {m} must exceed 1"),
            ThetaInvalidity::NoDivisorCubed { n, m } => {
                write!(f, "m^3 = {} does not divide n = {n}", m.saturating_pow(3))
            }
            ThetaInvalidity::NoAnchorJump { m } => write!(f, "no jump is divisible by m = {m}"),
            ThetaInvalidity::ShiftOutOfRange { t, limit } => {
                write!(f, "shift t = {t} outside [0, {}]", limit.saturating_sub(1))
            }
            ThetaInvalidity::OrderMismatch { n, graph_n } => {
                write!(f, "parameters are for order {n} but the graph has order {graph_n}")
            }
        }
    }
}

/// A validated rotation modulus for order `n`: `m > 1` and `m³ | n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rotation {
    n: u64,
    m: u64,
}

impl Rotation {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        let reasons = modulus_reasons(n, m);
        if reasons.is_empty() {
            Ok(Rotation { n, m })
        } else {
            Err(Error::InvalidTheta(reasons))
        }
    }

    /// Like [`Rotation::new`] but also requires an anchor jump in `g`.
    pub fn for_graph(g: &CirculantGraph, m: u64) -> Result<Self> {
        let report = theta_params(g.n(), m, g.jumps());
        if report.is_valid() {
            Ok(Rotation { n: g.n(), m })
        } else {
            Err(Error::InvalidTheta(report.reasons))
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Number of distinct shifts, `n / m`.
    pub fn shift_count(&self) -> u64 {
        self.n / self.m
    }

    pub fn at(&self, t: u64) -> Result<ThetaParams> {
        if t >= self.shift_count() {
            return Err(Error::InvalidTheta(vec![ThetaInvalidity::ShiftOutOfRange {
                t,
                limit: self.shift_count(),
            }]));
        }
        Ok(ThetaParams { n: self.n, m: self.m, t })
    }

    /// Shift index reduced modulo `n/m`.
    pub fn at_wrapped(&self, t: u64) -> ThetaParams {
        ThetaParams { n: self.n, m: self.m, t: t % self.shift_count() }
    }
}

/// Parameters of one map `θ_{n,m,t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ThetaParams {
    n: u64,
    m: u64,
    t: u64,
}

impl ThetaParams {
    pub fn new(n: u64, m: u64, t: u64) -> Result<Self> {
        Rotation::new(n, m)?.at(t)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn rotation(&self) -> Rotation {
        Rotation { n: self.n, m: self.m }
    }
}

/// Outcome of checking `(n, m)` against a connection set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaValidity {
    pub n: u64,
    pub m: u64,
    pub reasons: Vec<ThetaInvalidity>,
}

impl ThetaValidity {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }
}

fn modulus_reasons(n: u64, m: u64) -> Vec<ThetaInvalidity> {
    let mut reasons = Vec::new();
    if m <= 1 {
        reasons.push(ThetaInvalidity::MTooSmall { m });
    } else {
        match m.checked_pow(3) {
            Some(cube) if n.is_multiple_of(cube) => {}
            _ => reasons.push(ThetaInvalidity::NoDivisorCubed { n, m }),
        }
    }
    reasons
}

/// Checks `m > 1`, `m³ | n` and the presence of a jump divisible by `m`
/// (since `m | n`, `m | gcd(n, r)` is the same as `m | r`). All failing
/// conditions are reported.
pub fn theta_params(n: u64, m: u64, r: &JumpSet) -> ThetaValidity {
    let mut reasons = modulus_reasons(n, m);
    if r.n() != n {
        reasons.push(ThetaInvalidity::OrderMismatch { n, graph_n: r.n() });
    }
    if m > 1 && r.anchors(m).next().is_none() {
        reasons.push(ThetaInvalidity::NoAnchorJump { m });
    }
    ThetaValidity { n, m, reasons }
}

/// Every `m` admissible for `C_n(R)`, ascending.
pub fn admissible_moduli(n: u64, r: &JumpSet) -> Vec<u64> {
    (2..)
        .take_while(|m: &u64| m.saturating_pow(3) <= n)
        .filter(|&m| theta_params(n, m, r).is_valid())
        .collect()
}

#[inline]
pub fn theta_vertex(p: &ThetaParams, x: u64) -> u64 {
    let j = x % p.m;
    (x + j * p.t * p.m) % p.n
}

/// The image of `C_n(R)`'s edge set under `θ_{n,m,t}`.
pub fn theta_image(p: &ThetaParams, g: &CirculantGraph) -> Result<LabeledGraph> {
    let report = theta_params(p.n, p.m, g.jumps());
    if !report.is_valid() {
        return Err(Error::InvalidTheta(report.reasons));
    }
    Ok(image_unchecked(p, g))
}

/// Applies `θ_{n,m,t}` to the vertices of an arbitrary graph on `Z_n`.
pub fn theta_relabel(p: &ThetaParams, h: &LabeledGraph) -> LabeledGraph {
    let pairs = h.edges().iter().map(|&(a, b)| (theta_vertex(p, a), theta_vertex(p, b)));
    LabeledGraph::from_pairs(h.n(), pairs)
}

pub(crate) fn image_unchecked(p: &ThetaParams, g: &CirculantGraph) -> LabeledGraph {
    let n = g.n();
    let pairs = (0..n).flat_map(|x| {
        g.jumps().iter().map(move |s| (theta_vertex(p, x), theta_vertex(p, (x + s) % n)))
    });
    LabeledGraph::from_pairs(n, pairs)
}

/// Neighbours of vertex 0, as residues.
pub fn zero_neighborhood(h: &LabeledGraph) -> Vec<u64> {
    h.neighbors(0)
}

/// The fast symmetry pre-test: the neighbourhood of vertex 0 is closed
/// under `v ↦ n − v`. Necessary for the graph to be circulant.
pub fn zero_neighborhood_symmetric(h: &LabeledGraph) -> bool {
    let n = h.n();
    let d = zero_neighborhood(h);
    d.iter().all(|&v| d.binary_search(&(n - v)).is_ok())
}

/// Returns the connection set `S` when `h` is exactly `C_n(S)`.
pub fn detect_circulant(h: &LabeledGraph) -> Option<JumpSet> {
    if !zero_neighborhood_symmetric(h) {
        return None;
    }
    let d = zero_neighborhood(h);
    let s = JumpSet::from_residues(h.n(), d).ok()?;
    let candidate = CirculantGraph::new(s);
    if candidate.edge_count() != h.edge_count() as u64 {
        return None;
    }
    (edge_set(&candidate) == *h).then(|| candidate.into_jumps())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The image is not a circulant graph ("NS").
    NonCirculant,
    /// The image is the base graph.
    Identity,
    /// The image is `C_n(xR)` for some unit `x`, different from the base.
    Type1,
    /// The image is circulant and no unit multiplier produces it.
    Type2,
    /// Circulant, not a unit multiple, but `|R| < 3` so the Type-2
    /// definition does not apply.
    Unclassified,
}

impl Verdict {
    /// Column label used in rendered tables.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::NonCirculant => "NS",
            Verdict::Identity => "Yes (Identity)",
            Verdict::Type1 => "T1",
            Verdict::Type2 => "Yes (Type-2)",
            Verdict::Unclassified => "Yes (unclassified)",
        }
    }

    pub fn is_circulant(&self) -> bool {
        !matches!(self, Verdict::NonCirculant)
    }
}

/// Classification of the image for one shift `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TClassification {
    pub t: u64,
    pub verdict: Verdict,
    pub image: Option<JumpSet>,
    pub witnesses: Vec<u64>,
    /// `θ(s)` for each `s` of the symmetric closure, in closure order.
    pub directed_values: Vec<u64>,
    /// Result of the 0-neighbourhood symmetry pre-test.
    pub zero_symmetric: bool,
}

impl TClassification {
    pub fn image_graph(&self) -> Option<CirculantGraph> {
        self.image.clone().map(CirculantGraph::new)
    }

    /// The image is circulant although the necessary pre-test rejected it.
    pub fn pretest_contradicted(&self) -> bool {
        self.verdict.is_circulant() && !self.zero_symmetric
    }
}

pub fn classify_t(p: &ThetaParams, g: &CirculantGraph) -> Result<TClassification> {
    let report = theta_params(p.n, p.m, g.jumps());
    if !report.is_valid() {
        return Err(Error::InvalidTheta(report.reasons));
    }
    Ok(classify_unchecked(p, g))
}

pub(crate) fn classify_unchecked(p: &ThetaParams, g: &CirculantGraph) -> TClassification {
    let n = g.n();
    let directed_values = g
        .jumps()
        .iter()
        .flat_map(|j| [j, n - j])
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|s| theta_vertex(p, s))
        .collect();
    let h = image_unchecked(p, g);
    let zero_symmetric = zero_neighborhood_symmetric(&h);
    let (verdict, image, witnesses) = match detect_circulant(&h) {
        None => (Verdict::NonCirculant, None, Vec::new()),
        Some(s) if s == *g.jumps() => (Verdict::Identity, Some(s), vec![1]),
        Some(s) => {
            let target = CirculantGraph::new(s.clone());
            let w = type1_witnesses(g, &target).expect("same order");
            let verdict = if !w.is_empty() {
                Verdict::Type1
            } else if g.jumps().len() >= MIN_TYPE2_SIZE {
                Verdict::Type2
            } else {
                Verdict::Unclassified
            };
            (verdict, Some(s), w)
        }
    };
    TClassification { t: p.t, verdict, image, witnesses, directed_values, zero_symmetric }
}

/// One row per `t = 0 .. n/m − 1`, optionally restricted to a range.
pub fn classification_table(
    n: u64,
    m: u64,
    g: &CirculantGraph,
    shifts: Option<std::ops::RangeInclusive<u64>>,
) -> Result<Vec<TClassification>> {
    if g.n() != n {
        return Err(Error::OrderMismatch { left: n, right: g.n() });
    }
    let rot = Rotation::for_graph(g, m)?;
    let shifts = shifts.unwrap_or(0..=rot.shift_count() - 1);
    let ts: Vec<u64> = shifts.collect();
    Ok(ts.par_iter().map(|&t| classify_unchecked(&rot.at_wrapped(t), g).with_t(t)).collect())
}

impl TClassification {
    fn with_t(mut self, t: u64) -> Self {
        self.t = t;
        self
    }
}
