//! The orbit `V_{n,m}` of a circulant graph under the shifts `θ_{n,m,t}`, the
//! Type-2 set inside it, their index groups, the appended-jump check and an
//! exhaustive census of Type-2 classes.

use std::collections::{BTreeSet, HashSet};
use std::ops::RangeInclusive;

use itertools::Itertools;
use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_set, fold, CirculantGraph, JumpSet, LabeledGraph};
use crate::theta::{
    classify_unchecked, image_unchecked, theta_params, theta_relabel, Rotation, TClassification,
    Verdict,
};
use crate::type1::check_group_table;

/// Default cap on the number of candidate connection sets a census may visit.
pub const DEFAULT_CENSUS_BUDGET: u128 = 10_000_000;

const CENSUS_CHUNK: usize = 2048;

fn sweep(rot: &Rotation, g: &CirculantGraph) -> Vec<TClassification> {
    (0..rot.shift_count()).map(|t| classify_unchecked(&rot.at_wrapped(t), g)).collect()
}

fn par_sweep(rot: &Rotation, g: &CirculantGraph) -> Vec<TClassification> {
    (0..rot.shift_count())
        .into_par_iter()
        .map(|t| classify_unchecked(&rot.at_wrapped(t), g))
        .collect()
}

fn checked_rotation(n: u64, m: u64, g: &CirculantGraph) -> Result<Rotation> {
    if g.n() != n {
        return Err(Error::OrderMismatch { left: n, right: g.n() });
    }
    Rotation::for_graph(g, m)
}

/// Smallest `d > 0` whose row is the identity, or the row count if none is.
fn identity_period(rows: &[TClassification]) -> u64 {
    rows.iter().skip(1).find(|r| r.verdict == Verdict::Identity).map_or(rows.len() as u64, |r| r.t)
}

/// One entry of the orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VImage {
    pub t: u64,
    pub verdict: Verdict,
    pub image: Option<JumpSet>,
    /// The image edge set when it is not circulant.
    #[serde(skip)]
    pub raw: Option<LabeledGraph>,
}

impl VImage {
    /// The image as a labeled graph, circulant or not.
    pub fn labeled(&self) -> LabeledGraph {
        match (&self.image, &self.raw) {
            (Some(s), _) => edge_set(&CirculantGraph::new(s.clone())),
            (None, Some(h)) => h.clone(),
            (None, None) => unreachable!("non-circulant image without edges"),
        }
    }
}

/// `V_{n,m}(C_n(R))`: every `θ_{n,m,t}(C_n(R))` for `t = 0 .. n/m − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VSet {
    pub base: CirculantGraph,
    pub n: u64,
    pub m: u64,
    pub images: Vec<VImage>,
    /// Circulant images without repetition, sorted.
    pub distinct: Vec<CirculantGraph>,
    pub graph_period: u64,
    /// Property violations found while building the set.
    pub findings: Vec<String>,
}

impl VSet {
    pub fn modulus(&self) -> u64 {
        self.images.len() as u64
    }

    /// Every row is the base or a Type-2 image.
    pub fn all_type2_or_identity(&self) -> bool {
        self.images.iter().all(|im| matches!(im.verdict, Verdict::Identity | Verdict::Type2))
    }

    pub fn identity_indices(&self) -> Vec<u64> {
        self.images.iter().filter(|im| im.verdict == Verdict::Identity).map(|im| im.t).collect()
    }
}

pub fn v_set(n: u64, m: u64, g: &CirculantGraph) -> Result<VSet> {
    let rot = checked_rotation(n, m, g)?;
    let rows = par_sweep(&rot, g);
    let images: Vec<VImage> = rows
        .into_par_iter()
        .map(|row| {
            let raw = match row.verdict {
                Verdict::NonCirculant => Some(image_unchecked(&rot.at_wrapped(row.t), g)),
                _ => None,
            };
            VImage { t: row.t, verdict: row.verdict, image: row.image, raw }
        })
        .collect();

    let distinct: Vec<CirculantGraph> = images
        .iter()
        .filter_map(|im| im.image.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(CirculantGraph::new)
        .collect();

    let k = images.len() as u64;
    let graph_period =
        images.iter().skip(1).find(|im| im.verdict == Verdict::Identity).map_or(k, |im| im.t);

    let mut findings = Vec::new();
    if images[0].verdict != Verdict::Identity {
        findings.push(format!("shift 0 does not fix {g}"));
    }
    if !k.is_multiple_of(graph_period) {
        findings.push(format!("graph period {graph_period} does not divide {k}"));
    }
    for im in &images {
        let is_identity = im.verdict == Verdict::Identity;
        if is_identity != (im.t % graph_period == 0) {
            findings.push(format!("identity at t = {} breaks period {graph_period}", im.t));
        }
    }
    Ok(VSet { base: g.clone(), n, m, images, distinct, graph_period, findings })
}

/// Label of one coset of the period subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Label {
    pub t: u64,
    pub graph: Option<CirculantGraph>,
}

/// An index subgroup of `Z_{n/m}` quotiented by the graph period, with each
/// coset labeled by its image graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitGroup {
    pub modulus: u64,
    pub generator: u64,
    /// Order of the quotient, the number of distinct labels.
    pub order: usize,
    /// Order of the index subgroup before quotienting.
    pub index_order: u64,
    pub period: u64,
    pub labels: Vec<Label>,
    #[serde(skip)]
    pub table: Vec<Vec<usize>>,
}

impl OrbitGroup {
    /// Member position of the coset containing index `t`.
    pub fn position(&self, t: u64) -> Option<usize> {
        if self.generator == 0 || !t.is_multiple_of(self.generator) {
            return None;
        }
        Some(((t % self.period) / self.generator) as usize)
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (self.order - i) % self.order
    }
}

/// Table of `Z_k` written additively.
fn cyclic_table(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect()
}

fn check_cyclic(table: &[Vec<usize>]) -> Result<()> {
    check_group_table(table, 0)?;
    let k = table.len();
    for i in 0..k {
        if table[i][(k - i) % k] != 0 {
            return Err(Error::GroupAxiom(format!("{} is not the inverse of {i}", (k - i) % k)));
        }
    }
    Ok(())
}

/// `(V_{n,m}(C_n(R)), ∘)` on the index group `Z_{n/m}`. The labeling is
/// checked to be constant on cosets of the period, and the orbit is
/// checked at the vertex level: `θ_1` carries image `t` onto image `t + 1`.
pub fn v_group(v: &VSet) -> Result<OrbitGroup> {
    let k = v.modulus();
    let d = v.graph_period;
    if d == 0 || !k.is_multiple_of(d) {
        return Err(Error::GroupAxiom(format!("period {d} does not divide {k}")));
    }
    if v.images[0].verdict != Verdict::Identity {
        return Err(Error::GroupAxiom("index 0 does not label the base graph".into()));
    }
    let rot = Rotation::new(v.n, v.m)?;
    let step = rot.at_wrapped(1);
    let labeled: Vec<LabeledGraph> = v.images.par_iter().map(VImage::labeled).collect();
    let broken = (0..k as usize).into_par_iter().find_first(|&t| {
        let next = (t + 1) % k as usize;
        theta_relabel(&step, &labeled[t]) != labeled[next] || labeled[t] != labeled[t % d as usize]
    });
    if let Some(t) = broken {
        return Err(Error::GroupAxiom(format!("orbit law fails at index {t}")));
    }

    let table = cyclic_table(d as usize);
    check_cyclic(&table)?;
    let labels = v.images[..d as usize]
        .iter()
        .map(|im| Label { t: im.t, graph: im.image.clone().map(CirculantGraph::new) })
        .collect();
    Ok(OrbitGroup {
        modulus: k,
        generator: 1,
        order: d as usize,
        index_order: k,
        period: d,
        labels,
        table,
    })
}

/// `T2_{n,m}(C_n(R))`: the base together with its Type-2 images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Type2Set {
    pub base: CirculantGraph,
    pub m: u64,
    pub modulus: u64,
    /// Sorted.
    pub members: Vec<CirculantGraph>,
    /// Every `t` whose row is the identity or a Type-2 image.
    pub t2_indices: Vec<u64>,
    /// Image at each index of `t2_indices`.
    pub t2_images: Vec<JumpSet>,
    pub graph_period: u64,
    /// Every row of the sweep is the identity or a Type-2 image.
    pub equals_v: bool,
}

impl Type2Set {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &CirculantGraph) -> bool {
        self.members.binary_search(g).is_ok()
    }

    pub fn is_singleton(&self) -> bool {
        self.members.len() == 1
    }

    /// Shifts realizing `g` as an image of the base.
    pub fn shifts_to(&self, g: &CirculantGraph) -> Vec<u64> {
        self.t2_indices
            .iter()
            .zip(&self.t2_images)
            .filter(|(_, s)| *s == g.jumps())
            .map(|(&t, _)| t)
            .collect()
    }
}

fn type2_from_rows(g: &CirculantGraph, m: u64, rows: &[TClassification]) -> Type2Set {
    let mut members = BTreeSet::from([g.clone()]);
    let mut t2_indices = Vec::new();
    let mut t2_images = Vec::new();
    for row in rows {
        if matches!(row.verdict, Verdict::Identity | Verdict::Type2) {
            let s = row.image.clone().expect("circulant rows carry their image");
            t2_indices.push(row.t);
            t2_images.push(s.clone());
            members.insert(CirculantGraph::new(s));
        }
    }
    let equals_v = t2_indices.len() == rows.len();
    let members: Vec<CirculantGraph> = members.into_iter().collect();
    debug_assert!(members.iter().all(|h| h.jumps().anchors(m).next().is_some()));
    Type2Set {
        base: g.clone(),
        m,
        modulus: rows.len() as u64,
        members,
        t2_indices,
        t2_images,
        graph_period: identity_period(rows),
        equals_v,
    }
}

pub fn t2_set(n: u64, m: u64, g: &CirculantGraph) -> Result<Type2Set> {
    let rot = checked_rotation(n, m, g)?;
    Ok(type2_from_rows(g, m, &par_sweep(&rot, g)))
}

/// `(T2_{n,m}(C_n(R)), ∘)` as a subgroup of the orbit group. Fails with
/// [`Error::SubgroupViolation`] when the indices are not a subgroup of
/// `Z_{n/m}` or the quotient does not match the member list.
pub fn t2_group(s: &Type2Set) -> Result<OrbitGroup> {
    let k = s.modulus;
    let violation = |detail: String| Error::SubgroupViolation { modulus: k, detail };
    let idx: BTreeSet<u64> = s.t2_indices.iter().copied().collect();
    if !idx.contains(&0) {
        return Err(violation("0 is missing".into()));
    }
    for &a in &idx {
        if !idx.contains(&((k - a) % k)) {
            return Err(violation(format!("{a} has no inverse")));
        }
        for &b in &idx {
            if !idx.contains(&((a + b) % k)) {
                return Err(violation(format!("{a} + {b} is missing")));
            }
        }
    }
    let generator = idx.iter().copied().find(|&t| t > 0).unwrap_or(k);
    if idx.iter().any(|t| t % generator != 0) || idx.len() as u64 != k / generator {
        return Err(violation(format!("not generated by {generator}")));
    }
    let d = s.graph_period;
    if !d.is_multiple_of(generator) {
        return Err(violation(format!("period {d} is not a multiple of {generator}")));
    }
    let image_at = |t: u64| -> Option<&JumpSet> {
        s.t2_indices.binary_search(&t).ok().map(|i| &s.t2_images[i])
    };
    let order = (d / generator) as usize;
    let mut labels = Vec::with_capacity(order);
    for i in 0..order as u64 {
        let t = i * generator;
        let img = image_at(t).ok_or_else(|| violation(format!("no image at {t}")))?;
        for lift in (t..k).step_by(d as usize) {
            if image_at(lift) != Some(img) {
                return Err(violation(format!("label of {t} differs at {lift}")));
            }
        }
        labels.push(Label { t, graph: Some(CirculantGraph::new(img.clone())) });
    }
    let label_set: BTreeSet<&CirculantGraph> =
        labels.iter().filter_map(|l| l.graph.as_ref()).collect();
    if label_set.len() != order || !label_set.iter().copied().eq(s.members.iter()) {
        return Err(violation(format!(
            "quotient of order {order} does not match {} members",
            s.members.len()
        )));
    }
    let table = cyclic_table(order);
    check_cyclic(&table)?;
    Ok(OrbitGroup {
        modulus: k,
        generator,
        order,
        index_order: idx.len() as u64,
        period: d,
        labels,
        table,
    })
}

/// `C_n(S) ∈ T2_{n,m}(C_n(R))`. Debug builds also check that the two
/// Type-2 sets are then equal, and disjoint otherwise.
pub fn t2_set_equality(g: &CirculantGraph, h: &CirculantGraph, m: u64) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::OrderMismatch { left: g.n(), right: h.n() });
    }
    let tg = t2_set(g.n(), m, g)?;
    let forward = tg.contains(h);
    if cfg!(debug_assertions) {
        if let Ok(th) = t2_set(h.n(), m, h) {
            if forward {
                assert_eq!(tg.members, th.members, "Type-2 sets of {g} and {h} differ");
                let rot = Rotation::new(g.n(), m)?;
                let u = tg.shifts_to(h)[0];
                for (&t, s) in th.t2_indices.iter().zip(&th.t2_images) {
                    let shifted = image_unchecked(&rot.at_wrapped(u + t), g);
                    assert_eq!(
                        shifted,
                        edge_set(&CirculantGraph::new(s.clone())),
                        "shift {u} + {t} of {g} disagrees with shift {t} of {h}"
                    );
                }
            } else {
                assert!(
                    tg.members.iter().all(|x| !th.contains(x)),
                    "Type-2 sets of {g} and {h} overlap"
                );
            }
        }
    }
    Ok(forward)
}

/// Evidence that removing an anchor jump kills every Type-2 partner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppendedJumpReport {
    pub n: u64,
    pub m: u64,
    pub anchor: u64,
    pub base: CirculantGraph,
    pub extended: CirculantGraph,
    pub extended_t2: Vec<CirculantGraph>,
    pub rows: Vec<TClassification>,
    /// For each Type-2 shift `t` of the extended graph, the base image is
    /// the partner with the anchor removed.
    pub removal_images_match: bool,
    pub holds: bool,
}

pub fn appended_jump_check(
    n: u64,
    m: u64,
    r: u64,
    base: &CirculantGraph,
) -> Result<AppendedJumpReport> {
    let inapplicable = |why: String| Err(Error::Inapplicable(why));
    if base.n() != n {
        return Err(Error::OrderMismatch { left: n, right: base.n() });
    }
    if m <= 1 || !r.is_multiple_of(m) {
        return inapplicable(format!("{r} is not divisible by m = {m}"));
    }
    let rot = match Rotation::new(n, m) {
        Ok(rot) => rot,
        Err(e) => return inapplicable(e.to_string()),
    };
    if r.is_multiple_of(n) {
        return Err(Error::InvalidJump { n, value: r as i64 });
    }
    let anchor = fold(n, r % n);
    let extended = JumpSet::from_residues(n, base.jumps().iter().chain([anchor]))?;
    if base.jumps().contains(anchor) {
        return inapplicable(format!("{anchor} already belongs to {base}"));
    }
    if base.jumps().anchors(m).next().is_some() {
        return inapplicable(format!("{base} already has a jump divisible by {m}"));
    }
    let extended = CirculantGraph::new(extended);
    let ext_rows = sweep(&rot, &extended);
    let ext_t2 = type2_from_rows(&extended, m, &ext_rows);
    if ext_t2.is_singleton() {
        return inapplicable(format!("{extended} has no Type-2 partner w.r.t. {m}"));
    }

    let rows = sweep(&rot, base);
    let holds =
        rows.iter().all(|row| !matches!(row.verdict, Verdict::Type2 | Verdict::Unclassified));
    let removal_images_match =
        ext_rows.iter().filter(|row| row.verdict == Verdict::Type2).all(|row| {
            let s = row.image.as_ref().expect("Type-2 rows carry their image");
            let stripped: Vec<u64> = s.iter().filter(|&j| j != anchor).collect();
            let expected = JumpSet::from_residues(n, stripped).ok();
            rows[row.t as usize].image == expected
        });
    Ok(AppendedJumpReport {
        n,
        m,
        anchor,
        base: base.clone(),
        extended,
        extended_t2: ext_t2.members,
        rows,
        removal_images_match,
        holds,
    })
}

/// Which candidate sets a census visits, beyond having an anchor jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorFilter {
    /// Any jump divisible by `m`.
    AnyAnchor,
    /// This particular jump must be present.
    RequireJump(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusConfig {
    pub n: u64,
    pub m: u64,
    pub sizes: RangeInclusive<usize>,
    pub filter: AnchorFilter,
    pub max_candidates: u128,
}

impl CensusConfig {
    pub fn new(n: u64, m: u64, sizes: RangeInclusive<usize>) -> Self {
        CensusConfig {
            n,
            m,
            sizes,
            filter: AnchorFilter::AnyAnchor,
            max_candidates: DEFAULT_CENSUS_BUDGET,
        }
    }

    /// Number of folded connection sets with a size in range.
    pub fn candidate_count(&self) -> u128 {
        let half = (self.n / 2) as u128;
        self.sizes.clone().filter(|&k| k as u128 <= half).map(|k| binomial(half, k as u128)).sum()
    }

    fn accepts(&self, jumps: &[u64]) -> bool {
        match self.filter {
            AnchorFilter::AnyAnchor => jumps.iter().any(|j| j % self.m == 0),
            AnchorFilter::RequireJump(r) => r % self.m == 0 && jumps.binary_search(&r).is_ok(),
        }
    }
}

/// A Type-2 class with more than one member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusClass {
    /// Lexicographically least member.
    pub representative: CirculantGraph,
    pub members: Vec<CirculantGraph>,
    pub t2_indices: Vec<u64>,
    pub graph_period: u64,
    /// `T2 = V`: every shift of the representative is the identity or Type-2.
    pub t2_equals_v: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub n: u64,
    pub m: u64,
    pub sizes: RangeInclusive<usize>,
    pub candidates: u128,
    pub anchored: u64,
    pub classes: u64,
    pub t2_equals_v: u64,
    pub complete: bool,
}

/// Sweeps every folded connection set with a size in range that passes the
/// anchor filter, in size then lexicographic order, and hands each Type-2
/// class with more than one member to `emit` once.
pub fn census_with<F>(cfg: &CensusConfig, mut emit: F) -> Result<CensusSummary>
where
    F: FnMut(&CensusClass),
{
    let rot = Rotation::new(cfg.n, cfg.m)?;
    let mut summary = CensusSummary {
        n: cfg.n,
        m: cfg.m,
        sizes: cfg.sizes.clone(),
        candidates: cfg.candidate_count(),
        anchored: 0,
        classes: 0,
        t2_equals_v: 0,
        complete: false,
    };
    if summary.candidates > cfg.max_candidates {
        return Err(Error::BudgetExceeded { needed: summary.candidates, cap: cfg.max_candidates });
    }
    let half = cfg.n / 2;
    let mut seen: HashSet<JumpSet> = HashSet::new();
    for k in cfg.sizes.clone().filter(|&k| k >= 1 && k as u64 <= half) {
        let candidates = (1..=half).combinations(k).filter(|c| cfg.accepts(c));
        for chunk in &candidates.chunks(CENSUS_CHUNK) {
            let chunk: Vec<Vec<u64>> = chunk.collect();
            summary.anchored += chunk.len() as u64;
            let sets: Vec<Option<Type2Set>> = chunk
                .par_iter()
                .map(|c| {
                    let js = JumpSet::from_residues(cfg.n, c.iter().copied())
                        .expect("combinations of [1, n/2] are valid jumps");
                    let g = CirculantGraph::new(js);
                    let t2 = type2_from_rows(&g, cfg.m, &sweep(&rot, &g));
                    (!t2.is_singleton()).then_some(t2)
                })
                .collect();
            for t2 in sets.into_iter().flatten() {
                if seen.contains(t2.base.jumps()) {
                    continue;
                }
                seen.extend(t2.members.iter().map(|g| g.jumps().clone()));
                let class = CensusClass {
                    representative: t2.members[0].clone(),
                    members: t2.members,
                    t2_indices: t2.t2_indices,
                    graph_period: t2.graph_period,
                    t2_equals_v: t2.equals_v,
                };
                summary.classes += 1;
                summary.t2_equals_v += class.t2_equals_v as u64;
                emit(&class);
            }
        }
    }
    summary.complete = true;
    Ok(summary)
}

/// [`census_with`] collecting the classes.
pub fn census(cfg: &CensusConfig) -> Result<(Vec<CensusClass>, CensusSummary)> {
    let mut classes = Vec::new();
    let summary = census_with(cfg, |c| classes.push(c.clone()))?;
    Ok((classes, summary))
}

/// Validity of `(n, m)` for a graph, as a plain check.
pub fn admits(n: u64, m: u64, g: &CirculantGraph) -> bool {
    g.n() == n && theta_params(n, m, g.jumps()).is_valid()
}
