//! Parametric families of Type-2 isomorphic circulant graphs and a verifier
//! that checks every declared rotation relation and the resulting Type-2 group.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_set, CirculantGraph, JumpSet};
use crate::groups::{t2_group, t2_set};
use crate::oracle::gcd_signature;
use crate::theta::{theta_image, ThetaParams};
use crate::type1::type1_witnesses;

/// What the generator promises about an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Type2,
    Type1OrType2,
}

/// `θ_{n,m,t}(C_n(sets[from])) = C_n(sets[to])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub t: u64,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    pub kind: String,
    pub order: u64,
    pub m: u64,
    pub sets: Vec<JumpSet>,
    pub relations: Vec<Relation>,
    pub claim: Claim,
}

impl FamilyInstance {
    pub fn graphs(&self) -> Vec<CirculantGraph> {
        self.sets.iter().cloned().map(CirculantGraph::new).collect()
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFamilyParams(msg.into())
}

fn folded(order: u64, values: impl IntoIterator<Item = u64>) -> Result<JumpSet> {
    JumpSet::from_residues(order, values.into_iter().map(|v| v % order))
        .map_err(|e| bad(format!("jump set for order {order}: {e}")))
}

fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| acc.gcd(&v))
}

fn check_multipliers(p_list: &[u64], require_coprime: bool) -> Result<()> {
    if p_list.is_empty() {
        return Err(bad("p_list must hold at least one value (k >= 3)"));
    }
    if p_list.contains(&0) {
        return Err(bad("p_list values must be positive"));
    }
    if require_coprime && gcd_all(p_list) != 1 {
        return Err(bad(format!("gcd of p_list is {}, expected 1", gcd_all(p_list))));
    }
    Ok(())
}

/// `R_i → R_{i+j mod p}` at `t = j·step` for `j = 1 .. p−1`.
fn cyclic_relations(
    p: usize,
    step: u64,
    shifts: impl Iterator<Item = usize> + Clone,
) -> Vec<Relation> {
    let mut out = Vec::new();
    for j in shifts {
        for i in 0..p {
            out.push(Relation { t: j as u64 * step, from: i, to: (i + j) % p });
        }
    }
    out
}

/// The sets `{d_i, k·n·p² ± d_i (k = 1 .. p−1)} ∪ extra` for each `d_i`.
fn prime_sets(order: u64, np2: u64, p: u64, ds: &[u64], extra: &[u64]) -> Result<Vec<JumpSet>> {
    ds.iter()
        .map(|&d| {
            let mut values = vec![d, order - d];
            for k in 1..p {
                values.push((k * np2 + order - d) % order);
                values.push(k * np2 + d);
            }
            values.extend_from_slice(extra);
            folded(order, values)
        })
        .collect()
}

/// `R = {2, 2s−1, 4n−(2s−1)}` and `S = {2, 2n−(2s−1), 2n+2s−1}` of order `8n`.
pub fn family_m2(n: u64, s: u64) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(bad(format!("n = {n} must be at least 2")));
    }
    if s < 1 || 2 * s - 1 > 2 * n - 1 {
        return Err(bad(format!("s = {s} must satisfy 1 <= 2s-1 <= 2n-1")));
    }
    let q = 2 * s - 1;
    if q == n {
        return Err(Error::DegenerateFamily(format!(
            "n = 2s-1 = {n}: the two circulant graphs are the same"
        )));
    }
    let order = 8 * n;
    let r = folded(order, [2, q, 4 * n - q])?;
    let t = folded(order, [2, 2 * n - q, 2 * n + q])?;
    Ok(FamilyInstance {
        kind: "m2".into(),
        order,
        m: 2,
        sets: vec![r, t],
        relations: m2_relations(n, false),
        claim: Claim::Type2,
    })
}

fn m2_relations(n: u64, with_identity: bool) -> Vec<Relation> {
    let mut out = vec![
        Relation { t: n, from: 0, to: 1 },
        Relation { t: 3 * n, from: 0, to: 1 },
        Relation { t: n, from: 1, to: 0 },
        Relation { t: 3 * n, from: 1, to: 0 },
    ];
    if with_identity {
        out.push(Relation { t: 2 * n, from: 0, to: 0 });
        out.push(Relation { t: 2 * n, from: 1, to: 1 });
    }
    out
}

/// `R = {2s−1, 4n−(2s−1), 2p_1, …}` and `S = {2n−(2s−1), 2n+2s−1, 2p_1, …}`.
/// Requires `gcd(p_list) = 1` and a `y` with `2y` in both sets and
/// `gcd(4n, y) = 1`.
pub fn family_m2_general(n: u64, s: u64, p_list: &[u64], y: u64) -> Result<FamilyInstance> {
    if n < 2 {
        return Err(bad(format!("n = {n} must be at least 2")));
    }
    if s < 1 || 2 * s - 1 > 2 * n - 1 {
        return Err(bad(format!("s = {s} must satisfy 1 <= 2s-1 <= 2n-1")));
    }
    check_multipliers(p_list, true)?;
    let q = 2 * s - 1;
    if q == n {
        return Err(Error::DegenerateFamily(format!(
            "n = 2s-1 = {n}: the two circulant graphs are the same"
        )));
    }
    let order = 8 * n;
    let evens: Vec<u64> = p_list.iter().map(|p| 2 * p).collect();
    let r = folded(order, [q, 4 * n - q].into_iter().chain(evens.iter().copied()))?;
    let t = folded(order, [2 * n - q, 2 * n + q].into_iter().chain(evens.iter().copied()))?;
    let two_y = (2 * y) % order;
    let in_both = two_y != 0 && {
        let f = crate::graph::fold(order, two_y);
        r.contains(f) && t.contains(f)
    };
    if !in_both {
        return Err(bad(format!("2y = {} is not a jump of both R and S", 2 * y)));
    }
    if (4 * n).gcd(&y) != 1 {
        return Err(bad(format!("gcd(4n, y) = {} must be 1", (4 * n).gcd(&y))));
    }
    Ok(FamilyInstance {
        kind: "m2-general".into(),
        order,
        m: 2,
        sets: vec![r, t],
        relations: m2_relations(n, true),
        claim: Claim::Type1OrType2,
    })
}

fn unit_prime_family(
    kind: &str,
    p: u64,
    n: u64,
    extra: &[u64],
    all_shifts: bool,
    claim: Claim,
) -> Result<FamilyInstance> {
    if n < 1 {
        return Err(bad("n must be positive"));
    }
    let order = n * p * p * p;
    let ds: Vec<u64> = (0..p).map(|i| p * n * i + 1).collect();
    let sets = prime_sets(order, n * p * p, p, &ds, extra)?;
    let relations = if all_shifts {
        cyclic_relations(p as usize, n, 1..p as usize)
    } else {
        cyclic_relations(p as usize, n, 1..2)
    };
    Ok(FamilyInstance { kind: kind.into(), order, m: p, sets, relations, claim })
}

/// `R = {1, 3, 9n−1, 9n+1}`, `S = {3, 3n+1, 6n−1, 12n+1}`,
/// `T = {3, 3n−1, 6n+1, 12n−1}` of order `27n`.
pub fn family_m3(n: u64) -> Result<FamilyInstance> {
    unit_prime_family("m3", 3, n, &[3], false, Claim::Type2)
}

/// The `m = 3` family with anchors `{3p_i}` in place of `3`.
pub fn family_m3_general(n: u64, p_list: &[u64]) -> Result<FamilyInstance> {
    check_multipliers(p_list, false)?;
    let extra: Vec<u64> = p_list.iter().map(|p| 3 * p).collect();
    unit_prime_family("m3-general", 3, n, &extra, false, Claim::Type1OrType2)
}

/// `R_i = {5, d_i, 25n ± d_i, 50n ± d_i}` with `d_i = 5n(i−1)+1`, order `125n`.
pub fn family_m5(n: u64) -> Result<FamilyInstance> {
    unit_prime_family("m5", 5, n, &[5], true, Claim::Type2)
}

pub fn family_m5_general(n: u64, p_list: &[u64]) -> Result<FamilyInstance> {
    check_multipliers(p_list, false)?;
    let extra: Vec<u64> = p_list.iter().map(|p| 5 * p).collect();
    unit_prime_family("m5-general", 5, n, &extra, true, Claim::Type1OrType2)
}

/// `R_i = {7, d_i, 49n ± d_i, 98n ± d_i, 147n ± d_i}` with `d_i = 7n(i−1)+1`,
/// order `343n`.
pub fn family_m7(n: u64) -> Result<FamilyInstance> {
    unit_prime_family("m7", 7, n, &[7], true, Claim::Type2)
}

pub fn family_m7_general(n: u64, p_list: &[u64]) -> Result<FamilyInstance> {
    check_multipliers(p_list, false)?;
    let extra: Vec<u64> = p_list.iter().map(|p| 7 * p).collect();
    unit_prime_family("m7-general", 7, n, &extra, true, Claim::Type1OrType2)
}

/// Parameters of the odd-prime family of order `np³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneralPParams {
    pub p: u64,
    pub n: u64,
    pub x: u64,
    pub y: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl GeneralPParams {
    pub fn new(p: u64, n: u64, x: u64, y: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(bad(format!("p = {p} must be an odd prime")));
        }
        if n < 1 {
            return Err(bad("n must be positive"));
        }
        if x < 1 || x > p - 1 {
            return Err(bad(format!("x = {x} must lie in [1, {}]", p - 1)));
        }
        if y > n * p - 1 {
            return Err(bad(format!("y = {y} must lie in [0, {}]", n * p - 1)));
        }
        let base = x + y * p;
        if base > n * p * p - 1 {
            return Err(bad(format!("x + yp = {base} must lie in [1, {}]", n * p * p - 1)));
        }
        Ok(GeneralPParams { p, n, x, y })
    }

    pub fn order(&self) -> u64 {
        self.n * self.p.pow(3)
    }

    /// `d_i = (i−1)·x·p·n + x + y·p` for `i = 1 .. p`.
    pub fn d(&self, i: u64) -> u64 {
        (i - 1) * self.x * self.p * self.n + self.x + self.y * self.p
    }
}

/// `R_i = {p, d_i, np² ± d_i, …, (p−1)np² ± d_i, np³ − d_i, np³ − p}`, folded.
pub fn family_general_p(params: GeneralPParams) -> Result<FamilyInstance> {
    let GeneralPParams { p, n, .. } = GeneralPParams::new(params.p, params.n, params.x, params.y)?;
    let order = params.order();
    let ds: Vec<u64> = (1..=p).map(|i| params.d(i)).collect();
    let sets = prime_sets(order, n * p * p, p, &ds, &[p, order - p])?;
    Ok(FamilyInstance {
        kind: "general-p".into(),
        order,
        m: p,
        sets,
        relations: cyclic_relations(p as usize, n, 1..p as usize),
        claim: Claim::Type2,
    })
}

/// How an instance actually relates its sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// No two distinct sets are related by a unit multiplier.
    Type2,
    /// Every pair of distinct sets is related by a unit multiplier.
    Type1,
    /// Some pairs are multiplier-related and some are not.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub t: u64,
    pub from: usize,
    pub to: usize,
    pub image: Option<JumpSet>,
    pub holds: bool,
}

/// A pair of distinct sets related by unit multipliers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Type1Pair {
    pub i: usize,
    pub j: usize,
    pub witnesses: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub kind: String,
    pub order: u64,
    pub m: u64,
    pub claim: Claim,
    pub relations: Vec<RelationCheck>,
    pub signatures_equal: bool,
    pub type1_pairs: Vec<Type1Pair>,
    pub t2_members: Vec<JumpSet>,
    pub t2_matches_sets: bool,
    pub group_order: Option<usize>,
    pub group_generator: Option<u64>,
    pub resolution: Resolution,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check and records failures without stopping.
pub fn family_check(f: &FamilyInstance) -> Result<FamilyReport> {
    let graphs = f.graphs();
    let mut failures = Vec::new();

    let relations: Vec<RelationCheck> = f
        .relations
        .par_iter()
        .map(|rel| -> Result<RelationCheck> {
            let p = ThetaParams::new(f.order, f.m, rel.t % (f.order / f.m))?;
            let h = theta_image(&p, &graphs[rel.from])?;
            let image = crate::theta::detect_circulant(&h);
            let holds = h == edge_set(&graphs[rel.to]);
            Ok(RelationCheck { t: rel.t, from: rel.from, to: rel.to, image, holds })
        })
        .collect::<Result<_>>()?;
    for r in relations.iter().filter(|r| !r.holds) {
        failures.push(format!(
            "relation t = {}, {} -> {} fails: image is {}",
            r.t,
            r.from,
            r.to,
            r.image.as_ref().map_or("not circulant".to_string(), |s| s.to_string())
        ));
    }

    let signature = gcd_signature(&graphs[0]);
    let signatures_equal = graphs.iter().all(|g| gcd_signature(g) == signature);
    if !signatures_equal {
        failures.push("sets do not share one gcd signature".into());
    }

    let pairs: Vec<(usize, usize)> =
        (0..graphs.len()).flat_map(|i| (i + 1..graphs.len()).map(move |j| (i, j))).collect();
    let type1_pairs: Vec<Type1Pair> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let w = type1_witnesses(&graphs[i], &graphs[j]).expect("equal orders");
            (!w.is_empty()).then_some(Type1Pair { i, j, witnesses: w })
        })
        .collect();

    let distinct: BTreeSet<&JumpSet> = f.sets.iter().collect();
    if distinct.len() != f.sets.len() {
        failures.push("family sets are not pairwise distinct".into());
    }

    let t2 = t2_set(f.order, f.m, &graphs[0])?;
    let t2_members: Vec<JumpSet> = t2.members.iter().map(|g| g.jumps().clone()).collect();
    let expected: BTreeSet<JumpSet> = f.sets.iter().cloned().collect();
    let t2_matches_sets = t2_members.iter().cloned().collect::<BTreeSet<_>>() == expected;
    let group = t2_group(&t2);
    let (group_order, group_generator) = match &group {
        Ok(g) => (Some(g.order), Some(g.generator)),
        Err(_) => (None, None),
    };

    let resolution = if type1_pairs.is_empty() {
        Resolution::Type2
    } else if type1_pairs.len() == pairs.len() {
        Resolution::Type1
    } else {
        Resolution::Mixed
    };

    if f.claim == Claim::Type2 {
        for p in &type1_pairs {
            failures.push(format!(
                "sets {} and {} are related by multipliers {:?}",
                p.i, p.j, p.witnesses
            ));
        }
        if !t2_matches_sets {
            failures.push(format!(
                "Type-2 set of the first member has {} members, family has {} sets",
                t2_members.len(),
                f.sets.len()
            ));
        }
        match &group {
            Ok(g) if g.order == f.sets.len() => {}
            Ok(g) => failures.push(format!(
                "Type-2 group has order {}, expected {}",
                g.order,
                f.sets.len()
            )),
            Err(e) => failures.push(format!("Type-2 group: {e}")),
        }
    } else if let Err(e) = &group {
        failures.push(format!("Type-2 group: {e}"));
    }

    Ok(FamilyReport {
        kind: f.kind.clone(),
        order: f.order,
        m: f.m,
        claim: f.claim,
        relations,
        signatures_equal,
        type1_pairs,
        t2_members,
        t2_matches_sets,
        group_order,
        group_generator,
        resolution,
        failures,
    })
}

/// [`family_check`], failing with the first recorded failure.
pub fn family_verify(f: &FamilyInstance) -> Result<FamilyReport> {
    let report = family_check(f)?;
    match report.failures.first() {
        None => Ok(report),
        Some(first) => Err(Error::VerificationFailure(first.clone())),
    }
}
