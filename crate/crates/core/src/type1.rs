//! Multiplier (Type-1, Ádám) isomorphisms: the unit group of `Z_n`, the map
//! `R ↦ xR`, the Type-1 set of a circulant graph and its group under
//! `C_n(xR) ∘′ C_n(yR) = C_n((xy)R)`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, JumpSet};

/// Tables with more members than this are spot-checked for associativity
/// instead of checked on every triple.
const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

/// `φ_n = { x ∈ [1, n−1] : gcd(n, x) = 1 }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitGroup {
    n: u64,
    units: Vec<u64>,
}

impl UnitGroup {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.units.binary_search(&(x % self.n)).is_ok()
    }

    pub fn index_of(&self, x: u64) -> Option<usize> {
        self.units.binary_search(&(x % self.n)).ok()
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        (x * y) % self.n
    }

    pub fn inverse(&self, x: u64) -> Option<u64> {
        self.units.iter().copied().find(|&y| self.mul(x, y) == 1 % self.n)
    }
}

pub fn units(n: u64) -> Result<UnitGroup> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, min: 2 });
    }
    let units = (1..n).filter(|x| x.gcd(&n) == 1).collect();
    Ok(UnitGroup { n, units })
}

/// `φ_{n,x}(R)`: the reflexive reduction of `{x·s mod n : s ∈ R}`.
pub fn phi_apply(n: u64, x: u64, r: &JumpSet) -> Result<JumpSet> {
    if r.n() != n {
        return Err(Error::OrderMismatch { left: n, right: r.n() });
    }
    if x.gcd(&n) != 1 {
        return Err(Error::NotAUnit { n, x });
    }
    JumpSet::from_residues(n, r.iter().map(|s| (x % n) * s % n))
}

/// Multiplies without the unit check; callers iterate over `φ_n` already.
fn multiply(x: u64, r: &JumpSet) -> JumpSet {
    let n = r.n();
    JumpSet::from_residues(n, r.iter().map(|s| x * s % n))
        .expect("a unit multiple of a valid jump set is valid")
}

/// `T1_n(C_n(R))` together with the multipliers that realize each member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Type1Set {
    pub base: CirculantGraph,
    pub members: Vec<CirculantGraph>,
    /// `witnesses[i]` lists every `x ∈ φ_n` with `xR = members[i]`.
    pub witnesses: Vec<Vec<u64>>,
}

impl Type1Set {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, g: &CirculantGraph) -> Option<usize> {
        self.members.binary_search(g).ok()
    }

    pub fn contains(&self, g: &CirculantGraph) -> bool {
        self.position(g).is_some()
    }

    /// Smallest multiplier of each member.
    pub fn representatives(&self) -> Vec<u64> {
        self.witnesses.iter().map(|w| w[0]).collect()
    }

    /// Equality of the underlying graph sets, ignoring which graph is the base.
    pub fn same_carrier(&self, other: &Type1Set) -> bool {
        self.members == other.members
    }
}

pub fn type1_set(g: &CirculantGraph) -> Type1Set {
    let n = g.n();
    let phi = units(n).expect("circulant order is at least 3");
    let mut pairs: Vec<(JumpSet, u64)> =
        phi.units().iter().map(|&x| (multiply(x, g.jumps()), x)).collect();
    pairs.sort();

    let mut members: Vec<CirculantGraph> = Vec::new();
    let mut witnesses: Vec<Vec<u64>> = Vec::new();
    for (set, x) in pairs {
        match members.last() {
            Some(last) if last.jumps() == &set => witnesses.last_mut().unwrap().push(x),
            _ => {
                members.push(CirculantGraph::new(set));
                witnesses.push(vec![x]);
            }
        }
    }
    Type1Set { base: g.clone(), members, witnesses }
}

/// Every `x ∈ φ_n` with `xR = S`; empty when the graphs are not Type-1 related.
pub fn type1_witnesses(g: &CirculantGraph, h: &CirculantGraph) -> Result<Vec<u64>> {
    if g.n() != h.n() {
        return Err(Error::OrderMismatch { left: g.n(), right: h.n() });
    }
    if g.jumps().len() != h.jumps().len() {
        return Ok(Vec::new());
    }
    let phi = units(g.n())?;
    Ok(phi.units().iter().copied().filter(|&x| multiply(x, g.jumps()) == *h.jumps()).collect())
}

/// `(T1_n(C_n(R)), ∘′)` indexed by member position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Type1Group {
    pub carrier: Type1Set,
    /// `{ x ∈ φ_n : xR = R }`.
    pub stabilizer: Vec<u64>,
    /// Canonical (smallest) coset representative for each member.
    pub representatives: Vec<u64>,
    /// `table[i][j]` is the member index of `members[i] ∘′ members[j]`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl Type1Group {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }
}

/// Builds the Type-1 group and checks well-definedness (every pair of
/// witnesses multiplies into the same member) and the group axioms.
pub fn type1_group(g: &CirculantGraph) -> Result<Type1Group> {
    let carrier = type1_set(g);
    let n = g.n();
    let k = carrier.len();
    let identity = carrier
        .position(g)
        .ok_or_else(|| Error::GroupAxiom("base graph missing from its Type-1 set".into()))?;
    let stabilizer = carrier.witnesses[identity].clone();

    let mut owner = std::collections::HashMap::new();
    for (i, ws) in carrier.witnesses.iter().enumerate() {
        for &x in ws {
            owner.insert(x, i);
        }
    }

    let reps = carrier.representatives();
    let mut table = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            let target = owner[&(reps[i] * reps[j] % n)];
            for &x in &carrier.witnesses[i] {
                for &y in &carrier.witnesses[j] {
                    if owner[&(x * y % n)] != target {
                        return Err(Error::GroupAxiom(format!(
                            "product of members {i} and {j} depends on the multiplier choice"
                        )));
                    }
                }
            }
            table[i][j] = target;
        }
    }

    check_group_table(&table, identity)?;
    if k * stabilizer.len() != carrier.witnesses.iter().map(Vec::len).sum::<usize>() {
        return Err(Error::GroupAxiom("orbit-stabilizer count mismatch".into()));
    }

    Ok(Type1Group { carrier, stabilizer, representatives: reps, table, identity })
}

/// Closure, identity, inverses, commutativity and associativity of a
/// finite operation table.
pub(crate) fn check_group_table(table: &[Vec<usize>], identity: usize) -> Result<()> {
    let k = table.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != k || row.iter().any(|&v| v >= k) {
            return Err(Error::GroupAxiom(format!("row {i} is not closed")));
        }
        if row[identity] != i || table[identity][i] != i {
            return Err(Error::GroupAxiom(format!("identity fails at {i}")));
        }
        if !row.contains(&identity) {
            return Err(Error::GroupAxiom(format!("{i} has no inverse")));
        }
        for j in 0..k {
            if row[j] != table[j][i] {
                return Err(Error::GroupAxiom(format!("{i} and {j} do not commute")));
            }
        }
    }
    let step = if k <= FULL_ASSOCIATIVITY_LIMIT { 1 } else { k / FULL_ASSOCIATIVITY_LIMIT + 1 };
    for a in (0..k).step_by(step) {
        for b in 0..k {
            for c in (0..k).step_by(step) {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::GroupAxiom(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
    }
    Ok(())
}

/// `C_n(S) ∈ T1_n(C_n(R))`. Debug builds also check that this agrees with
/// equality of the two Type-1 sets and with the reverse membership.
pub fn type1_set_equality(g: &CirculantGraph, h: &CirculantGraph) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::OrderMismatch { left: g.n(), right: h.n() });
    }
    let tg = type1_set(g);
    let forward = tg.contains(h);
    if cfg!(debug_assertions) {
        let th = type1_set(h);
        assert_eq!(forward, tg.same_carrier(&th), "Type-1 set equality law for {g} / {h}");
        assert_eq!(forward, th.contains(g), "Type-1 membership symmetry for {g} / {h}");
    }
    Ok(forward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_circulant;

    fn graph(n: u64, raw: &[i64]) -> CirculantGraph {
        make_circulant(n, raw).unwrap()
    }

    fn jumps(g: &CirculantGraph) -> Vec<u64> {
        g.jumps().jumps().to_vec()
    }

    #[test]
    fn unit_groups() {
        assert_eq!(units(16).unwrap().units(), &[1, 3, 5, 7, 9, 11, 13, 15]);
        let u54 = units(54).unwrap();
        assert_eq!(
            u54.units(),
            &[1, 5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47, 49, 53]
        );
        assert_eq!(units(7).unwrap().units(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(u54.inverse(5), Some(11));
        assert!(units(1).is_err());
    }

    #[test]
    fn multiplier_images() {
        let r = JumpSet::from_residues(54, [1, 17, 18, 19]).unwrap();
        assert_eq!(phi_apply(54, 5, &r).unwrap().jumps(), &[5, 13, 18, 23]);
        assert_eq!(phi_apply(54, 1, &r).unwrap(), r);
        let r = JumpSet::from_residues(16, [1, 2, 7]).unwrap();
        assert_eq!(phi_apply(16, 3, &r).unwrap().jumps(), &[3, 5, 6]);
        assert_eq!(phi_apply(16, 2, &r), Err(Error::NotAUnit { n: 16, x: 2 }));
    }

    #[test]
    fn type1_sets_of_known_graphs() {
        let t = type1_set(&graph(16, &[1, 2, 7]));
        let got: Vec<_> = t.members.iter().map(jumps).collect();
        assert_eq!(got, vec![vec![1, 2, 7], vec![3, 5, 6]]);

        let t = type1_set(&graph(54, &[2, 3, 16, 20]));
        assert_eq!(t.len(), 3);
        assert!(t.contains(&graph(54, &[8, 10, 15, 26])));
        assert!(t.contains(&graph(54, &[4, 14, 21, 22])));

        let t = type1_set(&graph(81, &[3, 7, 20, 34]));
        assert_eq!(t.len(), 9);
        let mut reps = t.representatives();
        reps.sort_unstable();
        assert_eq!(reps, vec![1, 2, 4, 5, 7, 8, 10, 11, 13]);
    }

    #[test]
    fn witnesses_between_graphs() {
        let g = graph(16, &[1, 2, 7]);
        let w = type1_witnesses(&g, &graph(16, &[3, 5, 6])).unwrap();
        assert!(w.contains(&3));
        assert!(type1_witnesses(&g, &graph(16, &[2, 3, 5])).unwrap().is_empty());
        assert!(type1_witnesses(&g, &g).unwrap().contains(&1));
        assert!(matches!(
            type1_witnesses(&g, &graph(18, &[1, 2, 7])),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn type1_groups() {
        assert_eq!(type1_group(&graph(16, &[1, 2, 7])).unwrap().order(), 2);
        assert_eq!(type1_group(&graph(81, &[3, 7, 20, 34])).unwrap().order(), 9);
        let complete: Vec<i64> = (1..=10).collect();
        let grp = type1_group(&graph(21, &complete)).unwrap();
        assert_eq!(grp.order(), 1);
        assert_eq!(grp.stabilizer.len(), 12);
    }

    #[test]
    fn set_equality_law() {
        assert!(
            type1_set_equality(&graph(54, &[1, 17, 18, 19]), &graph(54, &[5, 13, 18, 23])).unwrap()
        );
        assert!(!type1_set_equality(&graph(16, &[1, 2, 7]), &graph(16, &[2, 3, 5])).unwrap());
        let g = graph(27, &[1, 3, 8, 10]);
        assert!(type1_set_equality(&g, &g).unwrap());
    }

    #[test]
    fn composition_of_multipliers_exhaustive() {
        for n in 3..=30u64 {
            let phi = units(n).unwrap();
            let r = JumpSet::from_residues(n, [1, 2].into_iter().filter(|&v| v <= n / 2)).unwrap();
            for &x in phi.units() {
                let xr = phi_apply(n, x, &r).unwrap();
                assert_eq!(xr.len(), r.len());
                for &y in phi.units() {
                    assert_eq!(
                        phi_apply(n, x, &phi_apply(n, y, &r).unwrap()).unwrap(),
                        phi_apply(n, x * y % n, &r).unwrap()
                    );
                }
            }
        }
    }
}
