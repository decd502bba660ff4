//! Independent certificates for circulant isomorphism: the gcd signature, the
//! circulant spectrum, an exact backtracking search for small orders and a
//! direct check of the rotation permutation. Nothing here calls into the
//! rotation or group code.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_set, fold, symmetric_closure, CirculantGraph};

/// Largest order the brute-force search accepts by default.
pub const DEFAULT_ISO_CAP: u64 = 24;

/// Default number of search nodes before giving up.
pub const DEFAULT_ISO_BUDGET: u64 = 20_000_000;

/// Decimal digits kept when comparing eigenvalues.
pub const SPECTRAL_DIGITS: i32 = 9;

/// The multiset `{gcd(n, r) : r ∈ R}` as `(gcd, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GcdSignature {
    pub n: u64,
    pub entries: Vec<(u64, usize)>,
}

impl GcdSignature {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|&(_, k)| k).sum()
    }
}

pub fn gcd_signature(g: &CirculantGraph) -> GcdSignature {
    let n = g.n();
    let mut gcds: Vec<u64> = g.jumps().iter().map(|r| n.gcd(&r)).collect();
    gcds.sort_unstable();
    let mut entries: Vec<(u64, usize)> = Vec::new();
    for d in gcds {
        match entries.last_mut() {
            Some((last, k)) if *last == d => *k += 1,
            _ => entries.push((d, 1)),
        }
    }
    GcdSignature { n, entries }
}

/// Equal gcd signatures. Necessary for isomorphism, never sufficient.
pub fn gcd_signature_check(g: &CirculantGraph, h: &CirculantGraph) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::OrderMismatch { left: g.n(), right: h.n() });
    }
    Ok(gcd_signature(g) == gcd_signature(h))
}

/// The eigenvalues `λ_j = Σ cos(2π j s / n)` over the symmetric closure,
/// rounded and sorted ascending.
pub fn spectral_fingerprint(g: &CirculantGraph) -> Vec<f64> {
    let n = g.n();
    let closure = symmetric_closure(g);
    let scale = 10f64.powi(SPECTRAL_DIGITS);
    let mut values: Vec<f64> = (0..n)
        .map(|j| {
            let sum: f64 = closure
                .values()
                .iter()
                .map(|&s| (2.0 * PI * ((j * s) % n) as f64 / n as f64).cos())
                .sum();
            let rounded = (sum * scale).round() / scale;
            if rounded == 0.0 {
                0.0
            } else {
                rounded
            }
        })
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn spectra_match(g: &CirculantGraph, h: &CirculantGraph) -> bool {
    let tol = 10f64.powi(-SPECTRAL_DIGITS);
    let (a, b) = (spectral_fingerprint(g), spectral_fingerprint(h));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

/// A vertex permutation of `Z_n` offered as an isomorphism certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub permutation: Vec<u64>,
    pub verified: bool,
}

/// Whether `perm` is a bijection of `Z_n` carrying every edge of `g` onto an
/// edge of `h`. With equal edge counts this is an exact edge-set match.
pub fn permutation_maps(perm: &[u64], g: &CirculantGraph, h: &CirculantGraph) -> bool {
    let n = g.n();
    if h.n() != n || perm.len() as u64 != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut hit = vec![false; n as usize];
    for &v in perm {
        if v >= n || std::mem::replace(&mut hit[v as usize], true) {
            return false;
        }
    }
    (0..n).all(|x| {
        g.jumps().iter().all(|s| {
            let (a, b) = (perm[x as usize], perm[((x + s) % n) as usize]);
            h.jumps().contains(fold(n, (b + n - a) % n))
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IsoConfig {
    pub cap: u64,
    pub budget: u64,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { cap: DEFAULT_ISO_CAP, budget: DEFAULT_ISO_BUDGET }
    }
}

struct Search<'a> {
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
    adj_g: &'a [Vec<bool>],
    adj_h: &'a [Vec<bool>],
    nbr_h: &'a [Vec<usize>],
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn consistent(&self, depth: usize, w: usize) -> bool {
        let v = self.order[depth];
        self.order[..depth].iter().all(|&u| self.adj_g[v][u] == self.adj_h[w][self.image[u]])
    }

    /// `Ok(true)` when a full assignment is found, `Err` when out of budget.
    fn extend(&mut self, depth: usize) -> std::result::Result<bool, ()> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.anchor[depth] {
            Some(u) => self.nbr_h[self.image[u]].clone(),
            None => (0..self.used.len()).collect(),
        };
        for w in candidates {
            if self.used[w] || !self.consistent(depth, w) {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.used[w] = false;
        }
        Ok(false)
    }
}

fn adjacency(g: &CirculantGraph) -> (Vec<Vec<bool>>, Vec<Vec<usize>>) {
    let n = g.n() as usize;
    let mut adj = vec![vec![false; n]; n];
    for (x, y) in edge_set(g).edges() {
        adj[*x as usize][*y as usize] = true;
        adj[*y as usize][*x as usize] = true;
    }
    let nbr = adj
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
        .collect();
    (adj, nbr)
}

/// Exact isomorphism test by backtracking. Vertex 0 is pinned to vertex 0,
/// which loses nothing because circulant graphs are vertex-transitive.
/// Returns a verified witness, `None` as a definitive refutation, or
/// [`Error::BudgetExceeded`] when the search is inconclusive.
pub fn brute_force_isomorphic(
    g: &CirculantGraph,
    h: &CirculantGraph,
    cfg: &IsoConfig,
) -> Result<Option<IsoWitness>> {
    if g.n() != h.n() {
        return Err(Error::OrderMismatch { left: g.n(), right: h.n() });
    }
    let n = g.n();
    if n > cfg.cap {
        return Err(Error::Inapplicable(format!("order {n} exceeds the search cap {}", cfg.cap)));
    }
    if g.edge_count() != h.edge_count() || g.degree() != h.degree() {
        return Ok(None);
    }
    let (adj_g, nbr_g) = adjacency(g);
    let (adj_h, nbr_h) = adjacency(h);

    // Breadth-first order, restarted per component, so most vertices have
    // an already placed neighbour to draw candidates from.
    let size = n as usize;
    let mut order = Vec::with_capacity(size);
    let mut anchor = Vec::with_capacity(size);
    let mut placed = vec![false; size];
    for root in 0..size {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        order.push(root);
        anchor.push(None);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            for &w in &nbr_g[u] {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                    anchor.push(Some(u));
                }
            }
            head += 1;
        }
    }

    let mut search = Search {
        order,
        anchor,
        adj_g: &adj_g,
        adj_h: &adj_h,
        nbr_h: &nbr_h,
        image: vec![usize::MAX; size],
        used: vec![false; size],
        nodes: 0,
        budget: cfg.budget,
    };
    search.image[0] = 0;
    search.used[0] = true;
    match search.extend(1) {
        Err(()) => Err(Error::BudgetExceeded {
            needed: u128::from(search.nodes),
            cap: u128::from(cfg.budget),
        }),
        Ok(false) => Ok(None),
        Ok(true) => {
            let permutation: Vec<u64> = search.image.iter().map(|&w| w as u64).collect();
            let verified = permutation_maps(&permutation, g, h);
            if !verified {
                return Err(Error::VerificationFailure(format!(
                    "search produced a non-isomorphism from {g} to {h}"
                )));
            }
            Ok(Some(IsoWitness { permutation, verified }))
        }
    }
}

/// Builds `x ↦ x + (x mod m)·t·m (mod n)` from scratch and checks that it
/// carries `C_n(R)` exactly onto `C_n(S)`. Works at any order.
pub fn verify_theta_witness(
    n: u64,
    m: u64,
    t: u64,
    g: &CirculantGraph,
    h: &CirculantGraph,
) -> Result<IsoWitness> {
    if g.n() != n || h.n() != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: if g.n() != n { g.n() } else { h.n() },
        });
    }
    if m == 0 {
        return Err(Error::VerificationFailure("modulus 0".into()));
    }
    let shift = (t % n) * (m % n) % n;
    let permutation: Vec<u64> = (0..n).map(|x| (x + (x % m) * shift) % n).collect();
    if !permutation_maps(&permutation, g, h) {
        return Err(Error::VerificationFailure(format!(
            "x -> x + (x mod {m})*{t}*{m} mod {n} does not carry {g} onto {h}"
        )));
    }
    Ok(IsoWitness { permutation, verified: true })
}
