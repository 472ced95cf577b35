//! Polynomial reductions: Hamiltonicity of cubic graphs to semi-ordered
//! tours (via the triangle expansion), semi-ordered tours to star
//! vertex-minors of circle graphs, and star vertex-minors to general
//! vertex-minors.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::dow::alternance_graph;
use crate::error::{Error, Result};
use crate::euler::{find_euler_tour, tour_from_word, EulerianTour};
use crate::families::fresh_star;
use crate::graph::{MultiGraph, SimpleGraph, VertexId};
use crate::soet::SoetCertificate;

/// A connected 3-regular simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicGraph(SimpleGraph);

impl CubicGraph {
    pub fn new(g: SimpleGraph) -> Result<Self> {
        if let Some(v) = g.vertices().iter().find(|v| g.degree(v).ok() != Some(3)) {
            return Err(Error::Precondition(format!(
                "vertex {v} has degree {} (a cubic graph needs 3)",
                g.degree(v)?
            )));
        }
        if g.is_empty() || !g.is_connected() {
            return Err(Error::Precondition("cubic graph must be non-empty and connected".into()));
        }
        Ok(CubicGraph(g))
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.0
    }

    pub fn into_graph(self) -> SimpleGraph {
        self.0
    }
}

/// A Hamiltonian cycle `x_0 x_1 … x_{n-1}` of a cubic graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamCycle(Vec<VertexId>);

impl HamCycle {
    pub fn new(r: &CubicGraph, order: Vec<VertexId>) -> Result<Self> {
        let g = r.graph();
        let n = g.len();
        let distinct: BTreeSet<&VertexId> = order.iter().collect();
        if order.len() != n || distinct.len() != n {
            return Err(Error::Precondition("cycle must visit every vertex exactly once".into()));
        }
        for i in 0..n {
            let (u, v) = (&order[i], &order[(i + 1) % n]);
            if !g.contains(u) {
                return Err(Error::UnknownVertex(u.to_string()));
            }
            if !g.has_edge(u, v) {
                return Err(Error::Precondition(format!("{u} and {v} are not adjacent")));
            }
        }
        Ok(HamCycle(order))
    }

    pub fn order(&self) -> &[VertexId] {
        &self.0
    }
}

/// The triangle expansion of a cubic graph: every vertex `v` with neighbours
/// `x < y < z` becomes the triangle `v^(x) v^(y) v^(z)`, and every edge `uv`
/// becomes two parallel edges between `u^(v)` and `v^(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Expansion {
    pub graph: Arc<MultiGraph>,
    /// `v^(x)` to `(v, x)`.
    pub owner: BTreeMap<VertexId, (VertexId, VertexId)>,
}

impl K3Expansion {
    /// The original vertex whose triangle contains `v`.
    pub fn owner_of(&self, v: &VertexId) -> Option<&VertexId> {
        self.owner.get(v).map(|(o, _)| o)
    }
}

/// Edge ids: the three triangle edges of each vertex in label order, then
/// the two copies of each original edge in sorted edge order.
pub fn k3_expand(r: &CubicGraph) -> K3Expansion {
    let g = r.graph();
    let mut owner = BTreeMap::new();
    let mut edges = Vec::new();
    for v in g.vertices() {
        let n = g.neighbors(v).expect("vertex of g");
        let d: Vec<VertexId> = n.iter().map(|x| VertexId::decorated(v, x)).collect();
        for (x, dv) in n.iter().zip(&d) {
            owner.insert(dv.clone(), (v.clone(), x.clone()));
        }
        edges.extend([(d[0].clone(), d[1].clone()), (d[0].clone(), d[2].clone()), (d[1].clone(), d[2].clone())]);
    }
    for (u, v) in g.edges() {
        let e = (VertexId::decorated(&u, &v), VertexId::decorated(&v, &u));
        edges.extend([e.clone(), e]);
    }
    let graph = MultiGraph::new(owner.keys().cloned(), edges).expect("decorated labels are vertices");
    K3Expansion {
        graph: Arc::new(graph),
        owner,
    }
}

/// The subset `{x_i^(x_{i-1}), x_i^(x_{i+1})}` of decorated vertices lying
/// on the cycle edges.
pub fn cycle_subset(cycle: &HamCycle) -> BTreeSet<VertexId> {
    let x = cycle.order();
    let k = x.len();
    (0..k)
        .flat_map(|i| {
            [
                VertexId::decorated(&x[i], &x[(i + k - 1) % k]),
                VertexId::decorated(&x[i], &x[(i + 1) % k]),
            ]
        })
        .collect()
}

/// Builds a tour of the triangle expansion that is semi-ordered on the
/// decorated vertices along a Hamiltonian cycle.
///
/// The tour word is `V W` where `V` walks the doubled cycle edges and `W`
/// walks each triangle `x_i^(x_{i-1}) x_i^(v_i) x_i^(x_{i+1})` (with `v_i`
/// the off-cycle neighbour), detouring across each chord `x_i v_i` the first
/// time one of its ends is reached. The result is checked before returning.
pub fn build_soet_from_ham(r: &CubicGraph, exp: &K3Expansion, cycle: &HamCycle) -> Result<SoetCertificate> {
    let g = r.graph();
    let x = cycle.order();
    let k = x.len();
    let d = VertexId::decorated;
    let prev = |i: usize| &x[(i + k - 1) % k];
    let next = |i: usize| &x[(i + 1) % k];
    let chord = |i: usize| -> Result<VertexId> {
        g.neighbors(&x[i])?
            .into_iter()
            .find(|y| y != prev(i) && y != next(i))
            .ok_or_else(|| Error::Precondition(format!("{} has no off-cycle neighbour", x[i])))
    };
    let mut word: Vec<VertexId> = Vec::with_capacity(6 * k);
    for (i, xi) in x.iter().enumerate() {
        word.push(d(xi, prev(i)));
        word.push(d(xi, next(i)));
    }
    let mut w: Vec<VertexId> = Vec::with_capacity(4 * k);
    for (i, xi) in x.iter().enumerate() {
        w.extend([d(xi, prev(i)), d(xi, &chord(i)?), d(xi, next(i))]);
    }
    for (i, xi) in x.iter().enumerate() {
        let v = chord(i)?;
        let (a, b) = (d(xi, &v), d(&v, xi));
        let covered = w.windows(2).any(|p| (p[0] == a && p[1] == b) || (p[0] == b && p[1] == a));
        if !covered {
            let at = w.iter().position(|y| *y == a).expect("triangle letter in W");
            w.splice(at + 1..at + 1, [b, a]);
        }
    }
    word.extend(w);
    let tour = tour_from_word(&exp.graph, &word).map_err(|e| Error::Soundness(format!("constructed word is not a tour: {e}")))?;
    SoetCertificate::new(tour, cycle_subset(cycle))
        .map_err(|e| Error::Soundness(format!("constructed tour is not semi-ordered: {e}")))
}

/// Recovers a Hamiltonian cycle of `r` from a tour of its triangle expansion
/// semi-ordered on `2 |V(r)|` vertices.
///
/// In the order `s`, consecutive entries come in pairs from the same
/// triangle; reading one owner per pair gives the cycle.
pub fn extract_ham_from_soet(r: &CubicGraph, exp: &K3Expansion, cert: &SoetCertificate) -> Result<HamCycle> {
    let n = r.graph().len();
    if !cert.tour().base().same_edges(&exp.graph) {
        return Err(Error::Precondition("certificate tour is not on the triangle expansion".into()));
    }
    let s = cert.order();
    if s.len() != 2 * n {
        return Err(Error::Precondition(format!(
            "semi-ordered subset has {} vertices, expected {}",
            s.len(),
            2 * n
        )));
    }
    let owners: Vec<&VertexId> = s
        .iter()
        .map(|v| exp.owner_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string())))
        .collect::<Result<_>>()?;
    let m = owners.len();
    let shift = if owners[0] == owners[1] { 0 } else { 1 };
    let paired = (0..n).all(|i| owners[(shift + 2 * i) % m] == owners[(shift + 2 * i + 1) % m]);
    if !paired {
        return Err(Error::Soundness("order does not pair triangle vertices".into()));
    }
    let order = (0..n).map(|i| owners[(shift + 2 * i) % m].clone()).collect();
    HamCycle::new(r, order).map_err(|e| Error::Soundness(format!("extracted order is not a Hamiltonian cycle: {e}")))
}

/// `R ↦ (Λ(R), 2 |V(R)|)`.
pub fn reduce_cubham_to_isosoet(r: &CubicGraph) -> (K3Expansion, usize) {
    (k3_expand(r), 2 * r.graph().len())
}

/// A star vertex-minor instance with the tour its graph was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarVmInstance {
    pub graph: SimpleGraph,
    pub k: usize,
    pub tour: EulerianTour,
}

/// `(F, k) ↦ (A(m(U)), k)` for the deterministic Hierholzer tour `U`.
pub fn reduce_isosoet_to_starvm(f: &Arc<MultiGraph>, k: usize) -> Result<StarVmInstance> {
    f.require_four_regular()?;
    if k == 0 || k > f.len() {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={}", f.len())));
    }
    let tour = find_euler_tour(f)?;
    let graph = alternance_graph(&tour.induced_word()?);
    Ok(StarVmInstance { graph, k, tour })
}

/// `(G, k) ↦ (G, S_k)` with star labels disjoint from `V(G)`.
pub fn reduce_starvm_to_isovm(g: &SimpleGraph, k: usize) -> Result<(SimpleGraph, SimpleGraph)> {
    if k == 0 || k > g.len() {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={}", g.len())));
    }
    Ok((g.clone(), fresh_star(k, g)))
}
