//! Local complementation, vertex deletion, pivoting and LC orbits.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bit, iter_bits, SimpleGraph, VertexId};

/// Orbit exploration cap used when callers do not supply one.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// Sequence of vertices naming successive local complementations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LcWord(pub Vec<VertexId>);

impl LcWord {
    pub fn new(letters: Vec<VertexId>) -> Self {
        LcWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Complements the neighbourhood of `v` in place. Only vertices in `alive`
/// are treated as present; rows of dead vertices are left untouched. The
/// operation is its own inverse for a fixed `alive`.
#[inline]
pub(crate) fn lc_in_place(adj: &mut [u64], alive: u64, v: usize) {
    let nbrs = adj[v] & alive;
    for u in iter_bits(nbrs) {
        adj[u] ^= nbrs & !bit(u);
    }
}

/// `τ_v(G)`.
pub fn local_complement(g: &SimpleGraph, v: &VertexId) -> Result<SimpleGraph> {
    let i = g.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    let mut adj = g.masks().to_vec();
    lc_in_place(&mut adj, g.all_mask(), i);
    Ok(SimpleGraph::from_masks(g.vertices().to_vec(), adj))
}

/// Applies `τ_{w_k} ∘ … ∘ τ_{w_1}`, i.e. the letters left to right.
pub fn apply_lc_word(g: &SimpleGraph, word: &LcWord) -> Result<SimpleGraph> {
    let mut adj = g.masks().to_vec();
    let all = g.all_mask();
    for (position, v) in word.0.iter().enumerate() {
        let i = g.index_of(v).ok_or_else(|| Error::UnknownVertexAt {
            vertex: v.to_string(),
            position,
        })?;
        lc_in_place(&mut adj, all, i);
    }
    Ok(SimpleGraph::from_masks(g.vertices().to_vec(), adj))
}

/// `G \ v`.
pub fn delete_vertex(g: &SimpleGraph, v: &VertexId) -> Result<SimpleGraph> {
    let i = g.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    Ok(g.restrict(g.all_mask() & !bit(i)))
}

/// Pivot on the edge `uv`: `τ_u ∘ τ_v ∘ τ_u`.
pub fn pivot(g: &SimpleGraph, u: &VertexId, v: &VertexId) -> Result<SimpleGraph> {
    let i = g.index_of(u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
    let j = g.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    if g.masks()[i] & bit(j) == 0 {
        return Err(Error::Precondition(format!("pivot needs an edge, but {u} and {v} are not adjacent")));
    }
    let mut adj = g.masks().to_vec();
    let all = g.all_mask();
    lc_in_place(&mut adj, all, i);
    lc_in_place(&mut adj, all, j);
    lc_in_place(&mut adj, all, i);
    Ok(SimpleGraph::from_masks(g.vertices().to_vec(), adj))
}

/// Breadth-first closure of a graph under local complementation.
///
/// States are adjacency rows under the fixed labeling; no isomorphism
/// folding. Parent links allow recovering an LC word to any member.
#[derive(Clone, Debug)]
pub struct LcOrbit {
    labels: Vec<VertexId>,
    states: Vec<Vec<u64>>,
    parent: Vec<Option<(usize, usize)>>,
    index: HashMap<Vec<u64>, usize>,
}

impl LcOrbit {
    /// Explores the whole orbit of `g`; fails once more than `node_cap`
    /// distinct graphs have been found.
    pub fn explore(g: &SimpleGraph, node_cap: usize) -> Result<Self> {
        let (orbit, _) = Self::explore_masks(g.vertices().to_vec(), g.masks().to_vec(), node_cap, None)?;
        Ok(orbit)
    }

    pub(crate) fn explore_masks(
        labels: Vec<VertexId>,
        start: Vec<u64>,
        node_cap: usize,
        target: Option<&[u64]>,
    ) -> Result<(Self, Option<usize>)> {
        if node_cap == 0 {
            return Err(Error::Precondition("node_cap must be positive".into()));
        }
        let n = labels.len();
        let all = if n == 64 { u64::MAX } else { bit(n) - 1 };
        let mut orbit = LcOrbit {
            labels,
            states: vec![start.clone()],
            parent: vec![None],
            index: HashMap::from([(start.clone(), 0)]),
        };
        if target == Some(start.as_slice()) {
            return Ok((orbit, Some(0)));
        }
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for v in 0..n {
                if orbit.states[s][v].count_ones() < 2 {
                    continue;
                }
                let mut next = orbit.states[s].clone();
                lc_in_place(&mut next, all, v);
                if orbit.index.contains_key(&next) {
                    continue;
                }
                let id = orbit.states.len();
                if id >= node_cap {
                    return Err(Error::ResourceLimit {
                        what: "lc orbit",
                        count: id as u64,
                    });
                }
                let hit = target == Some(next.as_slice());
                orbit.index.insert(next.clone(), id);
                orbit.states.push(next);
                orbit.parent.push(Some((s, v)));
                if hit {
                    return Ok((orbit, Some(id)));
                }
                queue.push_back(id);
            }
        }
        Ok((orbit, None))
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = SimpleGraph> + '_ {
        self.states
            .iter()
            .map(|adj| SimpleGraph::from_masks(self.labels.clone(), adj.clone()))
    }

    pub(crate) fn states(&self) -> &[Vec<u64>] {
        &self.states
    }

    pub fn contains(&self, h: &SimpleGraph) -> bool {
        h.vertices() == self.labels.as_slice() && self.index.contains_key(h.masks())
    }

    pub(crate) fn word_to_index(&self, mut id: usize) -> LcWord {
        let mut letters = Vec::new();
        while let Some((p, v)) = self.parent[id] {
            letters.push(self.labels[v].clone());
            id = p;
        }
        letters.reverse();
        LcWord(letters)
    }

    /// LC word taking the start graph to `h`, if `h` is in the orbit.
    pub fn path_to(&self, h: &SimpleGraph) -> Option<LcWord> {
        if h.vertices() != self.labels.as_slice() {
            return None;
        }
        self.index.get(h.masks()).map(|&id| self.word_to_index(id))
    }
}

/// All graphs reachable from `g` by local complementations.
pub fn lc_orbit(g: &SimpleGraph, node_cap: usize) -> Result<BTreeSet<SimpleGraph>> {
    Ok(LcOrbit::explore(g, node_cap)?.graphs().collect())
}

/// Labeled LC-equivalence: is `h` in the orbit of `g`?
pub fn lc_equivalent(g: &SimpleGraph, h: &SimpleGraph, node_cap: usize) -> Result<bool> {
    if g.vertices() != h.vertices() {
        return Err(Error::Precondition("lc_equivalent needs identical vertex sets".into()));
    }
    Ok(lc_path(g, h, node_cap)?.is_some())
}

/// LC word from `g` to `h` when they are LC-equivalent (same labels).
pub fn lc_path(g: &SimpleGraph, h: &SimpleGraph, node_cap: usize) -> Result<Option<LcWord>> {
    if g.vertices() != h.vertices() {
        return Ok(None);
    }
    if component_signature(g.masks()) != component_signature(h.masks()) {
        return Ok(None);
    }
    let (orbit, hit) = LcOrbit::explore_masks(g.vertices().to_vec(), g.masks().to_vec(), node_cap, Some(h.masks()))?;
    Ok(hit.map(|id| orbit.word_to_index(id)))
}

/// Connected components as vertex masks; invariant under local
/// complementation.
pub(crate) fn component_signature(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let mut seen = 0u64;
    let mut out = Vec::new();
    for s in 0..n {
        if seen & bit(s) != 0 {
            continue;
        }
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0;
            for i in iter_bits(frontier) {
                next |= adj[i];
            }
            frontier = next & !comp;
            comp |= next;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

/// Structural class of a graph relative to the LC orbit of a star.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarClass {
    /// Exactly one vertex adjacent to all others and no other edges.
    Star(VertexId),
    /// All pairs adjacent. A single edge is reported as complete.
    Complete,
    Neither,
}

/// For `k >= 3` the LC orbit of a star on `k` vertices is exactly the
/// complete graph plus the `k` stars, so this classification decides LC
/// equivalence to a star.
pub fn classify_star_or_complete(g: &SimpleGraph) -> Result<StarClass> {
    if g.len() < 2 {
        return Err(Error::Precondition("classification needs at least 2 vertices".into()));
    }
    Ok(match classify_masks(g.masks(), g.all_mask()) {
        MaskClass::Complete => StarClass::Complete,
        MaskClass::Star(c) => StarClass::Star(g.vertices()[c].clone()),
        MaskClass::Neither => StarClass::Neither,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum MaskClass {
    Complete,
    Star(usize),
    Neither,
}

/// Classifies the subgraph induced by `alive` (at least two vertices).
#[inline]
pub(crate) fn classify_masks(adj: &[u64], alive: u64) -> MaskClass {
    let k = alive.count_ones();
    let mut full = 0u32;
    let mut center = usize::MAX;
    let mut leaves = 0u32;
    for i in iter_bits(alive) {
        let d = (adj[i] & alive).count_ones();
        if d == k - 1 {
            full += 1;
            center = i;
        } else if d == 1 {
            leaves += 1;
        } else {
            return MaskClass::Neither;
        }
    }
    if full == k {
        MaskClass::Complete
    } else if full == 1 && leaves == k - 1 {
        MaskClass::Star(center)
    } else {
        MaskClass::Neither
    }
}
