use std::collections::BTreeSet;
use std::fmt;

use super::label::VertexId;
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Labeled simple graph on at most 64 vertices.
///
/// Vertices are kept sorted by label and adjacency is stored as one bitmask
/// per vertex, indexed by position in that sorted order. Two graphs compare
/// equal exactly when they have the same labels and the same edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    labels: Vec<VertexId>,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl SimpleGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let labels: Vec<VertexId> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let mut g = SimpleGraph {
            adj: vec![0; labels.len()],
            labels,
        };
        for (u, v) in edges {
            if u == v {
                return Err(Error::Precondition(format!("loop at {u} in a simple graph")));
            }
            let i = g.require(&u)?;
            let j = g.require(&v)?;
            g.adj[i] |= bit(j);
            g.adj[j] |= bit(i);
        }
        Ok(g)
    }

    /// Graph whose vertex set is exactly the endpoints of `edges`.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Self> {
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((VertexId::new(a)?, VertexId::new(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let vertices: Vec<VertexId> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        SimpleGraph::new(vertices, pairs)
    }

    pub fn with_vertices(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let vs = vertices.iter().map(|s| VertexId::new(s)).collect::<Result<Vec<_>>>()?;
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((VertexId::new(a)?, VertexId::new(b)?)))
            .collect::<Result<Vec<_>>>()?;
        SimpleGraph::new(vs, pairs)
    }

    pub fn empty<V: IntoIterator<Item = VertexId>>(vertices: V) -> Result<Self> {
        SimpleGraph::new(vertices, std::iter::empty())
    }

    /// Builds from sorted labels and a symmetric, loop-free adjacency.
    pub(crate) fn from_masks(labels: Vec<VertexId>, adj: Vec<u64>) -> Self {
        debug_assert_eq!(labels.len(), adj.len());
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        debug_assert!((0..adj.len()).all(|i| adj[i] & bit(i) == 0));
        SimpleGraph { labels, adj }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.adj
    }

    pub fn all_mask(&self) -> u64 {
        if self.labels.len() == 64 {
            u64::MAX
        } else {
            bit(self.labels.len()) - 1
        }
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    pub(crate) fn require(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }

    pub fn has_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adj[i] & bit(j) != 0,
            _ => false,
        }
    }

    pub fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let i = self.require(v)?;
        Ok(iter_bits(self.adj[i]).map(|j| self.labels[j].clone()).collect())
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize> {
        Ok(self.adj[self.require(v)?].count_ones() as usize)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|m| m.count_ones() as usize).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.index_edges()
            .into_iter()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    pub(crate) fn index_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.adj.len() {
            for j in iter_bits(self.adj[i] & !((bit(i) << 1).wrapping_sub(1))) {
                out.push((i, j));
            }
        }
        out
    }

    /// `G[W]`: the graph on `W` with every edge of `G` inside `W`.
    pub fn induced_subgraph<'a, W>(&self, subset: W) -> Result<SimpleGraph>
    where
        W: IntoIterator<Item = &'a VertexId>,
    {
        let mut mask = 0u64;
        for v in subset {
            mask |= bit(self.require(v)?);
        }
        Ok(self.restrict(mask))
    }

    /// Induced subgraph on the vertices whose indices are set in `mask`.
    pub(crate) fn restrict(&self, mask: u64) -> SimpleGraph {
        let keep: Vec<usize> = iter_bits(mask).collect();
        let mut pos = [usize::MAX; 64];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let adj = keep
            .iter()
            .map(|&i| iter_bits(self.adj[i] & mask).fold(0u64, |acc, j| acc | bit(pos[j])))
            .collect();
        SimpleGraph { labels, adj }
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for i in iter_bits(frontier) {
                next |= self.adj[i];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.all_mask()
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph {{ vertices: {:?}, edges: [", self.labels)?;
        for (k, (u, v)) in self.edges().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("] }")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::label::labels;

    fn worked_graph() -> SimpleGraph {
        SimpleGraph::from_edges(&[("a", "b"), ("a", "c"), ("a", "d"), ("b", "e"), ("c", "e")]).unwrap()
    }

    #[test]
    fn induced_subgraph_of_alternance_example() {
        let g = worked_graph();
        let sub = g.induced_subgraph(&labels(&["b", "c", "e"])).unwrap();
        assert_eq!(sub, SimpleGraph::from_edges(&[("b", "e"), ("c", "e")]).unwrap());
    }

    #[test]
    fn induced_subgraph_identity_and_empty() {
        let g = worked_graph();
        assert_eq!(g.induced_subgraph(g.vertices()).unwrap(), g);
        let e = g.induced_subgraph(&[]).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.edge_count(), 0);
    }

    #[test]
    fn induced_subgraph_rejects_unknown_vertex() {
        let err = worked_graph().induced_subgraph(&labels(&["a", "z"])).unwrap_err();
        assert_eq!(err, Error::UnknownVertex("z".into()));
    }

    #[test]
    fn duplicate_edges_collapse_and_loops_fail() {
        let g = SimpleGraph::from_edges(&[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(SimpleGraph::from_edges(&[("a", "a")]).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(worked_graph().is_connected());
        let g = SimpleGraph::with_vertices(&["a", "b", "c"], &[("a", "b")]).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn nested_induced_subgraphs_compose() {
        let g = worked_graph();
        let w1 = labels(&["a", "b", "c", "e"]);
        let w2 = labels(&["b", "c", "e"]);
        let lhs = g.induced_subgraph(&w1).unwrap().induced_subgraph(&w2).unwrap();
        assert_eq!(lhs, g.induced_subgraph(&w2).unwrap());
    }
}
