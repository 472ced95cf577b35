use std::collections::BTreeSet;
use std::fmt;

use super::label::VertexId;
use crate::error::{Error, Result};

/// Dense edge identifier, assigned in input order.
pub type EdgeId = usize;

/// Labeled multigraph with parallel edges and loops.
///
/// Edge `e` joins `endpoints(e)`; a loop has equal endpoints. A loop adds two
/// to the degree of its vertex but appears once in that vertex's incidence
/// list, since a walk traverses it once.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    labels: Vec<VertexId>,
    ends: Vec<(usize, usize)>,
    incident: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let labels: Vec<VertexId> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut ends = Vec::new();
        for (u, v) in edges {
            let i = labels.binary_search(&u).map_err(|_| Error::UnknownVertex(u.to_string()))?;
            let j = labels.binary_search(&v).map_err(|_| Error::UnknownVertex(v.to_string()))?;
            ends.push((i.min(j), i.max(j)));
        }
        Ok(MultiGraph::from_index_edges(labels, ends))
    }

    /// Multigraph whose vertices are exactly the endpoints of `edges`.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Self> {
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((VertexId::new(a)?, VertexId::new(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let vertices: Vec<VertexId> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        MultiGraph::new(vertices, pairs)
    }

    pub(crate) fn from_index_edges(labels: Vec<VertexId>, ends: Vec<(usize, usize)>) -> Self {
        let mut incident = vec![Vec::new(); labels.len()];
        for (e, &(a, b)) in ends.iter().enumerate() {
            incident[a].push(e);
            if a != b {
                incident[b].push(e);
            }
        }
        MultiGraph { labels, ends, incident }
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

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    pub(crate) fn require(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    /// Endpoint indices of `e`, smaller first.
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.ends[e]
    }

    pub fn edge_labels(&self, e: EdgeId) -> (&VertexId, &VertexId) {
        let (a, b) = self.ends[e];
        (&self.labels[a], &self.labels[b])
    }

    /// The endpoint of `e` opposite `v` (`v` itself for a loop).
    pub fn other(&self, e: EdgeId, v: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn incident(&self, v: usize) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&e| if self.ends[e].0 == self.ends[e].1 { 2 } else { 1 })
            .sum()
    }

    /// True iff every vertex has degree exactly `d`, loops counting twice.
    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.labels.len()).all(|v| self.degree(v) == d)
    }

    /// Maximal connected vertex sets, each sorted, ordered by least member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.labels[i].clone()).collect())
            .collect()
    }

    pub(crate) fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut stack = vec![start];
            let mut members = vec![start];
            while let Some(v) = stack.pop() {
                for &e in &self.incident[v] {
                    let w = self.other(e, v);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }

    /// Sorted endpoint pairs, i.e. the edge multiset without identities.
    pub fn edge_multiset(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs: Vec<(usize, usize)> = self.ends.clone();
        pairs.sort_unstable();
        pairs
            .into_iter()
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect()
    }

    /// Same labels and same edge multiset, ignoring edge identities.
    pub fn same_edges(&self, other: &MultiGraph) -> bool {
        self.labels == other.labels && self.edge_multiset() == other.edge_multiset()
    }

    /// Number of parallel edges between `u` and `v` (loops when `u == v`).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.incident[u].iter().filter(|&&e| self.ends[e] == key).count()
    }

    /// Checks the connected, even-degree condition for Eulerian tours.
    pub(crate) fn require_eulerian(&self) -> Result<()> {
        if self.labels.is_empty() {
            return Err(Error::Precondition("multigraph has no vertices".into()));
        }
        for v in 0..self.labels.len() {
            if self.degree(v) % 2 == 1 {
                return Err(Error::Precondition(format!("vertex {} has odd degree {}", self.labels[v], self.degree(v))));
            }
        }
        let comps = self.component_indices();
        if comps.len() > 1 {
            return Err(Error::Precondition(format!(
                "multigraph is disconnected; component containing {} does not reach {}",
                self.labels[comps[0][0]], self.labels[comps[1][0]]
            )));
        }
        Ok(())
    }

    pub(crate) fn require_four_regular(&self) -> Result<()> {
        self.require_eulerian()?;
        for v in 0..self.labels.len() {
            if self.degree(v) != 4 {
                return Err(Error::Precondition(format!("vertex {} has degree {} (expected 4)", self.labels[v], self.degree(v))));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiGraph {{ vertices: {:?}, edges: [", self.labels)?;
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if e > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}:{}-{}", self.labels[a], self.labels[b])?;
        }
        f.write_str("] }")
    }
}
