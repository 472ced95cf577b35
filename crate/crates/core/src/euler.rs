//! Eulerian tours on even multigraphs and the double-occurrence words they
//! induce on 4-regular ones.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::dow::{least_rotation, DoubleOccurrenceWord};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Closed walk `x_0 e_0 x_1 … x_{m-1} e_{m-1} x_0` using every edge once.
///
/// Stored as vertex indices into `base` (`x_0..x_{m-1}`, the closing `x_0`
/// implicit) and the parallel edge sequence; `e_i` joins `x_i` and
/// `x_{i+1 mod m}`.
#[derive(Clone)]
pub struct EulerianTour {
    base: Arc<MultiGraph>,
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
}

impl PartialEq for EulerianTour {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && *self.base == *other.base
    }
}

impl Eq for EulerianTour {}

impl EulerianTour {
    /// Validates and builds a tour from labels and edge ids.
    pub fn new(base: Arc<MultiGraph>, vertices: &[VertexId], edges: Vec<EdgeId>) -> Result<Self> {
        let idx = vertices.iter().map(|v| base.require(v)).collect::<Result<Vec<_>>>()?;
        Self::from_indices(base, idx, edges)
    }

    pub(crate) fn from_indices(base: Arc<MultiGraph>, vertices: Vec<usize>, edges: Vec<EdgeId>) -> Result<Self> {
        let m = base.edge_count();
        if vertices.len() != m || edges.len() != m {
            return Err(Error::Precondition(format!(
                "tour has {} vertices and {} edges but the multigraph has {m} edges",
                vertices.len(),
                edges.len()
            )));
        }
        let mut seen = vec![false; m];
        for (i, &e) in edges.iter().enumerate() {
            if e >= m {
                return Err(Error::Precondition(format!("edge id {e} out of range")));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::Precondition(format!("edge {e} traversed twice")));
            }
            let (a, b) = (vertices[i], vertices[(i + 1) % m]);
            if base.endpoints(e) != (a.min(b), a.max(b)) {
                return Err(Error::Precondition(format!(
                    "edge {e} does not join {} and {}",
                    base.label(a),
                    base.label(b)
                )));
            }
        }
        let mut visits = vec![0usize; base.len()];
        for &v in &vertices {
            visits[v] += 1;
        }
        if let Some(v) = (0..base.len()).find(|&v| 2 * visits[v] != base.degree(v)) {
            return Err(Error::Precondition(format!("vertex {} visited {} times", base.label(v), visits[v])));
        }
        Ok(EulerianTour { base, vertices, edges })
    }

    pub fn base(&self) -> &MultiGraph {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<MultiGraph> {
        &self.base
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// `x_0 .. x_{m-1}` as labels.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.vertices.iter().map(|&v| self.base.label(v).clone()).collect()
    }

    /// `m(U) = x_1 x_2 … x_{m-1} x_0`; a double-occurrence word when the
    /// base multigraph is 4-regular.
    pub fn induced_word(&self) -> Result<DoubleOccurrenceWord> {
        if !self.base.is_regular(4) {
            return Err(Error::Precondition("induced words need a 4-regular multigraph".into()));
        }
        Ok(DoubleOccurrenceWord::from_trusted(self.induced_indices().map(|v| self.base.label(v).clone()).collect()))
    }

    pub(crate) fn induced_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let m = self.vertices.len();
        (1..=m).map(move |i| self.vertices[i % m])
    }

    pub fn rotate_left(&self, by: usize) -> Self {
        let mut t = self.clone();
        if !t.vertices.is_empty() {
            let m = t.vertices.len();
            t.vertices.rotate_left(by % m);
            t.edges.rotate_left(by % m);
        }
        t
    }

    /// The same walk traversed backwards from `x_0`.
    pub fn reversed(&self) -> Self {
        let m = self.vertices.len();
        let mut t = self.clone();
        if m > 0 {
            t.vertices = std::iter::once(self.vertices[0]).chain(self.vertices[1..].iter().rev().copied()).collect();
            t.edges = self.edges.iter().rev().copied().collect();
        }
        t
    }

    /// Least rotation or reversal of the edge sequence; equal for tours that
    /// are rotations or reversals of each other.
    pub fn canonical_key(&self) -> Vec<EdgeId> {
        canonical_edge_sequence(&self.edges)
    }

    /// Rotated (and possibly reversed) copy whose edge sequence is
    /// [`canonical_key`](Self::canonical_key).
    pub fn canonical_form(&self) -> Self {
        let r = self.reversed();
        let a = self.rotate_left(least_rotation(&self.edges));
        let b = r.rotate_left(least_rotation(&r.edges));
        if b.edges < a.edges {
            b
        } else {
            a
        }
    }
}

impl fmt::Debug for EulerianTour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("EulerianTour(")?;
        for (i, &v) in self.vertices.iter().enumerate() {
            write!(f, "{} [{}] ", self.base.label(v), self.edges[i])?;
        }
        if let Some(&v) = self.vertices.first() {
            write!(f, "{}", self.base.label(v))?;
        }
        f.write_str(")")
    }
}

pub(crate) fn canonical_edge_sequence(edges: &[EdgeId]) -> Vec<EdgeId> {
    let n = edges.len();
    let rot = |s: &[EdgeId], k: usize| -> Vec<EdgeId> { (0..n).map(|i| s[(i + k) % n]).collect() };
    let rev: Vec<EdgeId> = edges.iter().rev().copied().collect();
    let a = rot(edges, least_rotation(edges));
    let b = rot(&rev, least_rotation(&rev));
    a.min(b)
}

/// Hierholzer's algorithm from the least vertex, always taking the unused
/// incident edge with the least id.
pub fn find_euler_tour(f: &Arc<MultiGraph>) -> Result<EulerianTour> {
    f.require_eulerian()?;
    let m = f.edge_count();
    if m == 0 {
        return Err(Error::Precondition("multigraph has no edges".into()));
    }
    let mut used = vec![false; m];
    let mut next = vec![0usize; f.len()];
    let mut stack: Vec<(usize, Option<EdgeId>)> = vec![(0, None)];
    let mut circuit: Vec<(usize, Option<EdgeId>)> = Vec::with_capacity(m + 1);
    while let Some(&(v, _)) = stack.last() {
        let inc = f.incident(v);
        while next[v] < inc.len() && used[inc[next[v]]] {
            next[v] += 1;
        }
        if next[v] < inc.len() {
            let e = inc[next[v]];
            used[e] = true;
            stack.push((f.other(e, v), Some(e)));
        } else {
            circuit.push(stack.pop().expect("non-empty stack"));
        }
    }
    circuit.reverse();
    let vertices = circuit[..m].iter().map(|&(v, _)| v).collect();
    let edges = circuit[1..].iter().map(|&(_, e)| e.expect("arrival edge")).collect();
    EulerianTour::from_indices(Arc::clone(f), vertices, edges)
}

/// Tour whose induced word is `word`, read as the cyclic visiting sequence.
///
/// Each consecutive pair takes the least unused edge joining it, which is
/// enough because parallel edges are interchangeable. Fails when the pair
/// multiset of `word` differs from the edge multiset of `f`.
pub fn tour_from_word(f: &Arc<MultiGraph>, word: &[VertexId]) -> Result<EulerianTour> {
    let m = f.edge_count();
    if word.len() != m {
        return Err(Error::Precondition(format!(
            "word has {} letters but the multigraph has {m} edges",
            word.len()
        )));
    }
    let idx = word.iter().map(|v| f.require(v)).collect::<Result<Vec<_>>>()?;
    // x_0 is the last letter so that m(U) reproduces `word` verbatim
    let vertices: Vec<usize> = (0..m).map(|i| idx[(i + m - 1) % m]).collect();
    let mut used = vec![false; m];
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = (vertices[i], vertices[(i + 1) % m]);
        let key = (a.min(b), a.max(b));
        let e = f
            .incident(a)
            .iter()
            .copied()
            .find(|&e| !used[e] && f.endpoints(e) == key)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "no unused edge between {} and {} for step {i}",
                    f.label(a),
                    f.label(b)
                ))
            })?;
        used[e] = true;
        edges.push(e);
    }
    EulerianTour::from_indices(Arc::clone(f), vertices, edges)
}

/// Visits every Eulerian tour of `f` once per equivalence class (rotation
/// and reversal of the edge sequence).
///
/// Backtracks over edge choices from edge 0 traversed away from its smaller
/// endpoint. Returns the number of classes visited. Fails with a resource
/// error when more than `limit` classes exist.
pub fn for_each_euler_tour<F>(f: &Arc<MultiGraph>, limit: usize, mut visit: F) -> Result<usize>
where
    F: FnMut(&EulerianTour) -> ControlFlow<()>,
{
    f.require_eulerian()?;
    let m = f.edge_count();
    if m == 0 {
        return Err(Error::Precondition("multigraph has no edges".into()));
    }
    let (start, second) = f.endpoints(0);
    let mut walk = Walk {
        f,
        used: vec![false; m],
        vertices: vec![start, second],
        edges: vec![0],
        seen: HashSet::new(),
        count: 0,
        limit,
        start,
    };
    walk.used[0] = true;
    match walk.extend(second, &mut visit) {
        Step::Continue | Step::Stop => Ok(walk.count),
        Step::Limit => Err(Error::ResourceLimit {
            what: "eulerian tour enumeration",
            count: walk.count as u64,
        }),
    }
}

/// Collects all tour classes (see [`for_each_euler_tour`]).
pub fn enumerate_euler_tours(f: &Arc<MultiGraph>, limit: usize) -> Result<Vec<EulerianTour>> {
    let mut out = Vec::new();
    for_each_euler_tour(f, limit, |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

enum Step {
    Continue,
    Stop,
    Limit,
}

struct Walk<'a> {
    f: &'a Arc<MultiGraph>,
    used: Vec<bool>,
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
    seen: HashSet<Vec<EdgeId>>,
    count: usize,
    limit: usize,
    start: usize,
}

impl Walk<'_> {
    fn extend<F>(&mut self, v: usize, visit: &mut F) -> Step
    where
        F: FnMut(&EulerianTour) -> ControlFlow<()>,
    {
        let m = self.used.len();
        if self.edges.len() == m {
            if v != self.start {
                return Step::Continue;
            }
            let key = canonical_edge_sequence(&self.edges);
            if !self.seen.insert(key) {
                return Step::Continue;
            }
            if self.count == self.limit {
                return Step::Limit;
            }
            self.count += 1;
            let tour = EulerianTour {
                base: Arc::clone(self.f),
                // the last pushed vertex is the closing return to `start`
                vertices: self.vertices[..m].to_vec(),
                edges: self.edges.clone(),
            };
            return match visit(&tour) {
                ControlFlow::Continue(()) => Step::Continue,
                ControlFlow::Break(()) => Step::Stop,
            };
        }
        let f = Arc::clone(self.f);
        for &e in f.incident(v) {
            if self.used[e] {
                continue;
            }
            let w = f.other(e, v);
            self.used[e] = true;
            self.edges.push(e);
            self.vertices.push(w);
            let step = self.extend(w, visit);
            self.vertices.pop();
            self.edges.pop();
            self.used[e] = false;
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        Step::Continue
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dow::{canonicalize, multigraph_from_word};
    use crate::graph::vid;

    fn word(s: &str) -> DoubleOccurrenceWord {
        DoubleOccurrenceWord::from_compact(s).unwrap()
    }

    fn from_word(s: &str) -> Arc<MultiGraph> {
        Arc::new(multigraph_from_word(&word(s)).unwrap())
    }

    #[test]
    fn hierholzer_on_worked_example() {
        let f = from_word("adcbaebced");
        let t = find_euler_tour(&f).unwrap();
        let m = t.induced_word().unwrap();
        assert!(f.same_edges(&multigraph_from_word(&m).unwrap()));
    }

    #[test]
    fn tours_on_tiny_graphs() {
        let f = from_word("aa");
        let t = find_euler_tour(&f).unwrap();
        assert_eq!(t.edges().len(), 2);
        assert_eq!(t.induced_word().unwrap(), word("aa"));

        let f = from_word("abab");
        let t = find_euler_tour(&f).unwrap();
        let w = t.induced_word().unwrap();
        assert_eq!(w.positions(&vid("a")).map(|(p, q)| q - p), Some(2));
    }

    #[test]
    fn hierholzer_rejects_bad_input() {
        let odd = Arc::new(MultiGraph::from_edges(&[("a", "b")]).unwrap());
        assert!(matches!(find_euler_tour(&odd), Err(Error::Precondition(_))));
        let split = Arc::new(MultiGraph::from_edges(&[("u", "u"), ("v", "v")]).unwrap());
        assert!(matches!(find_euler_tour(&split), Err(Error::Precondition(_))));
    }

    #[test]
    fn worked_example_tours_exist() {
        let f = from_word("adcbaebced");
        for target in ["adcbaebced", "abcdaebced"] {
            let t = tour_from_word(&f, word(target).letters()).unwrap();
            assert_eq!(t.induced_word().unwrap(), word(target));
        }
        let k = multigraph_from_word(&word("abcabc")).unwrap();
        assert!(tour_from_word(&Arc::new(k), word("aabbcc").letters()).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_euler_tours(&from_word("abab"), 100).unwrap().len(), 3);
        assert_eq!(enumerate_euler_tours(&from_word("aa"), 100).unwrap().len(), 1);
        let tours = enumerate_euler_tours(&from_word("abcabc"), 1000).unwrap();
        assert!(!tours.is_empty());
        for t in &tours {
            assert_eq!(t.induced_word().unwrap().vertex_set().len(), 3);
        }
    }

    #[test]
    fn enumeration_limit() {
        match enumerate_euler_tours(&from_word("abab"), 2) {
            Err(Error::ResourceLimit { count, .. }) => assert_eq!(count, 2),
            other => panic!("expected limit error, got {other:?}"),
        }
    }

    #[test]
    fn enumerated_classes_are_distinct_and_valid() {
        let f = from_word("adcbaebced");
        let tours = enumerate_euler_tours(&f, 100_000).unwrap();
        let keys: HashSet<_> = tours.iter().map(|t| t.canonical_key()).collect();
        assert_eq!(keys.len(), tours.len());
        let target = canonicalize(&word("adcbaebced"));
        assert!(tours.iter().any(|t| canonicalize(&t.induced_word().unwrap()) == target));
        for t in &tours {
            let w = t.induced_word().unwrap();
            assert!(f.same_edges(&multigraph_from_word(&w).unwrap()));
        }
    }

    #[test]
    fn canonical_form_is_shared_by_rotations_and_reversals() {
        let f = from_word("adcbaebced");
        let t = find_euler_tour(&f).unwrap();
        let c = t.canonical_form();
        assert_eq!(t.rotate_left(3).canonical_form(), c);
        assert_eq!(t.reversed().canonical_form(), c);
        assert_eq!(c.edges(), t.canonical_key().as_slice());
        // reversal keeps the walk valid
        EulerianTour::from_indices(Arc::clone(&f), t.reversed().vertices, t.reversed().edges).unwrap();
    }
}
