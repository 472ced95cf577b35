//! Semi-ordered Eulerian tours: recognition, certificates and a pruned
//! backtracking search for a fixed vertex subset.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::euler::EulerianTour;
use crate::graph::{MultiGraph, VertexId};

/// If `tour` is semi-ordered with respect to `subset`, returns the order `s`
/// such that the restriction of the induced word to `subset` is `s s`.
pub fn is_soet(tour: &EulerianTour, subset: &BTreeSet<VertexId>) -> Result<Option<Vec<VertexId>>> {
    let f = tour.base();
    if subset.is_empty() {
        return Err(Error::Precondition("vertex subset is empty".into()));
    }
    let mut inside = vec![false; f.len()];
    for v in subset {
        inside[f.require(v)?] = true;
    }
    let w: Vec<usize> = tour.induced_indices().filter(|&v| inside[v]).collect();
    let k = w.len() / 2;
    if w.len() != 2 * subset.len() {
        return Err(Error::Precondition("tour does not visit every subset vertex twice".into()));
    }
    if (0..k).all(|i| w[i] == w[i + k]) {
        Ok(Some(w[..k].iter().map(|&v| f.label(v).clone()).collect()))
    } else {
        Ok(None)
    }
}

/// A tour together with the subset it is semi-ordered on and the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoetCertificate {
    tour: EulerianTour,
    subset: BTreeSet<VertexId>,
    order: Vec<VertexId>,
}

impl SoetCertificate {
    /// Checks the tour and wraps it; fails if it is not semi-ordered.
    pub fn new(tour: EulerianTour, subset: BTreeSet<VertexId>) -> Result<Self> {
        match is_soet(&tour, &subset)? {
            Some(order) => Ok(SoetCertificate { tour, subset, order }),
            None => Err(Error::Precondition("tour is not semi-ordered on the given subset".into())),
        }
    }

    pub fn tour(&self) -> &EulerianTour {
        &self.tour
    }

    pub fn subset(&self) -> &BTreeSet<VertexId> {
        &self.subset
    }

    /// The order `s` with `m(U)[V'] = s s`.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }
}

fn unordered(u: &VertexId, v: &VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    }
}

/// Cyclically consecutive pairs `{s_i, s_{i+1}}` of the order. A subset of
/// size `k >= 3` has exactly `k` of them.
pub fn consecutive_pairs(cert: &SoetCertificate) -> BTreeSet<(VertexId, VertexId)> {
    let s = &cert.order;
    let k = s.len();
    if k < 2 {
        return BTreeSet::new();
    }
    (0..k).map(|i| unordered(&s[i], &s[(i + 1) % k])).collect()
}

/// The two stretches of the induced word strictly between `s_i` and
/// `s_{i+1}`, for the consecutive pair `{u, v}`: first the one in the first
/// half, then the one in the second half.
///
/// When `k = 2` both orientations are consecutive and the one with `u = s_i`
/// is used.
pub fn maximal_subwords(cert: &SoetCertificate, u: &VertexId, v: &VertexId) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
    let s = &cert.order;
    let k = s.len();
    let pos = |x: &VertexId| {
        s.iter()
            .position(|y| y == x)
            .ok_or_else(|| Error::Precondition(format!("{x} is not in the subset")))
    };
    let (pu, pv) = (pos(u)?, pos(v)?);
    let i = if k >= 2 && (pu + 1) % k == pv {
        pu
    } else if k >= 2 && (pv + 1) % k == pu {
        pv
    } else {
        return Err(Error::Precondition(format!("{u} and {v} are not consecutive")));
    };
    let word = cert.tour.induced_word()?;
    let letters = word.letters();
    let n = letters.len();
    let start = letters
        .iter()
        .position(|x| cert.subset.contains(x))
        .expect("subset letters occur in the word");
    // gap j runs from the j-th subset letter after `start` to the next one
    let mut gaps: Vec<Vec<VertexId>> = Vec::with_capacity(2 * k);
    let mut current = Vec::new();
    for j in 1..=n {
        let x = &letters[(start + j) % n];
        if cert.subset.contains(x) {
            gaps.push(std::mem::take(&mut current));
        } else {
            current.push(x.clone());
        }
    }
    // the first-half order begins at the first subset letter of the word,
    // which may be any rotation of `s`
    let first = s.iter().position(|x| *x == letters[start]).expect("start letter in order");
    let offset = (i + k - first) % k;
    Ok((gaps[offset].clone(), gaps[offset + k].clone()))
}

/// Tuning for [`soet_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SoetSearchOptions {
    /// Edge-traversal attempts allowed before giving up.
    pub budget: u64,
    /// Reject partial orders that contradict edges between subset vertices.
    /// Turning this off leaves only the pattern check.
    pub adjacency_pruning: bool,
}

impl Default for SoetSearchOptions {
    fn default() -> Self {
        SoetSearchOptions {
            budget: 100_000_000,
            adjacency_pruning: true,
        }
    }
}

/// Result of one bounded search together with the work it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Bounded<T> {
    Found(T),
    Exhausted,
    OutOfBudget,
}

/// Searches for a tour of `f` that is semi-ordered on `subset`.
///
/// `Ok(None)` is a definitive no; running out of budget is a resource error.
pub fn soet_search(
    f: &Arc<MultiGraph>,
    subset: &BTreeSet<VertexId>,
    options: SoetSearchOptions,
) -> Result<Option<SoetCertificate>> {
    let mut inside = vec![false; f.len()];
    for v in subset {
        inside[f.require(v)?] = true;
    }
    let (outcome, nodes) = soet_search_inside(f, &inside, options)?;
    match outcome {
        Bounded::Found(tour) => SoetCertificate::new(tour, subset.clone())
            .map(Some)
            .map_err(|e| Error::Soundness(format!("search produced an invalid certificate: {e}"))),
        Bounded::Exhausted => Ok(None),
        Bounded::OutOfBudget => Err(Error::ResourceLimit {
            what: "soet search",
            count: nodes,
        }),
    }
}

/// Core search on a membership vector; returns the outcome and the number
/// of nodes spent (at most `budget + 1`).
pub(crate) fn soet_search_inside(
    f: &Arc<MultiGraph>,
    inside: &[bool],
    options: SoetSearchOptions,
) -> Result<(Bounded<EulerianTour>, u64)> {
    f.require_four_regular()?;
    let k = inside.iter().filter(|&&b| b).count();
    if k == 0 {
        return Err(Error::Precondition("vertex subset is empty".into()));
    }
    let n = f.len();
    // distinct subset neighbours of each subset vertex
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..f.edge_count() {
        let (a, b) = f.endpoints(e);
        if a != b && inside[a] && inside[b] && !nbrs[a].contains(&b) {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
    }
    let pruning = options.adjacency_pruning && k >= 3;
    if pruning && !static_feasible(&nbrs, inside, k) {
        return Ok((Bounded::Exhausted, 0));
    }
    let start = (0..n).find(|&v| inside[v]).expect("non-empty subset");
    let m = f.edge_count();
    let mut s = Search {
        f,
        inside,
        nbrs,
        k,
        m,
        start,
        pruning,
        used: vec![false; m],
        visits: vec![0; n],
        pos: vec![usize::MAX; n],
        order: Vec::with_capacity(k),
        subset_visits: 0,
        vertices: Vec::with_capacity(m),
        edges: Vec::with_capacity(m),
        nodes: 0,
        budget: options.budget,
    };
    let outcome = if s.visit(start) {
        s.vertices.push(start);
        s.dfs(start)
    } else {
        Step::Dead
    };
    let nodes = s.nodes;
    Ok(match outcome {
        Step::Found => {
            let tour = EulerianTour::from_indices(Arc::clone(f), s.vertices, s.edges)
                .map_err(|e| Error::Soundness(format!("search built an invalid tour: {e}")))?;
            (Bounded::Found(tour), nodes)
        }
        Step::Dead => (Bounded::Exhausted, nodes),
        Step::Budget => (Bounded::OutOfBudget, nodes),
    })
}

/// Necessary conditions on the subgraph induced by the subset: every vertex
/// has at most two distinct subset neighbours and every cycle is spanning.
fn static_feasible(nbrs: &[Vec<usize>], inside: &[bool], k: usize) -> bool {
    if nbrs.iter().any(|l| l.len() > 2) {
        return false;
    }
    // components of a max-degree-2 graph are paths or cycles
    let n = nbrs.len();
    let mut seen = vec![false; n];
    for v in 0..n {
        if !inside[v] || seen[v] {
            continue;
        }
        let mut stack = vec![v];
        seen[v] = true;
        let (mut size, mut degsum) = (0usize, 0usize);
        while let Some(x) = stack.pop() {
            size += 1;
            degsum += nbrs[x].len();
            for &y in &nbrs[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let is_cycle = size >= 3 && degsum == 2 * size;
        if is_cycle && size != k {
            return false;
        }
    }
    true
}

enum Step {
    Found,
    Dead,
    Budget,
}

struct Search<'a> {
    f: &'a MultiGraph,
    inside: &'a [bool],
    nbrs: Vec<Vec<usize>>,
    k: usize,
    m: usize,
    start: usize,
    pruning: bool,
    used: Vec<bool>,
    visits: Vec<u8>,
    pos: Vec<usize>,
    order: Vec<usize>,
    subset_visits: usize,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Records a visit of `w`; returns false (and records nothing) if the
    /// visit breaks the pattern.
    fn visit(&mut self, w: usize) -> bool {
        if self.visits[w] == 2 {
            return false;
        }
        if self.inside[w] {
            let j = self.subset_visits;
            if j < self.k {
                if self.pos[w] != usize::MAX || !self.placement_ok(w, j) {
                    return false;
                }
                self.pos[w] = j;
                self.order.push(w);
            } else if self.order[j - self.k] != w {
                return false;
            }
            self.subset_visits += 1;
        }
        self.visits[w] += 1;
        true
    }

    fn unvisit(&mut self, w: usize) {
        self.visits[w] -= 1;
        if self.inside[w] {
            self.subset_visits -= 1;
            if self.subset_visits < self.k {
                self.pos[w] = usize::MAX;
                self.order.pop();
            }
        }
    }

    /// Subset neighbours must end up cyclically adjacent in the order.
    fn placement_ok(&self, w: usize, p: usize) -> bool {
        if !self.pruning {
            return true;
        }
        let k = self.k;
        let mut unplaced = 0;
        for &y in &self.nbrs[w] {
            let q = self.pos[y];
            if q == usize::MAX {
                unplaced += 1;
            } else if !(q + 1 == p || (p == k - 1 && q == 0)) {
                return false;
            }
        }
        let free_slots = if p == 0 {
            2
        } else if p + 1 < k {
            1
        } else {
            0
        };
        unplaced <= free_slots
    }

    fn dfs(&mut self, v: usize) -> Step {
        let f = self.f;
        for &e in f.incident(v) {
            if self.used[e] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Budget;
            }
            let w = f.other(e, v);
            self.used[e] = true;
            self.edges.push(e);
            if self.edges.len() == self.m {
                // the closing return to the start is not a visit
                if w == self.start {
                    return Step::Found;
                }
            } else if self.visit(w) {
                self.vertices.push(w);
                match self.dfs(w) {
                    Step::Dead => {}
                    other => return other,
                }
                self.vertices.pop();
                self.unvisit(w);
            }
            self.edges.pop();
            self.used[e] = false;
        }
        Step::Dead
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dow::{multigraph_from_word, DoubleOccurrenceWord};
    use crate::euler::{enumerate_euler_tours, tour_from_word};
    use crate::graph::labels;

    fn word(s: &str) -> DoubleOccurrenceWord {
        DoubleOccurrenceWord::from_compact(s).unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<VertexId> {
        labels(items).into_iter().collect()
    }

    fn word_multigraph() -> Arc<MultiGraph> {
        Arc::new(multigraph_from_word(&word("adcbaebced")).unwrap())
    }

    #[test]
    fn recognises_worked_example() {
        let f = word_multigraph();
        let t = tour_from_word(&f, word("abcdaebced").letters()).unwrap();
        let s = is_soet(&t, &set(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(s, Some(labels(&["a", "b", "c", "d"])));
        let t0 = tour_from_word(&f, word("adcbaebced").letters()).unwrap();
        assert_eq!(is_soet(&t0, &set(&["a", "b", "c", "d"])).unwrap(), None);
    }

    #[test]
    fn recognition_errors() {
        let f = word_multigraph();
        let t = tour_from_word(&f, word("abcdaebced").letters()).unwrap();
        assert!(is_soet(&t, &BTreeSet::new()).is_err());
        assert!(matches!(is_soet(&t, &set(&["z"])), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn certificate_pairs_and_gaps() {
        let f = word_multigraph();
        let t = tour_from_word(&f, word("abcdaebced").letters()).unwrap();
        let cert = SoetCertificate::new(t, set(&["a", "b", "c", "d"])).unwrap();
        let pairs = consecutive_pairs(&cert);
        assert_eq!(pairs.len(), 4);
        assert!(pairs.contains(&(labels(&["a"])[0].clone(), labels(&["d"])[0].clone())));
        let e = labels(&["e"]);
        let da = maximal_subwords(&cert, &labels(&["d"])[0], &labels(&["a"])[0]).unwrap();
        assert_eq!(da, (vec![], vec![]));
        let ab = maximal_subwords(&cert, &labels(&["a"])[0], &labels(&["b"])[0]).unwrap();
        assert_eq!(ab, (vec![], e.clone()));
        let cd = maximal_subwords(&cert, &labels(&["c"])[0], &labels(&["d"])[0]).unwrap();
        assert_eq!(cd, (vec![], e));
        assert!(maximal_subwords(&cert, &labels(&["a"])[0], &labels(&["c"])[0]).is_err());
    }

    #[test]
    fn gaps_partition_the_outside_letters() {
        let f = word_multigraph();
        let t = tour_from_word(&f, word("abcdaebced").letters()).unwrap();
        let cert = SoetCertificate::new(t.rotate_left(3), set(&["a", "b", "c", "d"])).unwrap();
        let s = cert.order().to_vec();
        let mut all = Vec::new();
        for i in 0..s.len() {
            let (x, y) = maximal_subwords(&cert, &s[i], &s[(i + 1) % s.len()]).unwrap();
            all.extend(x);
            all.extend(y);
        }
        assert_eq!(all, labels(&["e", "e"]));
    }

    #[test]
    fn search_finds_worked_example() {
        let f = word_multigraph();
        for pruning in [false, true] {
            let opts = SoetSearchOptions {
                adjacency_pruning: pruning,
                ..Default::default()
            };
            let cert = soet_search(&f, &set(&["a", "b", "c", "d"]), opts).unwrap().expect("yes");
            assert_eq!(is_soet(cert.tour(), cert.subset()).unwrap().as_deref(), Some(cert.order()));
        }
    }

    #[test]
    fn search_budget_is_not_a_no() {
        let f = word_multigraph();
        let opts = SoetSearchOptions {
            budget: 1,
            adjacency_pruning: false,
        };
        assert!(matches!(
            soet_search(&f, &set(&["a", "b", "c", "d", "e"]), opts),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn search_matches_enumeration_on_small_graph() {
        let f = word_multigraph();
        let tours = enumerate_euler_tours(&f, 100_000).unwrap();
        let verts = f.vertices().to_vec();
        for mask in 1u32..(1 << verts.len()) {
            let subset: BTreeSet<VertexId> =
                verts.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| v.clone()).collect();
            let oracle = tours.iter().any(|t| is_soet(t, &subset).unwrap().is_some());
            for pruning in [false, true] {
                let opts = SoetSearchOptions {
                    adjacency_pruning: pruning,
                    ..Default::default()
                };
                assert_eq!(soet_search(&f, &subset, opts).unwrap().is_some(), oracle, "{subset:?}");
            }
        }
    }
}
