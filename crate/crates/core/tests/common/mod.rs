//! Brute-force oracles written independently of the library's algorithms.
//! They only use the public data types and the basic graph operations.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use vminor_core::dow::DoubleOccurrenceWord;
use vminor_core::graph::{MultiGraph, SimpleGraph, VertexId};
use vminor_core::lc::{delete_vertex, local_complement};

/// Alternances by the definition: pairs read `u…v…u…v` in some rotation or
/// mirror of the word.
pub fn alternances_by_definition(x: &DoubleOccurrenceWord) -> BTreeSet<(VertexId, VertexId)> {
    let w = x.letters();
    let n = w.len();
    let mut members = Vec::new();
    for r in 0..n {
        let rot: Vec<VertexId> = w[r..].iter().chain(&w[..r]).cloned().collect();
        let mut mir = rot.clone();
        mir.reverse();
        members.push(rot);
        members.push(mir);
    }
    let mut out = BTreeSet::new();
    let vs = x.vertex_set();
    for (i, u) in vs.iter().enumerate() {
        for v in &vs[i + 1..] {
            let pattern = [u, v, u, v];
            let hit = members.iter().any(|m| {
                let filtered: Vec<&VertexId> = m.iter().filter(|l| *l == u || *l == v).collect();
                filtered == pattern
            });
            if hit {
                out.insert((u.clone(), v.clone()));
            }
        }
    }
    out
}

/// Every labeled graph reachable from `g` by local complementations and
/// deletions.
pub fn closure_by_bfs(g: &SimpleGraph) -> BTreeSet<SimpleGraph> {
    let mut seen = BTreeSet::from([g.clone()]);
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(cur) = queue.pop_front() {
        for v in cur.vertices() {
            for next in [local_complement(&cur, v).unwrap(), delete_vertex(&cur, v).unwrap()] {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Isomorphism test by trying every bijection.
pub fn same_up_to_iso(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    if g.len() != h.len() || g.edge_count() != h.edge_count() {
        return false;
    }
    let n = g.len();
    let gv = g.vertices();
    let hv = h.vertices();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..n).all(|i| (i + 1..n).all(|j| g.has_edge(&gv[i], &gv[j]) == h.has_edge(&hv[perm[i]], &hv[perm[j]])));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All Eulerian circuits of `f` that start by traversing edge 0, in either
/// direction, as `(vertex indices, edge ids)`. Every circuit has such a
/// rotation, possibly reversed.
pub fn all_circuits(f: &MultiGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = f.edge_count();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let (a, b) = f.endpoints(0);
    let starts = if a == b { vec![(a, b)] } else { vec![(a, b), (b, a)] };
    for (s, t) in starts {
        let mut used = vec![false; m];
        used[0] = true;
        let mut vs = vec![s, t];
        let mut es = vec![0];
        extend(f, s, &mut used, &mut vs, &mut es, &mut out);
    }
    out
}

fn extend(
    f: &MultiGraph,
    start: usize,
    used: &mut [bool],
    vs: &mut Vec<usize>,
    es: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let cur = *vs.last().unwrap();
    if es.len() == used.len() {
        if cur == start {
            out.push((vs[..vs.len() - 1].to_vec(), es.clone()));
        }
        return;
    }
    for &e in f.incident(cur) {
        if used[e] {
            continue;
        }
        used[e] = true;
        es.push(e);
        vs.push(f.other(e, cur));
        extend(f, start, used, vs, es, out);
        vs.pop();
        es.pop();
        used[e] = false;
    }
}

/// Least rotation of the edge sequence or of its reverse, by trying all.
pub fn edge_key(es: &[usize]) -> Vec<usize> {
    let n = es.len();
    let mut rev = es.to_vec();
    rev.reverse();
    let mut best: Option<Vec<usize>> = None;
    for seq in [es.to_vec(), rev] {
        for r in 0..n {
            let cand: Vec<usize> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Is the cyclic word `vs` restricted to `inside` of the form `ss`?
pub fn doubled_on(vs: &[usize], inside: &[bool]) -> bool {
    let w: Vec<usize> = vs.iter().copied().filter(|&v| inside[v]).collect();
    let k = w.len() / 2;
    w.len().is_multiple_of(2) && (0..k).all(|i| w[i] == w[i + k])
}

/// Does some Eulerian circuit visit `subset` twice in the same order?
pub fn soet_exists(f: &MultiGraph, subset: &BTreeSet<VertexId>) -> bool {
    let mut inside = vec![false; f.len()];
    for v in subset {
        inside[f.index_of(v).unwrap()] = true;
    }
    all_circuits(f).iter().any(|(vs, _)| doubled_on(vs, &inside))
}

/// Hamiltonian cycle by trying every ordering that starts at vertex 0.
pub fn hamiltonian_by_permutations(g: &SimpleGraph) -> bool {
    let n = g.len();
    if n < 3 {
        return false;
    }
    let v = g.vertices();
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        let order: Vec<usize> = std::iter::once(0).chain(rest.iter().copied()).collect();
        if (0..n).all(|i| g.has_edge(&v[order[i]], &v[order[(i + 1) % n]])) {
            return true;
        }
        if !next_permutation(&mut rest) {
            return false;
        }
    }
}

/// All Hamiltonian cycles as vertex orders, every start and direction.
pub fn all_hamiltonian_orders(g: &SimpleGraph) -> Vec<Vec<VertexId>> {
    let n = g.len();
    let v = g.vertices();
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        if (0..n).all(|i| g.has_edge(&v[p[i]], &v[p[(i + 1) % n]])) {
            out.push(p.iter().map(|&i| v[i].clone()).collect());
        }
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// All `k`-subsets of `items` in lexicographic order of position.
pub fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, from: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i].clone());
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}
