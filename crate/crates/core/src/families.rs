//! Small named graphs used as fixtures and instance sources.

use crate::graph::{labels, vid, SimpleGraph, VertexId};

pub fn complete(vertices: &[VertexId]) -> SimpleGraph {
    let mut edges = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        for v in &vertices[i + 1..] {
            edges.push((u.clone(), v.clone()));
        }
    }
    SimpleGraph::new(vertices.to_vec(), edges).expect("complete graph on valid labels")
}

pub fn star(center: &VertexId, leaves: &[VertexId]) -> SimpleGraph {
    let edges = leaves.iter().map(|l| (center.clone(), l.clone()));
    let vertices = std::iter::once(center.clone()).chain(leaves.iter().cloned());
    SimpleGraph::new(vertices, edges).expect("star on valid labels")
}

pub fn path(vertices: &[VertexId]) -> SimpleGraph {
    let edges = vertices.windows(2).map(|w| (w[0].clone(), w[1].clone()));
    SimpleGraph::new(vertices.to_vec(), edges).expect("path on valid labels")
}

pub fn cycle(vertices: &[VertexId]) -> SimpleGraph {
    let n = vertices.len();
    let edges = (0..n).map(|i| (vertices[i].clone(), vertices[(i + 1) % n].clone()));
    SimpleGraph::new(vertices.to_vec(), edges).expect("cycle on valid labels")
}

/// Star on `k` labels `s0..s{k-1}` (center `s0`), with the prefix lengthened
/// by underscores until no label collides with `avoid`.
pub fn fresh_star(k: usize, avoid: &SimpleGraph) -> SimpleGraph {
    let mut prefix = String::from("s");
    loop {
        let names: Vec<VertexId> = (0..k).map(|i| vid(&format!("{prefix}{i}"))).collect();
        if names.iter().all(|v| !avoid.contains(v)) {
            return match names.split_first() {
                Some((c, rest)) => star(c, rest),
                None => SimpleGraph::empty([]).expect("empty graph"),
            };
        }
        prefix.push('_');
    }
}

/// `K4` on `a, b, c, d`.
pub fn k4() -> SimpleGraph {
    complete(&labels(&["a", "b", "c", "d"]))
}

/// `K3,3` with sides `{a, b, c}` and `{d, e, f}`.
pub fn k33() -> SimpleGraph {
    let mut edges = Vec::new();
    for u in ["a", "b", "c"] {
        for v in ["d", "e", "f"] {
            edges.push((u, v));
        }
    }
    SimpleGraph::from_edges(&edges).expect("K3,3")
}

/// Triangular prism: triangles `abc`, `def` and rungs `ad`, `be`, `cf`.
pub fn prism() -> SimpleGraph {
    SimpleGraph::from_edges(&[
        ("a", "b"),
        ("b", "c"),
        ("a", "c"),
        ("d", "e"),
        ("e", "f"),
        ("d", "f"),
        ("a", "d"),
        ("b", "e"),
        ("c", "f"),
    ])
    .expect("prism")
}

/// Petersen graph: outer cycle `abcde`, spokes to `fghij`, inner pentagram.
pub fn petersen() -> SimpleGraph {
    SimpleGraph::from_edges(&[
        ("a", "b"),
        ("b", "c"),
        ("c", "d"),
        ("d", "e"),
        ("e", "a"),
        ("a", "f"),
        ("b", "g"),
        ("c", "h"),
        ("d", "i"),
        ("e", "j"),
        ("f", "h"),
        ("h", "j"),
        ("j", "g"),
        ("g", "i"),
        ("i", "f"),
    ])
    .expect("petersen")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_families_are_cubic() {
        for g in [k4(), k33(), prism(), petersen()] {
            assert!(g.degrees().iter().all(|&d| d == 3), "{g:?}");
            assert!(g.is_connected());
        }
        assert_eq!(petersen().edge_count(), 15);
    }

    #[test]
    fn fresh_star_avoids_existing_labels() {
        let g = SimpleGraph::empty(labels(&["s0", "x"])).unwrap();
        let s = fresh_star(3, &g);
        assert_eq!(s.vertices(), &labels(&["s_0", "s_1", "s_2"])[..]);
        assert_eq!(s.degree(&vid("s_0")).unwrap(), 2);
    }
}
