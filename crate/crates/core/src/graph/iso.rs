use std::collections::BTreeMap;

use super::label::VertexId;
use super::simple::{bit, SimpleGraph};

/// Finds an edge-preserving bijection `V(g) -> V(h)`.
///
/// Plain backtracking: vertices of `g` are assigned in label order and
/// candidate images are tried in label order, so the first bijection found
/// is the lexicographically least one. Degrees prune candidates.
pub fn find_isomorphism(g: &SimpleGraph, h: &SimpleGraph) -> Option<BTreeMap<VertexId, VertexId>> {
    let images = find_isomorphism_indices(g, h)?;
    Some(
        images
            .into_iter()
            .enumerate()
            .map(|(i, j)| (g.vertices()[i].clone(), h.vertices()[j].clone()))
            .collect(),
    )
}

pub(crate) fn find_isomorphism_indices(g: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    if g.len() != h.len() || g.edge_count() != h.edge_count() {
        return None;
    }
    let gd = g.degrees();
    let hd = h.degrees();
    let mut gs = gd.clone();
    let mut hs = hd.clone();
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return None;
    }
    let mut images = Vec::with_capacity(g.len());
    let mut used = 0u64;
    if extend(g, h, &gd, &hd, &mut images, &mut used) {
        Some(images)
    } else {
        None
    }
}

fn extend(g: &SimpleGraph, h: &SimpleGraph, gd: &[usize], hd: &[usize], images: &mut Vec<usize>, used: &mut u64) -> bool {
    let i = images.len();
    if i == g.len() {
        return true;
    }
    let ga = g.masks();
    let ha = h.masks();
    for j in 0..h.len() {
        if *used & bit(j) != 0 || gd[i] != hd[j] {
            continue;
        }
        let consistent = images
            .iter()
            .enumerate()
            .all(|(p, &q)| (ga[i] & bit(p) != 0) == (ha[j] & bit(q) != 0));
        if !consistent {
            continue;
        }
        images.push(j);
        *used |= bit(j);
        if extend(g, h, gd, hd, images, used) {
            return true;
        }
        images.pop();
        *used &= !bit(j);
    }
    false
}

/// True iff `map` is a bijection `V(g) -> V(h)` preserving adjacency and
/// non-adjacency.
pub fn is_isomorphism(g: &SimpleGraph, h: &SimpleGraph, map: &BTreeMap<VertexId, VertexId>) -> bool {
    if g.len() != h.len() || map.len() != g.len() {
        return false;
    }
    let mut images = Vec::with_capacity(g.len());
    let mut seen = 0u64;
    for v in g.vertices() {
        let Some(j) = map.get(v).and_then(|w| h.index_of(w)) else {
            return false;
        };
        if seen & bit(j) != 0 {
            return false;
        }
        seen |= bit(j);
        images.push(j);
    }
    let (ga, ha) = (g.masks(), h.masks());
    (0..g.len()).all(|i| (0..g.len()).all(|p| (ga[i] & bit(p) != 0) == (ha[images[i]] & bit(images[p]) != 0)))
}
