//! Labeled graph types shared by every other module.

mod iso;
mod label;
mod multi;
mod simple;

pub use iso::{find_isomorphism, is_isomorphism};
pub use label::{labels, vid, VertexId};
pub use multi::{EdgeId, MultiGraph};
pub use simple::{SimpleGraph, MAX_VERTICES};

pub(crate) use iso::find_isomorphism_indices;
pub(crate) use simple::{bit, iter_bits};

use std::collections::BTreeSet;

use crate::error::Result;

pub fn induced_subgraph(g: &SimpleGraph, subset: &BTreeSet<VertexId>) -> Result<SimpleGraph> {
    g.induced_subgraph(subset)
}

pub fn is_regular(f: &MultiGraph, d: usize) -> bool {
    f.is_regular(d)
}

pub fn connected_components(f: &MultiGraph) -> Vec<Vec<VertexId>> {
    f.connected_components()
}
