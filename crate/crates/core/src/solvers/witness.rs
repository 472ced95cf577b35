//! Vertex-minor certificates and their replay check.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{is_isomorphism, SimpleGraph, VertexId};
use crate::lc::{delete_vertex, local_complement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VmOp {
    Lc(VertexId),
    Delete(VertexId),
}

impl fmt::Display for VmOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VmOp::Lc(v) => write!(f, "LC {v}"),
            VmOp::Delete(v) => write!(f, "DEL {v}"),
        }
    }
}

/// Operations taking `G` to a graph isomorphic to `H`, and the isomorphism
/// from the surviving vertices onto `V(H)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VmWitness {
    pub ops: Vec<VmOp>,
    pub iso: BTreeMap<VertexId, VertexId>,
}

impl VmWitness {
    /// Applies the operations to `g`; fails at the first step naming an
    /// absent vertex.
    pub fn replay(&self, g: &SimpleGraph) -> Result<SimpleGraph> {
        let mut cur = g.clone();
        for (step, op) in self.ops.iter().enumerate() {
            let res = match op {
                VmOp::Lc(v) => local_complement(&cur, v),
                VmOp::Delete(v) => delete_vertex(&cur, v),
            };
            cur = res.map_err(|e| Error::Validation {
                step,
                message: format!("{op}: {e}"),
            })?;
        }
        Ok(cur)
    }
}

/// Replays the witness on `g` and checks its map is an isomorphism onto `h`.
///
/// Returns `Ok(false)` for a well-formed witness whose final graph or map
/// does not match, and a validation error naming the step for an operation
/// on an absent vertex.
pub fn verify_vm_witness(g: &SimpleGraph, h: &SimpleGraph, w: &VmWitness) -> Result<bool> {
    let end = w.replay(g)?;
    Ok(is_isomorphism(&end, h, &w.iso))
}
