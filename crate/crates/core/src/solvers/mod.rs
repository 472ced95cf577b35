//! Exact deciders for the vertex-minor, star vertex-minor, semi-ordered tour
//! and Hamiltonicity problems, plus the witness verifier and brute-force
//! oracles used to cross-check them.

mod elimination;
mod ham;
mod runner;
mod tours;
mod witness;

use std::fmt;

pub use elimination::{iso_vm_decide, labeled_vm_decide, star_vm_decide, vertex_minor_closure, StarVmCertificate};
pub use ham::{hamiltonian_cycle, hamiltonian_decide};
pub use tours::{iso_soet_decide, vm_oracle_via_tours};
pub use witness::{verify_vm_witness, VmOp, VmWitness};

use crate::lc::DEFAULT_NODE_CAP;

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Outcome of a bounded exact search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    Yes(W),
    No,
    /// A budget or cap was reached before the search could finish.
    Unknown(UnknownReport),
}

impl<W> Decision<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Decision<V> {
        match self {
            Decision::Yes(w) => Decision::Yes(f(w)),
            Decision::No => Decision::No,
            Decision::Unknown(r) => Decision::Unknown(r),
        }
    }

    /// `"YES"`, `"NO"` or `"UNKNOWN"`.
    pub fn label(&self) -> &'static str {
        match self {
            Decision::Yes(_) => "YES",
            Decision::No => "NO",
            Decision::Unknown(_) => "UNKNOWN",
        }
    }
}

/// Why a search stopped without an answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownReport {
    pub budget: u64,
    pub reason: String,
}

impl fmt::Display for UnknownReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (budget {})", self.reason, self.budget)
    }
}

/// Budget and parallelism settings shared by the deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Search nodes allowed across the whole call.
    pub budget: u64,
    /// Cap on the size of any LC orbit explored during acceptance checks.
    pub node_cap: usize,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub workers: usize,
    /// Return the least witness in search order and make the outcome
    /// independent of the worker count. When off, any witness found first
    /// is returned.
    pub deterministic: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            node_cap: DEFAULT_NODE_CAP,
            workers: 1,
            deterministic: true,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}
