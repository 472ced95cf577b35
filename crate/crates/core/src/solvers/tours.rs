use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::runner::{run_chunks, Chunk, Evaluated};
use super::{Decision, SearchConfig, UnknownReport};
use crate::dow::alternance_masks;
use crate::enumerate::Combinations;
use crate::error::{Error, Result};
use crate::euler::{for_each_euler_tour, EulerianTour};
use crate::graph::{MultiGraph, SimpleGraph, VertexId};
use crate::soet::{soet_search_inside, Bounded, SoetCertificate, SoetSearchOptions};

/// Does `f` have a tour semi-ordered on some `k`-subset of its vertices?
///
/// Subsets are tried in lexicographic order of vertex indices; in
/// deterministic mode the certificate is the first found in that order.
pub fn iso_soet_decide(f: &Arc<MultiGraph>, k: usize, config: &SearchConfig) -> Result<Decision<SoetCertificate>> {
    f.require_four_regular()?;
    if k == 0 || k > f.len() {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={}", f.len())));
    }
    let decision = run_chunks(Combinations::new(f.len(), k), config, |subset, budget| {
        let mut inside = vec![false; f.len()];
        for &i in subset {
            inside[i] = true;
        }
        let options = SoetSearchOptions {
            budget,
            adjacency_pruning: true,
        };
        match soet_search_inside(f, &inside, options) {
            Ok((outcome, nodes)) => Evaluated {
                outcome: match outcome {
                    Bounded::Found(tour) => Chunk::Found((tour, subset.clone())),
                    Bounded::Exhausted => Chunk::Exhausted,
                    Bounded::OutOfBudget => Chunk::OutOfBudget,
                },
                nodes,
            },
            Err(e) => Evaluated {
                outcome: Chunk::Failed(e),
                nodes: 0,
            },
        }
    })?;
    match decision {
        Decision::Yes((tour, subset)) => {
            let subset: BTreeSet<VertexId> = subset.iter().map(|&i| f.label(i).clone()).collect();
            SoetCertificate::new(tour, subset)
                .map(Decision::Yes)
                .map_err(|e| Error::Soundness(format!("search produced an invalid certificate: {e}")))
        }
        Decision::No => Ok(Decision::No),
        Decision::Unknown(r) => Ok(Decision::Unknown(r)),
    }
}

/// Is `h` (with its labels) the alternance graph of the induced subword of
/// some tour of `f`? Enumerates tour classes, so this answers the labeled
/// vertex-minor question for the alternance graphs of `f` without any
/// local-complementation search.
pub fn vm_oracle_via_tours(f: &Arc<MultiGraph>, h: &SimpleGraph, limit: usize) -> Result<Decision<EulerianTour>> {
    f.require_four_regular()?;
    if let Some(v) = h.vertices().iter().find(|v| f.index_of(v).is_none()) {
        return Err(Error::Precondition(format!("target vertex {v} is not in the multigraph")));
    }
    // position of each multigraph vertex among the target's vertices
    let mut slot = vec![usize::MAX; f.len()];
    for (j, v) in h.vertices().iter().enumerate() {
        slot[f.index_of(v).expect("checked above")] = j;
    }
    let mut found = None;
    let res = for_each_euler_tour(f, limit, |tour| {
        let sub: Vec<usize> = tour.induced_indices().map(|v| slot[v]).filter(|&j| j != usize::MAX).collect();
        if alternance_masks(h.vertices(), &sub) == h.masks() {
            found = Some(tour.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match res {
        Ok(_) => Ok(found.map_or(Decision::No, Decision::Yes)),
        Err(Error::ResourceLimit { count, .. }) => Ok(Decision::Unknown(UnknownReport {
            budget: limit as u64,
            reason: format!("more than {count} tour classes"),
        })),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dow::{multigraph_from_word, DoubleOccurrenceWord};
    use crate::families;
    use crate::graph::labels;
    use crate::soet::is_soet;

    fn word_multigraph() -> Arc<MultiGraph> {
        Arc::new(multigraph_from_word(&DoubleOccurrenceWord::from_compact("adcbaebced").unwrap()).unwrap())
    }

    #[test]
    fn iso_soet_on_worked_example() {
        let f = word_multigraph();
        let cfg = SearchConfig::default();
        for k in 1..=4 {
            let d = iso_soet_decide(&f, k, &cfg).unwrap();
            let cert = d.witness().expect("yes");
            assert_eq!(cert.subset().len(), k);
            assert!(is_soet(cert.tour(), cert.subset()).unwrap().is_some());
        }
        assert!(iso_soet_decide(&f, 0, &cfg).is_err());
        assert!(iso_soet_decide(&f, 6, &cfg).is_err());
    }

    #[test]
    fn tour_oracle_examples() {
        let f = word_multigraph();
        let k4 = families::complete(&labels(&["a", "b", "c", "d"]));
        assert!(vm_oracle_via_tours(&f, &k4, 100_000).unwrap().is_yes());
        let bad = families::complete(&labels(&["a", "z"]));
        assert!(vm_oracle_via_tours(&f, &bad, 100_000).is_err());
        assert!(matches!(vm_oracle_via_tours(&f, &k4, 1).unwrap(), Decision::Unknown(_) | Decision::Yes(_)));
    }
}
