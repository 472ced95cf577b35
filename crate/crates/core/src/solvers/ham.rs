use super::{Decision, SearchConfig, UnknownReport};
use crate::graph::{bit, iter_bits, SimpleGraph, VertexId};
use crate::reduction::{CubicGraph, HamCycle};

/// Least Hamiltonian cycle of `g`, starting at its least vertex, by
/// depth-first search trying neighbours in increasing order.
pub fn hamiltonian_cycle(g: &SimpleGraph, config: &SearchConfig) -> Decision<Vec<VertexId>> {
    match search(g, config.budget) {
        Ok(Some(order)) => Decision::Yes(order.into_iter().map(|i| g.vertices()[i].clone()).collect()),
        Ok(None) => Decision::No,
        Err(OutOfBudget) => Decision::Unknown(UnknownReport {
            budget: config.budget,
            reason: "node budget exhausted".into(),
        }),
    }
}

struct OutOfBudget;

fn search(g: &SimpleGraph, budget: u64) -> Result<Option<Vec<usize>>, OutOfBudget> {
    let n = g.len();
    if n < 3 {
        return Ok(None);
    }
    let adj = g.masks();
    let mut path = vec![0usize];
    let mut nodes = 0u64;
    fn go(adj: &[u64], path: &mut Vec<usize>, used: u64, nodes: &mut u64, budget: u64) -> Result<bool, OutOfBudget> {
        let n = adj.len();
        let last = *path.last().expect("non-empty path");
        if path.len() == n {
            return Ok(adj[last] & 1 != 0);
        }
        for w in iter_bits(adj[last] & !used) {
            *nodes += 1;
            if *nodes > budget {
                return Err(OutOfBudget);
            }
            // the start must keep a free neighbour to close the cycle
            let rest = used | bit(w);
            if path.len() + 1 < n && adj[0] & !rest == 0 {
                continue;
            }
            path.push(w);
            if go(adj, path, rest, nodes, budget)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
    Ok(go(adj, &mut path, 1, &mut nodes, budget)?.then_some(path))
}

/// Is the cubic graph `r` Hamiltonian? Returns the least cycle (from the
/// least vertex, lexicographically least vertex sequence) on YES.
pub fn hamiltonian_decide(r: &CubicGraph, config: &SearchConfig) -> Decision<HamCycle> {
    hamiltonian_cycle(r.graph(), config).map(|order| HamCycle::new(r, order).expect("search returns a valid cycle"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::labels;

    fn decide(g: SimpleGraph) -> Decision<HamCycle> {
        hamiltonian_decide(&CubicGraph::new(g).unwrap(), &SearchConfig::default())
    }

    #[test]
    fn small_cubic_graphs() {
        let k4 = decide(families::k4());
        assert_eq!(k4.witness().unwrap().order(), &labels(&["a", "b", "c", "d"])[..]);
        assert!(decide(families::k33()).is_yes());
        assert!(decide(families::prism()).is_yes());
        assert_eq!(decide(families::petersen()), Decision::No);
    }

    #[test]
    fn budget_gives_unknown() {
        let r = CubicGraph::new(families::petersen()).unwrap();
        assert!(matches!(
            hamiltonian_decide(&r, &SearchConfig::default().with_budget(3)),
            Decision::Unknown(_)
        ));
    }
}
