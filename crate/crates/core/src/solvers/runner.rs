//! Runs a sequence of independent search chunks under one node budget.
//!
//! Chunks are evaluated in order (sequentially or in parallel batches) and
//! their results are folded in order, so in deterministic mode the outcome
//! is the one a single thread would produce regardless of worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{Decision, SearchConfig, UnknownReport};
use crate::error::{Error, Result};

/// Result of searching one chunk with a given budget.
pub(crate) enum Chunk<T> {
    Found(T),
    Exhausted,
    /// Ran past the budget it was given.
    OutOfBudget,
    /// Some cap other than the node budget was hit.
    Capped(String),
    Failed(Error),
}

/// A chunk result and the nodes spent producing it. For `Found` and
/// `Exhausted` the count must not depend on the budget given.
pub(crate) struct Evaluated<T> {
    pub outcome: Chunk<T>,
    pub nodes: u64,
}

const BATCH_PER_WORKER: usize = 32;

pub(crate) fn run_chunks<C, T, I, F>(chunks: I, config: &SearchConfig, eval: F) -> Result<Decision<T>>
where
    I: IntoIterator<Item = C>,
    C: Send + Sync,
    T: Send,
    F: Fn(&C, u64) -> Evaluated<T> + Sync,
{
    let unknown = |reason: String| {
        Ok(Decision::Unknown(UnknownReport {
            budget: config.budget,
            reason,
        }))
    };
    let budget_reason = || "node budget exhausted".to_string();
    let mut spent = 0u64;
    if config.workers <= 1 {
        for c in chunks {
            let r = eval(&c, config.budget - spent);
            match r.outcome {
                Chunk::Found(t) => return Ok(Decision::Yes(t)),
                Chunk::Exhausted => spent += r.nodes,
                Chunk::OutOfBudget => return unknown(budget_reason()),
                Chunk::Capped(why) => return unknown(why),
                Chunk::Failed(e) => return Err(e),
            }
        }
        return Ok(Decision::No);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let mut iter = chunks.into_iter();
    let batch_size = config.workers * BATCH_PER_WORKER;
    loop {
        let batch: Vec<C> = iter.by_ref().take(batch_size).collect();
        if batch.is_empty() {
            return Ok(Decision::No);
        }
        let remaining = config.budget - spent;
        // chunks after the first success cannot change the folded result
        let first_found = AtomicUsize::new(usize::MAX);
        let results: Vec<Option<Evaluated<T>>> = pool.install(|| {
            batch
                .par_iter()
                .enumerate()
                .map(|(i, c)| {
                    let cutoff = first_found.load(Ordering::Relaxed);
                    if i > cutoff || (!config.deterministic && cutoff != usize::MAX) {
                        return None;
                    }
                    let r = eval(c, remaining);
                    if matches!(r.outcome, Chunk::Found(_)) {
                        first_found.fetch_min(i, Ordering::Relaxed);
                    }
                    Some(r)
                })
                .collect()
        });
        let is_found = |r: &Evaluated<T>| matches!(r.outcome, Chunk::Found(_));
        if !config.deterministic && results.iter().flatten().any(is_found) {
            let t = results.into_iter().flatten().find_map(|r| match r.outcome {
                Chunk::Found(t) => Some(t),
                _ => None,
            });
            return Ok(Decision::Yes(t.expect("a chunk succeeded")));
        }
        let mut used = 0u64;
        for r in results {
            let Some(r) = r else {
                // skipped chunks only follow a success, which returns first
                unreachable!("skipped chunk before any success");
            };
            match r.outcome {
                Chunk::Found(t) => {
                    return if used + r.nodes <= remaining {
                        Ok(Decision::Yes(t))
                    } else {
                        unknown(budget_reason())
                    };
                }
                Chunk::Exhausted => {
                    used += r.nodes;
                    if used > remaining {
                        return unknown(budget_reason());
                    }
                }
                Chunk::OutOfBudget => return unknown(budget_reason()),
                Chunk::Capped(why) => return unknown(why),
                Chunk::Failed(e) => return Err(e),
            }
        }
        spent += used;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Chunk `i` costs `i + 1` nodes and succeeds when `i` is in `hits`.
    fn eval(hits: &'static [usize]) -> impl Fn(&usize, u64) -> Evaluated<usize> + Sync {
        move |&i, budget| {
            let cost = i as u64 + 1;
            if cost > budget {
                return Evaluated {
                    outcome: Chunk::OutOfBudget,
                    nodes: budget + 1,
                };
            }
            Evaluated {
                outcome: if hits.contains(&i) { Chunk::Found(i) } else { Chunk::Exhausted },
                nodes: cost,
            }
        }
    }

    fn run(n: usize, hits: &'static [usize], budget: u64, workers: usize) -> Decision<usize> {
        let config = SearchConfig::default().with_budget(budget).with_workers(workers);
        run_chunks(0..n, &config, eval(hits)).unwrap()
    }

    #[test]
    fn outcome_is_independent_of_workers() {
        let cases: &[(usize, &'static [usize], u64)] = &[
            (100, &[], 10_000),
            (100, &[], 100),
            (500, &[37, 300], 1_000_000),
            (500, &[300], 1_000),
            (500, &[450], 5_000),
            (3, &[2], 6),
            (3, &[2], 5),
        ];
        for &(n, hits, budget) in cases {
            let seq = run(n, hits, budget, 1);
            for workers in [2, 3, 8] {
                assert_eq!(run(n, hits, budget, workers), seq, "n={n} hits={hits:?} budget={budget}");
            }
        }
        assert_eq!(run(500, &[37, 300], 1_000_000, 1), Decision::Yes(37));
        assert!(matches!(run(3, &[2], 5, 1), Decision::Unknown(_)));
        assert_eq!(run(3, &[2], 6, 1), Decision::Yes(2));
    }

    #[test]
    fn fast_mode_finds_something() {
        let config = SearchConfig {
            deterministic: false,
            ..SearchConfig::default().with_workers(4)
        };
        let d = run_chunks(0..500, &config, eval(&[37, 300])).unwrap();
        assert!(matches!(d, Decision::Yes(37) | Decision::Yes(300)));
    }
}
