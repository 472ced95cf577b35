//! Exhaustive generators for small instances: subsets, words, multigraphs
//! and simple graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::dow::{canonicalize, DoubleOccurrenceWord};
use crate::graph::{bit, MultiGraph, SimpleGraph, VertexId};

/// Single-letter labels `a, b, c, …` (then `A..Z`) for generated instances.
pub fn letters(n: usize) -> Vec<VertexId> {
    const ALPHABET: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    assert!(n <= ALPHABET.len(), "at most {} generated labels", ALPHABET.len());
    ALPHABET[..n].chars().map(|c| VertexId::new(&c.to_string()).expect("letter label")).collect()
}

/// `k`-subsets of `0..n` as sorted index vectors, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

pub(crate) fn index_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | bit(i))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Every double-occurrence word over the first `n` letters.
pub fn all_words(n: usize) -> Vec<DoubleOccurrenceWord> {
    let names = letters(n);
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * n);
    let mut count = vec![0u8; n];
    fn go(
        names: &[VertexId],
        word: &mut Vec<usize>,
        count: &mut [u8],
        out: &mut Vec<DoubleOccurrenceWord>,
    ) {
        if word.len() == 2 * names.len() {
            let letters = word.iter().map(|&i| names[i].clone()).collect();
            out.push(DoubleOccurrenceWord::new(letters).expect("two of each"));
            return;
        }
        for i in 0..names.len() {
            if count[i] < 2 {
                count[i] += 1;
                word.push(i);
                go(names, word, count, out);
                word.pop();
                count[i] -= 1;
            }
        }
    }
    go(&names, &mut word, &mut count, &mut out);
    out
}

/// One representative (the canonical word) per rotation/mirror class of
/// [`all_words`].
pub fn word_classes(n: usize) -> Vec<DoubleOccurrenceWord> {
    let set: BTreeSet<DoubleOccurrenceWord> =
        all_words(n).iter().map(|w| canonicalize(w).canonical().clone()).collect();
    set.into_iter().collect()
}

/// Least multiplicity vector over all relabellings; equal exactly for
/// isomorphic multigraphs.
fn multiplicity_canonical(m: &[Vec<u8>], perms: &[Vec<usize>]) -> Vec<u8> {
    let n = m.len();
    perms
        .iter()
        .map(|p| {
            let mut key = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    key.push(m[p[i]][p[j]]);
                }
            }
            key
        })
        .min()
        .unwrap_or_default()
}

/// Connected 4-regular multigraphs on exactly `n` vertices (loops and
/// parallel edges allowed), one per isomorphism class, labelled `a, b, …`
/// with edges listed by endpoint pair.
pub fn four_regular_multigraphs(n: usize) -> Vec<MultiGraph> {
    if n == 0 {
        return Vec::new();
    }
    let perms = permutations(n);
    let mut classes: BTreeMap<Vec<u8>, Vec<Vec<u8>>> = BTreeMap::new();
    let mut m = vec![vec![0u8; n]; n];
    let mut rem = vec![4u8; n];
    fill(0, 0, &mut m, &mut rem, &mut |m| {
        if multiplicity_connected(m) {
            classes.entry(multiplicity_canonical(m, &perms)).or_insert_with(|| m.to_vec());
        }
    });
    let names = letters(n);
    classes
        .into_values()
        .map(|m| {
            let mut ends = Vec::new();
            // loops count twice towards the degree and once in the matrix
            for (i, row) in m.iter().enumerate() {
                for (j, &count) in row.iter().enumerate().skip(i) {
                    ends.extend(std::iter::repeat_n((i, j), count as usize));
                }
            }
            MultiGraph::from_index_edges(names.clone(), ends)
        })
        .collect()
}

/// All connected 4-regular multigraphs on 1..=`max_n` vertices.
pub fn four_regular_corpus(max_n: usize) -> Vec<MultiGraph> {
    (1..=max_n).flat_map(four_regular_multigraphs).collect()
}

fn fill(i: usize, j: usize, m: &mut Vec<Vec<u8>>, rem: &mut Vec<u8>, emit: &mut dyn FnMut(&[Vec<u8>])) {
    let n = m.len();
    if i == n {
        emit(m);
        return;
    }
    if j == n {
        if rem[i] == 0 {
            fill(i + 1, i + 1, m, rem, emit);
        }
        return;
    }
    if i == j {
        for loops in 0..=rem[i] / 2 {
            m[i][i] = loops;
            rem[i] -= 2 * loops;
            fill(i, j + 1, m, rem, emit);
            rem[i] += 2 * loops;
        }
        m[i][i] = 0;
    } else {
        for c in 0..=rem[i].min(rem[j]) {
            m[i][j] = c;
            m[j][i] = c;
            rem[i] -= c;
            rem[j] -= c;
            fill(i, j + 1, m, rem, emit);
            rem[i] += c;
            rem[j] += c;
        }
        m[i][j] = 0;
        m[j][i] = 0;
    }
}

fn multiplicity_connected(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if m[v][w] > 0 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every simple graph on the given vertex set (`2^(n choose 2)` of them).
pub fn all_labeled_graphs(vertices: &[VertexId]) -> Vec<SimpleGraph> {
    let n = vertices.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut sorted = vertices.to_vec();
    sorted.sort();
    (0u64..1 << pairs.len())
        .map(|sel| {
            let mut adj = vec![0u64; n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if sel & (1 << b) != 0 {
                    adj[i] |= bit(j);
                    adj[j] |= bit(i);
                }
            }
            SimpleGraph::from_masks(sorted.clone(), adj)
        })
        .collect()
}

fn adjacency_canonical(adj: &[u64], perms: &[Vec<usize>]) -> u64 {
    let n = adj.len();
    perms
        .iter()
        .map(|p| {
            let mut key = 0u64;
            let mut b = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if adj[p[i]] & bit(p[j]) != 0 {
                        key |= 1 << b;
                    }
                    b += 1;
                }
            }
            key
        })
        .min()
        .unwrap_or(0)
}

/// One simple graph per isomorphism class on `n` vertices labelled `a, b, …`.
pub fn graph_classes(n: usize) -> Vec<SimpleGraph> {
    let perms = permutations(n);
    let mut seen = BTreeMap::new();
    for g in all_labeled_graphs(&letters(n)) {
        seen.entry(adjacency_canonical(g.masks(), &perms)).or_insert(g);
    }
    seen.into_values().collect()
}

/// Connected cubic simple graphs on `n` vertices, one per isomorphism class.
pub fn cubic_graphs(n: usize) -> Vec<SimpleGraph> {
    graph_classes(n)
        .into_iter()
        .filter(|g| g.degrees().iter().all(|&d| d == 3) && g.is_connected())
        .collect()
}
