//! Double-occurrence words, their equivalence classes, alternance (circle)
//! graphs, and the word-level images of local complementation and deletion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bit, MultiGraph, SimpleGraph, VertexId};

/// A word in which every letter occurs exactly twice. The empty word is
/// valid and has an empty alternance graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleOccurrenceWord {
    letters: Vec<VertexId>,
}

impl DoubleOccurrenceWord {
    pub fn new(letters: Vec<VertexId>) -> Result<Self> {
        let mut counts: BTreeMap<&VertexId, usize> = BTreeMap::new();
        for l in &letters {
            *counts.entry(l).or_default() += 1;
        }
        if let Some((l, &c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::MalformedWord {
                letter: l.to_string(),
                count: c,
            });
        }
        Ok(DoubleOccurrenceWord { letters })
    }

    /// Whitespace-separated labels, e.g. `"a d c b a e b c e d"`.
    pub fn parse(text: &str) -> Result<Self> {
        let letters = text.split_whitespace().map(VertexId::new).collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    /// One letter per character, e.g. `"adcbaebced"`.
    pub fn from_compact(text: &str) -> Result<Self> {
        let letters = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| VertexId::new(c.encode_utf8(&mut [0; 4])))
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    pub(crate) fn from_trusted(letters: Vec<VertexId>) -> Self {
        debug_assert!(Self::new(letters.clone()).is_ok());
        DoubleOccurrenceWord { letters }
    }

    pub fn letters(&self) -> &[VertexId] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `V(X)`, sorted.
    pub fn vertex_set(&self) -> Vec<VertexId> {
        self.letters.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.letters.contains(v)
    }

    /// Positions of the two occurrences of `v`, in increasing order.
    pub fn positions(&self, v: &VertexId) -> Option<(usize, usize)> {
        let mut it = self.letters.iter().enumerate().filter(|(_, l)| *l == v).map(|(i, _)| i);
        Some((it.next()?, it.next()?))
    }

    fn require(&self, v: &VertexId) -> Result<(usize, usize)> {
        self.positions(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// The mirror word (letters reversed).
    pub fn mirror(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        DoubleOccurrenceWord { letters }
    }

    pub fn rotate_left(&self, by: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(by % n);
        }
        DoubleOccurrenceWord { letters }
    }

    /// Every member of the equivalence class: all rotations of the word and
    /// of its mirror (with repeats when the word has symmetries).
    pub fn class_members(&self) -> Vec<Self> {
        let n = self.letters.len().max(1);
        let m = self.mirror();
        (0..n).flat_map(|i| [self.rotate_left(i), m.rotate_left(i)]).collect()
    }
}

impl fmt::Display for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dow({self})")
    }
}

/// Index of the lexicographically least rotation of `s` (Booth's
/// algorithm, linear time).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && *sj != s[k % n] {
            if *sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// Least representative of an equivalence class of words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DowClass {
    canonical: DoubleOccurrenceWord,
}

impl DowClass {
    pub fn canonical(&self) -> &DoubleOccurrenceWord {
        &self.canonical
    }
}

/// Least word among all rotations of `x` and of its mirror.
pub fn canonicalize(x: &DoubleOccurrenceWord) -> DowClass {
    let m = x.mirror();
    let a = x.rotate_left(least_rotation(&x.letters));
    let b = m.rotate_left(least_rotation(&m.letters));
    DowClass {
        canonical: if b.letters < a.letters { b } else { a },
    }
}

/// Unordered alternance pairs `(u, v)` with `u < v`.
///
/// `u` and `v` alternate iff exactly one occurrence of `v` lies strictly
/// between the two occurrences of `u`.
pub fn alternances(x: &DoubleOccurrenceWord) -> BTreeSet<(VertexId, VertexId)> {
    let mut pos: BTreeMap<&VertexId, Vec<usize>> = BTreeMap::new();
    for (i, l) in x.letters.iter().enumerate() {
        pos.entry(l).or_default().push(i);
    }
    let entries: Vec<(&VertexId, (usize, usize))> = pos.into_iter().map(|(l, p)| (l, (p[0], p[1]))).collect();
    let mut out = BTreeSet::new();
    for (a, &(u, (u1, u2))) in entries.iter().enumerate() {
        for &(v, (v1, v2)) in &entries[a + 1..] {
            let inside = |p: usize| u1 < p && p < u2;
            if inside(v1) != inside(v2) {
                out.insert(((*u).clone(), v.clone()));
            }
        }
    }
    out
}

/// `A(X)`: vertices `V(X)`, edges the alternances of `X`.
pub fn alternance_graph(x: &DoubleOccurrenceWord) -> SimpleGraph {
    SimpleGraph::new(x.vertex_set(), alternances(x)).expect("alternance pairs are valid edges")
}

/// Alternance graph computed straight from positions, no label lookups.
pub(crate) fn alternance_masks(labels: &[VertexId], word: &[usize]) -> Vec<u64> {
    let n = labels.len();
    let mut first = vec![usize::MAX; n];
    let mut second = vec![usize::MAX; n];
    for (p, &l) in word.iter().enumerate() {
        if first[l] == usize::MAX {
            first[l] = p;
        } else {
            second[l] = p;
        }
    }
    let mut adj = vec![0u64; n];
    for u in 0..n {
        let (a, b) = (first[u], second[u]);
        if a == usize::MAX {
            continue;
        }
        // letters strictly between the occurrences of u, counted mod 2
        let mut odd = 0u64;
        for &l in &word[a + 1..b] {
            odd ^= bit(l);
        }
        adj[u] = odd;
    }
    adj
}

/// `AvBvC -> Av(B mirrored)vC`; the graph image is `τ_v(A(X))`.
pub fn word_local_complement(x: &DoubleOccurrenceWord, v: &VertexId) -> Result<DoubleOccurrenceWord> {
    let (p, q) = x.require(v)?;
    let mut letters = x.letters.clone();
    letters[p + 1..q].reverse();
    Ok(DoubleOccurrenceWord { letters })
}

/// `(AvBvC) \ v = ABC`.
pub fn word_delete(x: &DoubleOccurrenceWord, v: &VertexId) -> Result<DoubleOccurrenceWord> {
    x.require(v)?;
    Ok(DoubleOccurrenceWord {
        letters: x.letters.iter().filter(|l| *l != v).cloned().collect(),
    })
}

/// `X[W] = X \ (V(X) \ W)`.
pub fn induced_subword<'a, W>(x: &DoubleOccurrenceWord, subset: W) -> Result<DoubleOccurrenceWord>
where
    W: IntoIterator<Item = &'a VertexId>,
{
    let keep: BTreeSet<&VertexId> = subset.into_iter().collect();
    if let Some(v) = keep.iter().find(|v| !x.contains(v)) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    Ok(DoubleOccurrenceWord {
        letters: x.letters.iter().filter(|l| keep.contains(l)).cloned().collect(),
    })
}

/// The 4-regular multigraph with one edge per cyclically consecutive pair
/// of letters; edge `i` joins letters `i` and `i + 1`.
pub fn multigraph_from_word(x: &DoubleOccurrenceWord) -> Result<MultiGraph> {
    if x.is_empty() {
        return Err(Error::Precondition("multigraph_from_word needs a nonempty word".into()));
    }
    let n = x.letters.len();
    let edges = (0..n).map(|i| (x.letters[i].clone(), x.letters[(i + 1) % n].clone()));
    MultiGraph::new(x.vertex_set(), edges)
}
