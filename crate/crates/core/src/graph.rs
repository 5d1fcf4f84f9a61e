//! Simple undirected graphs over `0..n` with bitset adjacency.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

const WORD: usize = 64;

/// A subset of `0..capacity`, stored as a packed bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(WORD)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(capacity: usize, iter: I) -> Self {
        let mut s = Self::new(capacity);
        for v in iter {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.capacity, "vertex {v} out of range 0..{}", self.capacity);
        let (w, b) = (v / WORD, v % WORD);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![VertexSet::new(n); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].insert(v) {
                adj[v].insert(u);
                edge_count += 1;
            }
        }
        Ok(Graph { adj, edge_count })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
            edge_count: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges).expect("complement of a simple graph is simple")
    }

    /// Subgraph induced by `s`. The returned map sends new vertex `i` to the
    /// original vertex `map[i]`; vertices keep their relative order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().filter(|&v| v < self.n()).collect();
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(map.len(), edges).expect("induced subgraph is simple");
        (g, map)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        Graph::new(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation preserves simplicity")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let k = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + k, v + k)));
        Graph::new(k + other.n(), edges).expect("disjoint union is simple")
    }

    pub fn is_clique<'a, I: IntoIterator<Item = &'a usize>>(&self, vs: I) -> bool {
        let vs: Vec<usize> = vs.into_iter().copied().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// First edge inside `s`, if any.
    pub fn edge_within(&self, s: &VertexSet) -> Option<(usize, usize)> {
        s.iter().find_map(|u| {
            self.adj[u]
                .intersection(s)
                .iter()
                .find(|&v| v > u)
                .map(|v| (u, v))
        })
    }

    pub fn is_stable(&self, s: &VertexSet) -> bool {
        self.edge_within(s).is_none()
    }

    /// First edge with one end in `s` and the other in `t`.
    pub fn edge_between(&self, s: &VertexSet, t: &VertexSet) -> Option<(usize, usize)> {
        s.iter().find_map(|u| self.adj[u].intersection(t).first().map(|v| (u, v)))
    }

    /// First missing pair between `s` and `t` (distinct vertices only).
    pub fn non_edge_between(&self, s: &VertexSet, t: &VertexSet) -> Option<(usize, usize)> {
        s.iter()
            .find_map(|u| t.iter().find(|&v| v != u && !self.has_edge(u, v)).map(|v| (u, v)))
    }

    pub fn set(&self, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(self.n(), vs.iter().copied())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// JSON interchange form: `{"n": int, "edges": [[u, v], ...]}`, 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(deserializer)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// A vertex partition into color classes. Classes may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {0} is outside the graph")]
    OutOfRange(usize),
    #[error("vertex {0} appears in more than one class")]
    Repeated(usize),
    #[error("vertex {0} is not colored")]
    Uncovered(usize),
}

impl Coloring {
    pub fn new(classes: Vec<Vec<usize>>) -> Self {
        Coloring { classes }
    }

    /// Builds classes from a color-per-vertex vector.
    pub fn from_colors(colors: &[usize]) -> Self {
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in colors.iter().enumerate() {
            classes[c].push(v);
        }
        Coloring { classes }
    }

    /// Number of nonempty classes.
    pub fn colors_used(&self) -> usize {
        self.classes.iter().filter(|c| !c.is_empty()).count()
    }

    /// Color index per vertex, checking that the classes partition `0..n`.
    pub fn colors(&self, n: usize) -> Result<Vec<usize>, PartitionError> {
        let mut color = vec![usize::MAX; n];
        for (c, class) in self.classes.iter().enumerate() {
            for &v in class {
                if v >= n {
                    return Err(PartitionError::OutOfRange(v));
                }
                if color[v] != usize::MAX {
                    return Err(PartitionError::Repeated(v));
                }
                color[v] = c;
            }
        }
        match color.iter().position(|&c| c == usize::MAX) {
            Some(v) => Err(PartitionError::Uncovered(v)),
            None => Ok(color),
        }
    }

    /// Drops empty classes, keeping the order of the rest.
    pub fn compact(&self) -> Coloring {
        Coloring {
            classes: self.classes.iter().filter(|c| !c.is_empty()).cloned().collect(),
        }
    }
}

/// Outcome of [`is_proper_coloring`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringCheck {
    Proper,
    /// An edge whose endpoints share a class.
    Monochromatic(usize, usize),
}

impl ColoringCheck {
    pub fn is_proper(self) -> bool {
        self == ColoringCheck::Proper
    }
}

/// Checks every edge by a direct double loop over vertex pairs.
pub fn is_proper_coloring(g: &Graph, c: &Coloring) -> Result<ColoringCheck, PartitionError> {
    let color = c.colors(g.n())?;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) && color[u] == color[v] {
                return Ok(ColoringCheck::Monochromatic(u, v));
            }
        }
    }
    Ok(ColoringCheck::Proper)
}
