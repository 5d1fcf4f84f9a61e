//! Induced-subgraph search, class membership, and induced C5/C7 enumeration.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub const MAX_PATTERN_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern has {0} vertices; at most {MAX_PATTERN_ORDER} are supported")]
    TooLarge(usize),
    #[error("pattern family parameter {0} is out of range")]
    BadParameter(usize),
}

/// A small named graph to search for as an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    graph: Graph,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Self, PatternError> {
        if graph.n() > MAX_PATTERN_ORDER {
            return Err(PatternError::TooLarge(graph.n()));
        }
        Ok(Pattern {
            name: name.into(),
            graph,
        })
    }

    /// `0-1` and the path `2-3-4-5`.
    pub fn p2_plus_p4() -> Self {
        let g = Graph::new(6, [(0, 1), (2, 3), (3, 4), (4, 5)]).unwrap();
        Pattern::new("P2+P4", g).unwrap()
    }

    /// K4 minus the edge `2-3`.
    pub fn diamond() -> Self {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        Pattern::new("K4-e", g).unwrap()
    }

    pub fn path(t: usize) -> Result<Self, PatternError> {
        if t == 0 {
            return Err(PatternError::BadParameter(t));
        }
        if t > MAX_PATTERN_ORDER {
            return Err(PatternError::TooLarge(t));
        }
        let g = Graph::new(t, (1..t).map(|i| (i - 1, i))).unwrap();
        Pattern::new(format!("P{t}"), g)
    }

    pub fn cycle(t: usize) -> Result<Self, PatternError> {
        if t < 3 {
            return Err(PatternError::BadParameter(t));
        }
        if t > MAX_PATTERN_ORDER {
            return Err(PatternError::TooLarge(t));
        }
        let g = Graph::new(t, (0..t).map(|i| (i, (i + 1) % t))).unwrap();
        Pattern::new(format!("C{t}"), g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }
}

/// `map[i]` is the host vertex playing pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub pattern: String,
    pub map: Vec<usize>,
}

impl Embedding {
    /// True iff `map` is injective and host adjacency on the image equals
    /// the pattern adjacency exactly.
    pub fn is_induced_in(&self, g: &Graph, p: &Pattern) -> bool {
        let k = p.order();
        if self.map.len() != k || self.map.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                if self.map[i] == self.map[j] {
                    return false;
                }
                if g.has_edge(self.map[i], self.map[j]) != p.graph.has_edge(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds the induced embedding whose image tuple `(map[0], map[1], ...)` is
/// lexicographically least, or `None` if the host is `p`-free.
pub fn find_induced(g: &Graph, p: &Pattern) -> Option<Embedding> {
    let k = p.order();
    if k == 0 {
        return Some(Embedding {
            pattern: p.name.clone(),
            map: Vec::new(),
        });
    }
    if k > g.n() {
        return None;
    }
    let n = g.n();
    let pdeg: Vec<usize> = (0..k).map(|i| p.graph.degree(i)).collect();
    // Host vertices that can play pattern vertex i by degree alone.
    let eligible: Vec<VertexSet> = (0..k)
        .map(|i| {
            VertexSet::from_iter(
                n,
                (0..n).filter(|&v| g.degree(v) >= pdeg[i] && n - 1 - g.degree(v) >= k - 1 - pdeg[i]),
            )
        })
        .collect();
    let mut map = Vec::with_capacity(k);
    if search(g, p, &eligible, &mut map) {
        Some(Embedding {
            pattern: p.name.clone(),
            map,
        })
    } else {
        None
    }
}

fn search(g: &Graph, p: &Pattern, eligible: &[VertexSet], map: &mut Vec<usize>) -> bool {
    let i = map.len();
    if i == p.order() {
        return true;
    }
    let mut cand = eligible[i].clone();
    for (j, &h) in map.iter().enumerate() {
        cand.remove(h);
        if p.graph.has_edge(i, j) {
            cand.intersect_with(g.neighbors(h));
        } else {
            cand.difference_with(g.neighbors(h));
        }
    }
    for v in cand.iter() {
        map.push(v);
        if search(g, p, eligible, map) {
            return true;
        }
        map.pop();
    }
    false
}

/// Membership verdict for the (P2+P4, K4-e)-free class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub is_p2p4_free: bool,
    pub is_k4e_free: bool,
    /// An induced P2+P4 (reported first when both are present) or K4-e.
    pub violation: Option<Embedding>,
}

impl ClassReport {
    pub fn is_member(&self) -> bool {
        self.is_p2p4_free && self.is_k4e_free
    }
}

pub fn check_class_membership(g: &Graph) -> ClassReport {
    let diamond = find_induced(g, &Pattern::diamond());
    let p2p4 = find_induced(g, &Pattern::p2_plus_p4());
    ClassReport {
        is_p2p4_free: p2p4.is_none(),
        is_k4e_free: diamond.is_none(),
        violation: p2p4.or(diamond),
    }
}

/// All induced cycles of length `len` (>= 4), one canonical vertex order
/// each: the smallest vertex first, then its smaller cycle neighbor.
/// Results come out in lexicographic order.
pub fn enumerate_induced_cycles(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    walk_cycles(g, len, &mut |c| {
        out.push(c.to_vec());
        false
    });
    out
}

fn walk_cycles(g: &Graph, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    assert!(len >= 4, "induced cycles shorter than 4 are triangles");
    let n = g.n();
    let mut path = Vec::with_capacity(len);
    for s in 0..n {
        let mut above = VertexSet::new(n);
        for v in s + 1..n {
            above.insert(v);
        }
        path.push(s);
        if extend(g, len, &above, &mut path, visit) {
            return;
        }
        path.pop();
    }
}

fn extend(
    g: &Graph,
    len: usize,
    above: &VertexSet,
    path: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let k = path.len();
    if k == len {
        if path[1] < path[len - 1] {
            return visit(path);
        }
        return false;
    }
    let mut cand = g.neighbors(path[k - 1]).intersection(above);
    if k >= 2 {
        for &u in &path[1..k - 1] {
            cand.difference_with(g.neighbors(u));
        }
        if k == len - 1 {
            cand.intersect_with(g.neighbors(path[0]));
        } else {
            cand.difference_with(g.neighbors(path[0]));
        }
    }
    for &u in path.iter() {
        cand.remove(u);
    }
    for w in cand.iter() {
        path.push(w);
        if extend(g, len, above, path, visit) {
            return true;
        }
        path.pop();
    }
    false
}

pub fn enumerate_induced_c5(g: &Graph) -> Vec<[usize; 5]> {
    enumerate_induced_cycles(g, 5)
        .into_iter()
        .map(|c| c.try_into().unwrap())
        .collect()
}

pub fn find_induced_c5(g: &Graph) -> Option<[usize; 5]> {
    first_cycle(g, 5).map(|c| c.try_into().unwrap())
}

pub fn enumerate_induced_c7(g: &Graph) -> Vec<[usize; 7]> {
    enumerate_induced_cycles(g, 7)
        .into_iter()
        .map(|c| c.try_into().unwrap())
        .collect()
}

/// The lexicographically first canonical induced C7.
pub fn find_induced_c7(g: &Graph) -> Option<[usize; 7]> {
    first_cycle(g, 7).map(|c| c.try_into().unwrap())
}

fn first_cycle(g: &Graph, len: usize) -> Option<Vec<usize>> {
    let mut found = None;
    walk_cycles(g, len, &mut |c| {
        found = Some(c.to_vec());
        true
    });
    found
}

/// True iff `cycle` (in cyclic order) induces a chordless cycle in `g`.
pub fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            if cycle[i] == cycle[j] {
                return false;
            }
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}
