//! Exact desk-scale oracles: clique number, chromatic number, optimal coloring
//! of a union of two cliques, and perfectness inside the class.

use serde::Serialize;
use thiserror::Error;

use crate::detect::{find_induced_c5, find_induced_c7};
use crate::graph::{Coloring, Graph, VertexSet};

/// Environment variable holding the chromatic-number node limit.
pub const BUDGET_ENV: &str = "NEAROPT_ORACLE_BUDGET";
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Node budget from [`BUDGET_ENV`], falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget exhausted after {nodes} nodes; {lower} <= chi <= {upper}")]
    BudgetExhausted { nodes: u64, lower: usize, upper: usize },
    #[error("vertices {0} and {1} of a clique argument are not adjacent")]
    NotAClique(usize, usize),
    #[error("vertex {0} is in both cliques")]
    NotDisjoint(usize),
}

/// Maximum clique by branch and bound over pivoted candidate sets.
/// Returns the size and one maximum clique (sorted).
pub fn clique_number(g: &Graph) -> (usize, Vec<usize>) {
    let mut best = Vec::new();
    let mut current = Vec::new();
    grow_clique(g, &mut current, g.vertices(), &mut best);
    best.sort_unstable();
    (best.len(), best)
}

fn grow_clique(g: &Graph, current: &mut Vec<usize>, mut cand: VertexSet, best: &mut Vec<usize>) {
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + cand.len() <= best.len() {
        return;
    }
    let pivot = cand
        .iter()
        .max_by_key(|&u| (g.neighbors(u).intersection_len(&cand), std::cmp::Reverse(u)))
        .unwrap();
    let branch = cand.difference(g.neighbors(pivot));
    for v in branch.iter() {
        if current.len() + cand.len() <= best.len() {
            return;
        }
        current.push(v);
        grow_clique(g, current, cand.intersection(g.neighbors(v)), best);
        current.pop();
        cand.remove(v);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chromatic {
    pub chi: usize,
    pub coloring: Coloring,
    /// Search nodes spent.
    pub nodes: u64,
}

/// Exact chromatic number with an optimal coloring.
///
/// A maximum clique is precolored, a DSATUR greedy run gives the upper
/// bound, and each `k` from the clique size upward is decided by DSATUR
/// backtracking with forward checking until a `k`-coloring is found.
pub fn chromatic_number(g: &Graph, budget: u64) -> Result<Chromatic, OracleError> {
    let n = g.n();
    if n == 0 {
        return Ok(Chromatic {
            chi: 0,
            coloring: Coloring::new(Vec::new()),
            nodes: 0,
        });
    }
    let (omega, clique) = clique_number(g);
    let greedy = dsatur_greedy(g);
    let upper = greedy.iter().max().unwrap() + 1;
    let mut nodes = 0u64;
    for k in omega..upper {
        let mut search = KColoring::new(g, k, budget);
        search.seed(&clique);
        let found = search.solve();
        nodes += search.nodes;
        if search.exhausted {
            return Err(OracleError::BudgetExhausted {
                nodes,
                lower: k,
                upper,
            });
        }
        if found {
            let colors: Vec<usize> = search.color.iter().map(|c| c.unwrap()).collect();
            return Ok(Chromatic {
                chi: k,
                coloring: Coloring::from_colors(&colors),
                nodes,
            });
        }
    }
    Ok(Chromatic {
        chi: upper,
        coloring: Coloring::from_colors(&greedy),
        nodes,
    })
}

/// DSATUR greedy coloring; color per vertex.
pub fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<Option<usize>> = vec![None; n];
    let mut seen: Vec<VertexSet> = vec![VertexSet::new(n + 1); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v].is_none())
            .max_by_key(|&v| (seen[v].len(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..=n).find(|&c| !seen[v].contains(c)).unwrap();
        color[v] = Some(c);
        for u in g.neighbors(v).iter() {
            seen[u].insert(c);
        }
    }
    color.into_iter().map(|c| c.unwrap()).collect()
}

struct KColoring<'g> {
    g: &'g Graph,
    k: usize,
    color: Vec<Option<usize>>,
    /// `blocked[v * k + c]` counts colored neighbors of `v` with color `c`.
    blocked: Vec<u32>,
    /// Number of colors still available to each vertex.
    free: Vec<usize>,
    /// Highest color index used so far, plus one.
    used: usize,
    remaining: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'g> KColoring<'g> {
    fn new(g: &'g Graph, k: usize, budget: u64) -> Self {
        let n = g.n();
        KColoring {
            g,
            k,
            color: vec![None; n],
            blocked: vec![0; n * k],
            free: vec![k; n],
            used: 0,
            remaining: n,
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    /// Colors `v` with `c`; returns false when some neighbor is left with no color.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = Some(c);
        self.remaining -= 1;
        let mut ok = true;
        for u in self.g.neighbors(v).iter() {
            let slot = &mut self.blocked[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.free[u] -= 1;
                if self.free[u] == 0 && self.color[u].is_none() {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = None;
        self.remaining += 1;
        for u in self.g.neighbors(v).iter() {
            let slot = &mut self.blocked[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.free[u] += 1;
            }
        }
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (usize::MAX, 0usize);
        for v in 0..self.g.n() {
            if self.color[v].is_some() {
                continue;
            }
            let uncolored = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&u| self.color[u].is_none())
                .count();
            let cand = (self.free[v], uncolored);
            if cand.0 < key.0 || (cand.0 == key.0 && cand.1 > key.1) {
                key = cand;
                best = v;
            }
        }
        best
    }

    fn solve(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        let v = self.pick();
        // A fresh color is interchangeable with every other unused one.
        let limit = (self.used + 1).min(self.k);
        for c in 0..limit {
            if self.blocked[v * self.k + c] != 0 {
                continue;
            }
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            if self.assign(v, c) && self.solve() {
                return true;
            }
            self.unassign(v, c);
            self.used = prev_used;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Gives the clique vertices distinct colors `0..clique.len()`.
    fn seed(&mut self, clique: &[usize]) {
        for (c, &v) in clique.iter().enumerate() {
            self.assign(v, c);
        }
        self.used = clique.len();
    }
}

/// Minimum coloring of the union of two disjoint cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCliqueColoring {
    /// Classes over the original vertex ids of `k1 ∪ k2`.
    pub classes: Vec<Vec<usize>>,
    /// Non-adjacent cross pairs `(u in k1, w in k2)` that share a color.
    pub matching: Vec<(usize, usize)>,
}

impl TwoCliqueColoring {
    pub fn colors_used(&self) -> usize {
        self.classes.len()
    }
}

/// Colors `g[k1 ∪ k2]` optimally: a maximum matching in the bipartite
/// complement between the cliques pairs vertices into shared classes, so the
/// class count is `|k1| + |k2| - matching`, which equals the clique number
/// of the union.
pub fn color_two_clique_union(
    g: &Graph,
    k1: &[usize],
    k2: &[usize],
) -> Result<TwoCliqueColoring, OracleError> {
    for k in [k1, k2] {
        for (i, &u) in k.iter().enumerate() {
            for &v in &k[i + 1..] {
                if u == v || !g.has_edge(u, v) {
                    return Err(OracleError::NotAClique(u, v));
                }
            }
        }
    }
    if let Some(&v) = k1.iter().find(|v| k2.contains(v)) {
        return Err(OracleError::NotDisjoint(v));
    }
    // Kuhn's augmenting paths; mate_of_right[j] is the k1 index matched to k2[j].
    let mut mate_of_right: Vec<Option<usize>> = vec![None; k2.len()];
    for i in 0..k1.len() {
        let mut visited = vec![false; k2.len()];
        augment(g, k1, k2, i, &mut visited, &mut mate_of_right);
    }
    let mut mate_of_left: Vec<Option<usize>> = vec![None; k1.len()];
    for (j, m) in mate_of_right.iter().enumerate() {
        if let Some(i) = *m {
            mate_of_left[i] = Some(j);
        }
    }
    let mut classes = Vec::new();
    let mut matching = Vec::new();
    for (i, &u) in k1.iter().enumerate() {
        match mate_of_left[i] {
            Some(j) => {
                classes.push(vec![u, k2[j]]);
                matching.push((u, k2[j]));
            }
            None => classes.push(vec![u]),
        }
    }
    for (j, &w) in k2.iter().enumerate() {
        if mate_of_right[j].is_none() {
            classes.push(vec![w]);
        }
    }
    Ok(TwoCliqueColoring { classes, matching })
}

fn augment(
    g: &Graph,
    k1: &[usize],
    k2: &[usize],
    i: usize,
    visited: &mut [bool],
    mate_of_right: &mut [Option<usize>],
) -> bool {
    for j in 0..k2.len() {
        if visited[j] || g.has_edge(k1[i], k2[j]) {
            continue;
        }
        visited[j] = true;
        let free = match mate_of_right[j] {
            None => true,
            Some(other) => augment(g, k1, k2, other, visited, mate_of_right),
        };
        if free {
            mate_of_right[j] = Some(i);
            return true;
        }
    }
    false
}

/// Perfectness for class members: no induced C5 and no induced C7.
///
/// Inside the (P2+P4, K4-e)-free class longer odd holes and all odd
/// antiholes of length >= 7 are excluded, so this agrees with perfectness
/// there. Outside the class the answer means nothing.
pub fn is_perfect_in_class(g: &Graph) -> bool {
    find_induced_c5(g).is_none() && find_induced_c7(g).is_none()
}
