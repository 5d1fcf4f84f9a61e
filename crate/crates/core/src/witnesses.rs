//! Named graphs: the tight examples and the standard families.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("{family} needs n >= {min}, got {n}")]
    TooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
}

/// Intersection graph of the 27 lines on a smooth cubic surface.
///
/// Vertices `0..6` are `a_1..a_6`, `6..12` are `b_1..b_6`, and `12..27` are
/// `c_ij` for `i < j` in lexicographic order. Two lines meet when
/// `a_i`/`b_j` have `i != j`, `a_i` or `b_i` meets `c_jk` with
/// `i in {j, k}`, or `c_ij`/`c_kl` have disjoint index pairs. The result is
/// strongly regular with parameters (27, 10, 1, 5).
pub fn schlafli_complement() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .collect();
    let a = |i: usize| i;
    let b = |i: usize| 6 + i;
    let c = |p: usize| 12 + p;
    let mut edges = Vec::new();
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                edges.push((a(i), b(j)));
            }
        }
        for (p, &(j, k)) in pairs.iter().enumerate() {
            if i == j || i == k {
                edges.push((a(i), c(p)));
                edges.push((b(i), c(p)));
            }
        }
    }
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for (q, &(k, l)) in pairs.iter().enumerate().skip(p + 1) {
            if i != k && i != l && j != k && j != l {
                edges.push((c(p), c(q)));
            }
        }
    }
    Graph::new(27, edges).unwrap()
}

/// C7 on `0..7` (vertex `i` is `v_{i+1}`) plus vertex 7 adjacent to
/// `v_1, v_2, v_4, v_6`.
pub fn gstar() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    edges.extend([(7, 0), (7, 1), (7, 3), (7, 5)]);
    Graph::new(8, edges).unwrap()
}

pub fn complete_graph(n: usize) -> Result<Graph, WitnessError> {
    if n == 0 {
        return Err(WitnessError::TooSmall {
            family: "complete graph",
            min: 1,
            n,
        });
    }
    Ok(Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap())
}

pub fn cycle_graph(n: usize) -> Result<Graph, WitnessError> {
    if n < 3 {
        return Err(WitnessError::TooSmall {
            family: "cycle",
            min: 3,
            n,
        });
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
}

pub fn path_graph(n: usize) -> Result<Graph, WitnessError> {
    if n == 0 {
        return Err(WitnessError::TooSmall {
            family: "path",
            min: 1,
            n,
        });
    }
    Ok(Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap())
}
