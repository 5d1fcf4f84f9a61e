//! Neighborhood decompositions around a labeled induced C5 or C7, their
//! structural checks, and the case classification that drives the colorer.
//!
//! Cycle positions use the 1-based cyclic indexing of the case analysis:
//! `v(1)..v(5)` with every index reduced mod 5 (mod 7 for the C7 form), so
//! `d.b(0)` is `B_5` and `d.z(-1)` is `Z_4`.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::detect::{check_class_membership, enumerate_induced_c5, find_induced_c7, is_induced_cycle, ClassReport};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("{0:?} is not an induced cycle of the required length")]
    NotAnInducedCycle(Vec<usize>),
    /// `{v, v_i, v_(i+1), v_(i+2)}` induces K4-e.
    #[error("vertex {} sees three consecutive cycle vertices; {:?} induces K4-e", .0[0], .0)]
    Diamond([usize; 4]),
    #[error("vertex {vertex} has cycle trace {trace:?}, which matches no set")]
    UnclassifiedVertex { vertex: usize, trace: Vec<usize> },
}

#[inline]
fn idx(i: i32, k: i32) -> usize {
    (i - 1).rem_euclid(k) as usize
}

/// Partition of `V(G)` relative to a labeled induced C5.
#[derive(Clone, PartialEq, Eq)]
pub struct C5Decomposition {
    cycle: [usize; 5],
    a: [VertexSet; 5],
    b: [VertexSet; 5],
    d: [VertexSet; 5],
    z: [VertexSet; 5],
    t: VertexSet,
}

impl C5Decomposition {
    pub fn cycle(&self) -> [usize; 5] {
        self.cycle
    }

    pub fn v(&self, i: i32) -> usize {
        self.cycle[idx(i, 5)]
    }

    /// `N(v) ∩ C = {v_i}`
    pub fn a(&self, i: i32) -> &VertexSet {
        &self.a[idx(i, 5)]
    }

    /// `N(v) ∩ C = {v_i, v_(i+1)}`
    pub fn b(&self, i: i32) -> &VertexSet {
        &self.b[idx(i, 5)]
    }

    /// `N(v) ∩ C = {v_(i-1), v_(i+1)}`
    pub fn d(&self, i: i32) -> &VertexSet {
        &self.d[idx(i, 5)]
    }

    /// `N(v) ∩ C = {v_(i-2), v_i, v_(i+2)}`
    pub fn z(&self, i: i32) -> &VertexSet {
        &self.z[idx(i, 5)]
    }

    /// No neighbor on the cycle.
    pub fn t(&self) -> &VertexSet {
        &self.t
    }

    pub fn capacity(&self) -> usize {
        self.t.capacity()
    }

    fn all(sets: &[VertexSet; 5]) -> VertexSet {
        let mut s = sets[0].clone();
        for x in &sets[1..] {
            s.union_with(x);
        }
        s
    }

    pub fn a_all(&self) -> VertexSet {
        Self::all(&self.a)
    }

    pub fn b_all(&self) -> VertexSet {
        Self::all(&self.b)
    }

    pub fn d_all(&self) -> VertexSet {
        Self::all(&self.d)
    }

    pub fn z_all(&self) -> VertexSet {
        Self::all(&self.z)
    }

    pub fn cycle_set(&self) -> VertexSet {
        VertexSet::from_iter(self.capacity(), self.cycle)
    }
}

impl fmt::Debug for C5Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).unwrap())
    }
}

impl Serialize for C5Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(22))?;
        m.serialize_entry("cycle", &self.cycle)?;
        for (name, sets) in [("A", &self.a), ("B", &self.b), ("D", &self.d), ("Z", &self.z)] {
            for (i, s) in sets.iter().enumerate() {
                m.serialize_entry(&format!("{name}{}", i + 1), s)?;
            }
        }
        m.serialize_entry("T", &self.t)?;
        m.end()
    }
}

/// Trace of `v` on the cycle as a bitmask over positions `0..k`.
fn trace_mask(g: &Graph, cycle: &[usize], v: usize) -> u32 {
    cycle
        .iter()
        .enumerate()
        .filter(|&(_, &c)| g.has_edge(v, c))
        .fold(0, |m, (p, _)| m | 1 << p)
}

fn mask_of(positions: &[i32], k: i32) -> u32 {
    positions.iter().fold(0, |m, &i| m | 1 << idx(i, k))
}

/// Splits `V(G) \ C` by cycle trace. Fails with a K4-e witness when some
/// vertex sees three consecutive cycle vertices.
pub fn decompose_c5(g: &Graph, cycle: [usize; 5]) -> Result<C5Decomposition, DecomposeError> {
    if !is_induced_cycle(g, &cycle) {
        return Err(DecomposeError::NotAnInducedCycle(cycle.to_vec()));
    }
    let n = g.n();
    let empty = VertexSet::new(n);
    let mut d = C5Decomposition {
        cycle,
        a: std::array::from_fn(|_| empty.clone()),
        b: std::array::from_fn(|_| empty.clone()),
        d: std::array::from_fn(|_| empty.clone()),
        z: std::array::from_fn(|_| empty.clone()),
        t: empty.clone(),
    };
    for v in 0..n {
        if cycle.contains(&v) {
            continue;
        }
        let m = trace_mask(g, &cycle, v);
        if m == 0 {
            d.t.insert(v);
            continue;
        }
        let mut placed = false;
        for i in 1..=5 {
            let slot = if m == mask_of(&[i], 5) {
                Some(&mut d.a)
            } else if m == mask_of(&[i, i + 1], 5) {
                Some(&mut d.b)
            } else if m == mask_of(&[i - 1, i + 1], 5) {
                Some(&mut d.d)
            } else if m == mask_of(&[i - 2, i, i + 2], 5) {
                Some(&mut d.z)
            } else {
                None
            };
            if let Some(sets) = slot {
                sets[idx(i, 5)].insert(v);
                placed = true;
                break;
            }
        }
        if !placed {
            let i = (1..=5)
                .find(|&i| m & mask_of(&[i, i + 1, i + 2], 5) == mask_of(&[i, i + 1, i + 2], 5))
                .expect("every trace without three consecutive cycle vertices has a set");
            let c = |j: i32| cycle[idx(j, 5)];
            return Err(DecomposeError::Diamond([v, c(i), c(i + 1), c(i + 2)]));
        }
    }
    Ok(d)
}

/// Partition of `V(G)` relative to a labeled induced C7.
#[derive(Clone, PartialEq, Eq)]
pub struct C7Decomposition {
    cycle: [usize; 7],
    q: [VertexSet; 7],
    x: [VertexSet; 7],
    y: [VertexSet; 7],
    l: [VertexSet; 7],
    m: VertexSet,
}

impl C7Decomposition {
    pub fn cycle(&self) -> [usize; 7] {
        self.cycle
    }

    pub fn v(&self, i: i32) -> usize {
        self.cycle[idx(i, 7)]
    }

    /// `N(v) ∩ C = {v_(i-1), v_(i+1)}`
    pub fn q(&self, i: i32) -> &VertexSet {
        &self.q[idx(i, 7)]
    }

    /// `N(v) ∩ C = {v_i, v_(i+1), v_(i+3), v_(i-2)}`
    pub fn x(&self, i: i32) -> &VertexSet {
        &self.x[idx(i, 7)]
    }

    /// `N(v) ∩ C = {v_i, v_(i+1), v_(i-2)}`
    pub fn y(&self, i: i32) -> &VertexSet {
        &self.y[idx(i, 7)]
    }

    /// `N(v) ∩ C = {v_i, v_(i+1), v_(i+3)}`
    pub fn l(&self, i: i32) -> &VertexSet {
        &self.l[idx(i, 7)]
    }

    /// No neighbor on the cycle.
    pub fn m(&self) -> &VertexSet {
        &self.m
    }

    pub fn capacity(&self) -> usize {
        self.m.capacity()
    }

    fn all(sets: &[VertexSet; 7]) -> VertexSet {
        let mut s = sets[0].clone();
        for x in &sets[1..] {
            s.union_with(x);
        }
        s
    }

    pub fn q_all(&self) -> VertexSet {
        Self::all(&self.q)
    }

    pub fn x_all(&self) -> VertexSet {
        Self::all(&self.x)
    }

    pub fn y_all(&self) -> VertexSet {
        Self::all(&self.y)
    }

    pub fn l_all(&self) -> VertexSet {
        Self::all(&self.l)
    }

    /// First index (1-based) whose set in `sets` is nonempty.
    fn first_nonempty(sets: &[VertexSet; 7]) -> Option<i32> {
        sets.iter().position(|s| !s.is_empty()).map(|p| p as i32 + 1)
    }

    pub fn first_x(&self) -> Option<i32> {
        Self::first_nonempty(&self.x)
    }

    pub fn first_y(&self) -> Option<i32> {
        Self::first_nonempty(&self.y)
    }

    pub fn first_l(&self) -> Option<i32> {
        Self::first_nonempty(&self.l)
    }

    pub fn first_empty_q(&self) -> Option<i32> {
        self.q.iter().position(|s| s.is_empty()).map(|p| p as i32 + 1)
    }
}

impl fmt::Debug for C7Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).unwrap())
    }
}

impl Serialize for C7Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(30))?;
        m.serialize_entry("cycle", &self.cycle)?;
        for (name, sets) in [("Q", &self.q), ("X", &self.x), ("Y", &self.y), ("L", &self.l)] {
            for (i, s) in sets.iter().enumerate() {
                m.serialize_entry(&format!("{name}{}", i + 1), s)?;
            }
        }
        m.serialize_entry("M", &self.m)?;
        m.end()
    }
}

/// Splits `V(G) \ C` by cycle trace into the Q/X/Y/L/M sets. Any other
/// trace is reported, which certifies that the graph is outside the class
/// or contains an induced C5.
pub fn decompose_c7(g: &Graph, cycle: [usize; 7]) -> Result<C7Decomposition, DecomposeError> {
    if !is_induced_cycle(g, &cycle) {
        return Err(DecomposeError::NotAnInducedCycle(cycle.to_vec()));
    }
    let n = g.n();
    let empty = VertexSet::new(n);
    let mut d = C7Decomposition {
        cycle,
        q: std::array::from_fn(|_| empty.clone()),
        x: std::array::from_fn(|_| empty.clone()),
        y: std::array::from_fn(|_| empty.clone()),
        l: std::array::from_fn(|_| empty.clone()),
        m: empty.clone(),
    };
    for v in 0..n {
        if cycle.contains(&v) {
            continue;
        }
        let m = trace_mask(g, &cycle, v);
        if m == 0 {
            d.m.insert(v);
            continue;
        }
        let mut placed = false;
        for i in 1..=7 {
            let slot = if m == mask_of(&[i - 1, i + 1], 7) {
                Some(&mut d.q)
            } else if m == mask_of(&[i, i + 1, i + 3, i - 2], 7) {
                Some(&mut d.x)
            } else if m == mask_of(&[i, i + 1, i - 2], 7) {
                Some(&mut d.y)
            } else if m == mask_of(&[i, i + 1, i + 3], 7) {
                Some(&mut d.l)
            } else {
                None
            };
            if let Some(sets) = slot {
                sets[idx(i, 7)].insert(v);
                placed = true;
                break;
            }
        }
        if !placed {
            let trace = (0..7).filter(|p| m & 1 << p != 0).map(|p| cycle[p]).collect();
            return Err(DecomposeError::UnclassifiedVertex { vertex: v, trace });
        }
    }
    Ok(d)
}

/// A failed structural property with the vertices that exhibit it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyViolation {
    /// Property id, e.g. `O2.clique` or `C7.xyz`.
    pub property: String,
    /// Cycle index the property was instantiated at, when it has one.
    pub index: Option<i32>,
    pub witness: Vec<usize>,
}

fn violation(property: &str, index: Option<i32>, witness: Vec<usize>) -> PropertyViolation {
    PropertyViolation {
        property: property.to_string(),
        index,
        witness,
    }
}

/// Two members of `nb ∩ s`, if it has at least two.
fn two_in(nb: &VertexSet, s: &VertexSet) -> Option<(usize, usize)> {
    let both = nb.intersection(s);
    let mut it = both.iter();
    match (it.next(), it.next()) {
        (Some(u), Some(v)) => Some((u, v)),
        _ => None,
    }
}

/// Checks every sub-item of properties O1 through O7 at every cycle index.
/// Each failure yields one violation per (sub-item, index).
pub fn validate_c5_properties(g: &Graph, d: &C5Decomposition) -> Vec<PropertyViolation> {
    let mut out = Vec::new();
    let dd = d.d_all();
    let zz = d.z_all();
    for i in 1..=5 {
        let at = Some(i);

        // O1
        if let Some((u, v)) = g.edge_within(d.d(i)) {
            out.push(violation("O1.stable", at, vec![u, v]));
        }
        if d.z(i).len() > 1 {
            out.push(violation("O1.z", at, d.z(i).iter().take(2).collect()));
        }

        // O2
        let core = d.b(i).union(d.z(i - 2));
        let fwd = d.b(i + 2).union(d.z(i));
        let bwd = d.b(i - 2).union(d.z(i + 1));
        if let Some((u, v)) = core.iter().find_map(|u| {
            core.iter()
                .find(|&v| v > u && !g.has_edge(u, v))
                .map(|v| (u, v))
        }) {
            out.push(violation("O2.clique", at, vec![u, v]));
        }
        for x in core.iter() {
            if let Some((u, v)) = two_in(g.neighbors(x), &fwd) {
                out.push(violation("O2.forward", at, vec![x, u, v]));
                break;
            }
        }
        for x in core.iter() {
            if let Some((u, v)) = two_in(g.neighbors(x), &bwd) {
                out.push(violation("O2.backward", at, vec![x, u, v]));
                break;
            }
        }

        // O3
        let mut far = d.a(i).union(d.a(i + 1));
        far.union_with(d.b(i - 1));
        far.union_with(d.b(i + 1));
        far.union_with(&dd.difference(d.d(i - 2)));
        far.union_with(&zz.difference(d.z(i - 2)));
        if let Some((u, v)) = g.edge_between(&core, &far) {
            out.push(violation("O3", at, vec![u, v]));
        }

        // O4
        if let Some((u, v)) = g.edge_within(&d.a(i).union(d.t())) {
            out.push(violation("O4", at, vec![u, v]));
        }

        // O5
        if let Some(a) = d.a(i).first() {
            for j in [i + 1, i - 2] {
                if d.b(j).len() > 2 {
                    let mut w = vec![a];
                    w.extend(d.b(j).iter().take(3));
                    out.push(violation("O5", at, w));
                }
            }
        }

        // O6
        let side = d.a(i + 1).union(d.a(i - 1));
        if let (Some((u, v)), Some((x, y))) = (
            g.edge_between(d.a(i), &side),
            g.non_edge_between(d.a(i), &side),
        ) {
            out.push(violation("O6", at, vec![u, v, x, y]));
        }

        // O7
        if let Some(b) = d.b(i).first() {
            for j in [i - 1, i + 1] {
                if d.b(j).len() > 1 {
                    let mut w = vec![b];
                    w.extend(d.b(j).iter().take(2));
                    out.push(violation("O7.i", at, w));
                }
            }
            let blockers = d.d(i - 1).union(d.d(i + 1)).union(d.z(i));
            if let (Some(u), Some(v)) = (d.b(i - 1).first(), blockers.first()) {
                out.push(violation("O7.ii", at, vec![b, u, v]));
            }
            if d.b(i).len() > 1 {
                if let Some(x) = d.d(i).union(d.d(i + 1)).first() {
                    let mut w: Vec<usize> = d.b(i).iter().take(2).collect();
                    w.push(x);
                    out.push(violation("O7.iii", at, w));
                }
            }
            let pairs = [
                (d.a(i).union(d.d(i + 1)), d.d(i - 1).clone()),
                (d.a(i).clone(), d.d(i).union(d.a(i + 1))),
                (d.a(i + 1).union(d.d(i)), d.d(i + 2).clone()),
                (d.a(i + 1).clone(), d.d(i + 1).clone()),
            ];
            for (s, t) in &pairs {
                if let Some((u, v)) = g.edge_between(s, t) {
                    out.push(violation("O7.iv", at, vec![b, u, v]));
                }
            }
            if d.b(i).len() > 2 {
                if let Some((u, v)) = g.edge_between(d.t(), &zz.difference(d.z(i - 2))) {
                    let mut w: Vec<usize> = d.b(i).iter().take(3).collect();
                    w.extend([u, v]);
                    out.push(violation("O7.v", at, w));
                }
            }
        }
    }
    out
}

/// Checks the C7 claims: stability of every `Q_i, X_i, Y_i, L_i` and `M`,
/// `[Q_i, Q_(i+3) ∪ Q_(i-3)] = ∅`, `[M, Q ∪ Y ∪ L] = ∅`, and that each of
/// X, Y, L is concentrated on a single index.
pub fn validate_c7_claims(g: &Graph, d: &C7Decomposition) -> Vec<PropertyViolation> {
    let mut out = Vec::new();
    for i in 1..=7 {
        for (name, s) in [("Q", d.q(i)), ("X", d.x(i)), ("Y", d.y(i)), ("L", d.l(i))] {
            if let Some((u, v)) = g.edge_within(s) {
                out.push(violation(&format!("C7.stable.{name}"), Some(i), vec![u, v]));
            }
        }
        if let Some((u, v)) = g.edge_between(d.q(i), &d.q(i + 3).union(d.q(i - 3))) {
            out.push(violation("C7.qq", Some(i), vec![u, v]));
        }
    }
    if let Some((u, v)) = g.edge_within(d.m()) {
        out.push(violation("C7.stable.M", None, vec![u, v]));
    }
    let qyl = d.q_all().union(&d.y_all()).union(&d.l_all());
    if let Some((u, v)) = g.edge_between(d.m(), &qyl) {
        out.push(violation("C7.m", None, vec![u, v]));
    }
    for (name, sets) in [("X", &d.x), ("Y", &d.y), ("L", &d.l)] {
        let nonempty: Vec<usize> = (0..7).filter(|&p| !sets[p].is_empty()).collect();
        if nonempty.len() > 1 {
            let w = nonempty.iter().map(|&p| sets[p].first().unwrap()).collect();
            out.push(violation(
                &format!("C7.xyz.{name}"),
                Some(nonempty[0] as i32 + 1),
                w,
            ));
        }
    }
    out
}

/// Which branch of the case analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `B_1` and `B_5` nonempty for some labeled C5.
    F1,
    /// `B_1` and `A_3` nonempty.
    F2,
    /// `B_1` and `B_4` nonempty.
    F3,
    /// `B_1` nonempty.
    F4,
    /// A C5 exists and every B set is empty for every labeled C5.
    PureC5,
    /// No induced C5, some induced C7.
    #[serde(rename = "C7case")]
    C7Case,
    /// Neither an induced C5 nor an induced C7.
    Perfect,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::F1 => "F1",
            CaseTag::F2 => "F2",
            CaseTag::F3 => "F3",
            CaseTag::F4 => "F4",
            CaseTag::PureC5 => "PureC5",
            CaseTag::C7Case => "C7case",
            CaseTag::Perfect => "Perfect",
        };
        f.write_str(s)
    }
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::F1,
        CaseTag::F2,
        CaseTag::F3,
        CaseTag::F4,
        CaseTag::PureC5,
        CaseTag::C7Case,
        CaseTag::Perfect,
    ];

    /// Pattern realized by one labeled C5 decomposition, in priority order.
    pub fn of_c5(d: &C5Decomposition) -> CaseTag {
        if d.b(1).is_empty() {
            CaseTag::PureC5
        } else if !d.b(5).is_empty() {
            CaseTag::F1
        } else if !d.a(3).is_empty() {
            CaseTag::F2
        } else if !d.b(4).is_empty() {
            CaseTag::F3
        } else {
            CaseTag::F4
        }
    }
}

/// The ten labelings (5 rotations, then 5 reflections) of a cyclic order.
pub fn c5_labelings(cycle: [usize; 5]) -> [[usize; 5]; 10] {
    std::array::from_fn(|k| {
        let r = k % 5;
        if k < 5 {
            std::array::from_fn(|j| cycle[(r + j) % 5])
        } else {
            std::array::from_fn(|j| cycle[(r + 5 - j) % 5])
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub tag: CaseTag,
    /// Realizing labeled cycle: 5 vertices for the C5 tags, 7 for
    /// `C7Case`, empty for `Perfect`.
    pub anchor: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph is not (P2+P4, K4-e)-free")]
    NotAMember(ClassReport),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// Classifies a class member; non-members are rejected with their report.
pub fn classify_case(g: &Graph) -> Result<Classification, ClassifyError> {
    let report = check_class_membership(g);
    if !report.is_member() {
        return Err(ClassifyError::NotAMember(report));
    }
    Ok(classify_member(g)?)
}

/// Classification without the membership check. Scans every labeling of
/// every induced C5 and keeps the highest-priority tag, breaking ties by the
/// lexicographically least labeling.
pub fn classify_member(g: &Graph) -> Result<Classification, DecomposeError> {
    let mut best: Option<(CaseTag, [usize; 5])> = None;
    for cycle in enumerate_induced_c5(g) {
        for lab in c5_labelings(cycle) {
            let tag = CaseTag::of_c5(&decompose_c5(g, lab)?);
            let cand = (tag, lab);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    if let Some((tag, lab)) = best {
        return Ok(Classification {
            tag,
            anchor: lab.to_vec(),
        });
    }
    Ok(match find_induced_c7(g) {
        Some(c) => Classification {
            tag: CaseTag::C7Case,
            anchor: c.to_vec(),
        },
        None => Classification {
            tag: CaseTag::Perfect,
            anchor: Vec::new(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::{complete_graph, cycle_graph, gstar};

    /// C5 on 0..5 plus extra vertices with the given neighborhoods.
    fn c5_plus(extra: &[&[usize]], inner: &[(usize, usize)]) -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for (k, nb) in extra.iter().enumerate() {
            edges.extend(nb.iter().map(|&c| (5 + k, c)));
        }
        edges.extend_from_slice(inner);
        Graph::new(5 + extra.len(), edges).unwrap()
    }

    const C: [usize; 5] = [0, 1, 2, 3, 4];

    #[test]
    fn bare_c5_has_empty_sets() {
        let d = decompose_c5(&cycle_graph(5).unwrap(), C).unwrap();
        for i in 1..=5 {
            assert!(d.a(i).is_empty() && d.b(i).is_empty() && d.d(i).is_empty() && d.z(i).is_empty());
        }
        assert!(d.t().is_empty());
        assert!(validate_c5_properties(&cycle_graph(5).unwrap(), &d).is_empty());
    }

    #[test]
    fn single_vertex_roles() {
        // v1 = 0, v2 = 1, ..., v5 = 4.
        let d = decompose_c5(&c5_plus(&[&[0, 1]], &[]), C).unwrap();
        assert_eq!(d.b(1).to_vec(), vec![5]);
        assert!(d.b_all().len() == 1 && d.a_all().is_empty() && d.t().is_empty());

        let d = decompose_c5(&c5_plus(&[&[3, 0, 2]], &[]), C).unwrap();
        assert_eq!(d.z(1).to_vec(), vec![5]);
        assert_eq!(d.z(-4).to_vec(), vec![5]);

        let d = decompose_c5(&c5_plus(&[&[4, 1]], &[]), C).unwrap();
        assert_eq!(d.d(1).to_vec(), vec![5]);

        let d = decompose_c5(&c5_plus(&[&[2], &[]], &[]), C).unwrap();
        assert_eq!(d.a(3).to_vec(), vec![5]);
        assert_eq!(d.t().to_vec(), vec![6]);
    }

    #[test]
    fn three_consecutive_is_a_diamond() {
        let g = c5_plus(&[&[0, 1, 2]], &[]);
        assert_eq!(decompose_c5(&g, C), Err(DecomposeError::Diamond([5, 0, 1, 2])));
        let g = c5_plus(&[&[4, 0, 1, 2]], &[]);
        assert!(matches!(decompose_c5(&g, C), Err(DecomposeError::Diamond(_))));
    }

    #[test]
    fn rejects_non_cycles() {
        let g = complete_graph(5).unwrap();
        assert!(matches!(decompose_c5(&g, C), Err(DecomposeError::NotAnInducedCycle(_))));
    }

    #[test]
    fn o1_flags_adjacent_d_vertices() {
        let g = c5_plus(&[&[4, 1], &[4, 1]], &[(5, 6)]);
        let d = decompose_c5(&g, C).unwrap();
        let v = validate_c5_properties(&g, &d);
        assert!(v.iter().any(|x| x.property == "O1.stable" && x.index == Some(1) && x.witness == vec![5, 6]));
    }

    #[test]
    fn o2_flags_nonadjacent_b_pair() {
        let g = c5_plus(&[&[0, 1], &[0, 1]], &[]);
        let d = decompose_c5(&g, C).unwrap();
        let v = validate_c5_properties(&g, &d);
        assert!(v.iter().any(|x| x.property == "O2.clique" && x.index == Some(1) && x.witness == vec![5, 6]));
    }

    #[test]
    fn c7_decomposition_of_gstar() {
        let g = gstar();
        let d = decompose_c7(&g, [0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(d.x(1).to_vec(), vec![7]);
        assert_eq!(d.first_x(), Some(1));
        assert!(validate_c7_claims(&g, &d).is_empty());
    }

    #[test]
    fn c7_basic_roles() {
        let c7 = cycle_graph(7).unwrap();
        let d = decompose_c7(&c7, [0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert!(d.q_all().is_empty() && d.m().is_empty());

        let g = Graph::new(8, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        let d = decompose_c7(&g, [0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(d.m().to_vec(), vec![7]);
    }

    #[test]
    fn c7_unclassified_trace() {
        // v adjacent to v1 only: P2+P4 appears, and the trace has no set.
        let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.push((7, 0));
        let g = Graph::new(8, edges).unwrap();
        assert_eq!(
            decompose_c7(&g, [0, 1, 2, 3, 4, 5, 6]),
            Err(DecomposeError::UnclassifiedVertex {
                vertex: 7,
                trace: vec![0]
            })
        );
    }

    #[test]
    fn c7_claims_flag_adjacent_m_pair() {
        let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.push((7, 8));
        let g = Graph::new(9, edges).unwrap();
        let d = decompose_c7(&g, [0, 1, 2, 3, 4, 5, 6]).unwrap();
        let v = validate_c7_claims(&g, &d);
        assert_eq!(v, vec![violation("C7.stable.M", None, vec![7, 8])]);
    }

    #[test]
    fn c7_claims_flag_spread_y() {
        // y1 sees {v1, v2, v6}; y3 sees {v3, v4, v1}.
        let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.extend([(7, 0), (7, 1), (7, 5), (8, 2), (8, 3), (8, 0)]);
        let g = Graph::new(9, edges).unwrap();
        let d = decompose_c7(&g, [0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(d.y(1).to_vec(), vec![7]);
        assert_eq!(d.y(3).to_vec(), vec![8]);
        let v = validate_c7_claims(&g, &d);
        assert!(v.iter().any(|x| x.property == "C7.xyz.Y"));
        assert!(!check_class_membership(&g).is_member());
    }

    #[test]
    fn labelings_are_dihedral() {
        let l = c5_labelings([0, 1, 2, 3, 4]);
        assert_eq!(l[0], [0, 1, 2, 3, 4]);
        assert_eq!(l[1], [1, 2, 3, 4, 0]);
        assert_eq!(l[5], [0, 4, 3, 2, 1]);
        let mut all: Vec<_> = l.to_vec();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn classify_examples() {
        // b in B_1 = {v1, v2}, b' in B_2 = {v2, v3}.
        let g = c5_plus(&[&[0, 1], &[1, 2]], &[]);
        assert_eq!(classify_case(&g).unwrap().tag, CaseTag::F1);

        let g = c5_plus(&[&[0, 1]], &[]);
        let c = classify_case(&g).unwrap();
        assert_eq!(c.tag, CaseTag::F4);
        assert_eq!(c.anchor, vec![0, 1, 2, 3, 4]);

        assert_eq!(classify_case(&complete_graph(7).unwrap()).unwrap().tag, CaseTag::Perfect);
        let c = classify_case(&gstar()).unwrap();
        assert_eq!(c.tag, CaseTag::C7Case);
        assert_eq!(c.anchor, vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(classify_case(&cycle_graph(5).unwrap()).unwrap().tag, CaseTag::PureC5);

        let bad = cycle_graph(9).unwrap();
        assert!(matches!(classify_case(&bad), Err(ClassifyError::NotAMember(_))));
    }

    #[test]
    fn decomposition_json() {
        let d = decompose_c5(&c5_plus(&[&[0, 1]], &[]), C).unwrap();
        let j = serde_json::to_value(&d).unwrap();
        assert_eq!(j["cycle"], serde_json::json!([0, 1, 2, 3, 4]));
        assert_eq!(j["B1"], serde_json::json!([5]));
        assert_eq!(j["T"], serde_json::json!([]));
    }
}
