//! The case-analysis coloring. Each leaf of the case tree prescribes a list
//! of color classes in terms of the C5 or C7 decomposition; the lists are
//! built exactly as prescribed and then checked, so any gap in the case
//! analysis surfaces as a [`LemmaViolation`] instead of a wrong coloring.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{
    classify_member, decompose_c5, decompose_c7, C5Decomposition, C7Decomposition, CaseTag,
    DecomposeError,
};
use crate::detect::{check_class_membership, ClassReport};
use crate::graph::{is_proper_coloring, Coloring, ColoringCheck, Graph, PartitionError, VertexSet};
use crate::oracles::{chromatic_number, clique_number, color_two_clique_union, OracleError, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundClaim {
    #[serde(rename = "≤6")]
    AtMostSix,
    #[serde(rename = "=ω")]
    EqualsOmega,
}

impl fmt::Display for BoundClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundClaim::AtMostSix => "≤6",
            BoundClaim::EqualsOmega => "=ω",
        })
    }
}

/// Data of the branches that color two disjoint parts with a shared
/// palette and then add fresh colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaBranchData {
    /// Union of two cliques, colored optimally.
    pub w1: Vec<usize>,
    /// Bipartite part with no edges to `w1`.
    pub w2: Vec<usize>,
    /// Cross pairs of `w1` sharing a color.
    pub matching: Vec<(usize, usize)>,
    /// Clique colored with one fresh color per vertex (F4 tail only).
    pub m: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub case: CaseTag,
    /// Labeled cycle the leaf was evaluated on (after any relabeling).
    pub anchor: Vec<usize>,
    /// Path through the case tree, e.g. `F2/B3/omega`.
    pub leaf: String,
    /// Classes in prescribed order; empty classes are kept.
    pub classes: Vec<Vec<usize>>,
    /// Number of nonempty classes.
    pub colors_used: usize,
    pub bound_claim: BoundClaim,
    pub omega: Option<usize>,
    pub validated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_branch_data: Option<OmegaBranchData>,
    /// Set when the prescribed classes failed and the exact oracle was used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback: Option<String>,
}

impl ColoringCertificate {
    pub fn coloring(&self) -> Coloring {
        Coloring::new(self.classes.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// Both ends of an edge landed in one class.
    MonochromaticEdge { class: usize, u: usize, v: usize },
    /// A vertex is in no class.
    Uncovered(usize),
    /// A vertex is in two classes.
    Repeated(usize),
    /// The leaf's bound claim does not hold for the classes produced.
    Bound { claim: BoundClaim, colors_used: usize, omega: usize },
    /// An adjacency fact the leaf depends on does not hold.
    Precondition(String),
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::MonochromaticEdge { class, u, v } => {
                write!(f, "edge {u}-{v} inside class S_{}", class + 1)
            }
            ViolationKind::Uncovered(v) => write!(f, "vertex {v} is in no class"),
            ViolationKind::Repeated(v) => write!(f, "vertex {v} is in two classes"),
            ViolationKind::Bound {
                claim,
                colors_used,
                omega,
            } => write!(f, "claim {claim} fails: {colors_used} colors, omega {omega}"),
            ViolationKind::Precondition(s) => write!(f, "precondition failed: {s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[error("{case} leaf {leaf} on {anchor:?}: {kind}")]
pub struct LemmaViolation {
    pub case: CaseTag,
    pub leaf: String,
    pub anchor: Vec<usize>,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("graph is not (P2+P4, K4-e)-free")]
    NotAMember(ClassReport),
    #[error(transparent)]
    LemmaViolation(#[from] LemmaViolation),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorOptions {
    /// Replace a failing leaf by an exact coloring (logged).
    pub fallback_exact: bool,
    /// Node budget for the chromatic-number oracle.
    pub budget: u64,
}

impl Default for ColorOptions {
    fn default() -> Self {
        ColorOptions {
            fallback_exact: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Colors a class member with at most `max(6, omega)` colors.
pub fn color_near_optimal(g: &Graph) -> Result<ColoringCertificate, ColorError> {
    color_with_options(g, &ColorOptions::default())
}

pub fn color_with_options(g: &Graph, opts: &ColorOptions) -> Result<ColoringCertificate, ColorError> {
    let report = check_class_membership(g);
    if !report.is_member() {
        return Err(ColorError::NotAMember(report));
    }
    let cls = classify_member(g)?;
    let c5 = || -> [usize; 5] { cls.anchor.clone().try_into().unwrap() };
    let result = match cls.tag {
        CaseTag::F1 => color_case_f1(g, c5()),
        CaseTag::F2 => color_case_f2(g, c5()),
        CaseTag::F3 => color_case_f3(g, c5()),
        CaseTag::F4 => color_case_f4(g, c5()),
        CaseTag::PureC5 => color_case_pure_c5(g, c5()),
        CaseTag::C7Case => color_case_c7(g, cls.anchor.clone().try_into().unwrap()),
        CaseTag::Perfect => color_perfect_fallback_with_budget(g, opts.budget),
    };
    match result {
        Err(ColorError::LemmaViolation(v)) if opts.fallback_exact => exact_fallback(g, v, opts.budget),
        other => other,
    }
}

fn exact_fallback(g: &Graph, v: LemmaViolation, budget: u64) -> Result<ColoringCertificate, ColorError> {
    log::warn!("falling back to the exact oracle: {v}");
    let omega = clique_number(g).0;
    let exact = chromatic_number(g, budget)?;
    let claim = if exact.chi == omega {
        BoundClaim::EqualsOmega
    } else if exact.chi <= 6 {
        BoundClaim::AtMostSix
    } else {
        return Err(v.into());
    };
    Ok(ColoringCertificate {
        case: v.case,
        anchor: v.anchor.clone(),
        leaf: format!("{}/exact", v.leaf),
        colors_used: exact.coloring.colors_used(),
        classes: exact.coloring.classes,
        bound_claim: claim,
        omega: Some(omega),
        validated: true,
        omega_branch_data: None,
        fallback: Some(v.to_string()),
    })
}

/// What a leaf prescribes, before validation.
struct Plan {
    leaf: String,
    anchor: Vec<usize>,
    classes: Vec<VertexSet>,
    claim: BoundClaim,
    omega_branch: Option<OmegaBranchData>,
}

/// A failed precondition inside a leaf.
struct Unmet {
    leaf: String,
    anchor: Vec<usize>,
    what: String,
}

fn unmet(leaf: &str, anchor: &[usize], what: impl Into<String>) -> Unmet {
    Unmet {
        leaf: leaf.to_string(),
        anchor: anchor.to_vec(),
        what: what.into(),
    }
}

/// Checks partition, stability and the bound claim, then emits the certificate.
fn finish(g: &Graph, case: CaseTag, planned: Result<Plan, Unmet>) -> Result<ColoringCertificate, ColorError> {
    let plan = match planned {
        Ok(p) => p,
        Err(u) => {
            return Err(LemmaViolation {
                case,
                leaf: u.leaf,
                anchor: u.anchor,
                kind: ViolationKind::Precondition(u.what),
            }
            .into())
        }
    };
    let fail = |kind| -> ColorError {
        LemmaViolation {
            case,
            leaf: plan.leaf.clone(),
            anchor: plan.anchor.clone(),
            kind,
        }
        .into()
    };
    let mut seen = VertexSet::new(g.n());
    for (j, s) in plan.classes.iter().enumerate() {
        if let Some((u, v)) = g.edge_within(s) {
            return Err(fail(ViolationKind::MonochromaticEdge { class: j, u, v }));
        }
        if let Some(v) = s.intersection(&seen).first() {
            return Err(fail(ViolationKind::Repeated(v)));
        }
        seen.union_with(s);
    }
    if let Some(v) = g.vertices().difference(&seen).first() {
        return Err(fail(ViolationKind::Uncovered(v)));
    }
    let omega = clique_number(g).0;
    let colors_used = plan.classes.iter().filter(|s| !s.is_empty()).count();
    let holds = match plan.claim {
        BoundClaim::AtMostSix => colors_used <= 6,
        BoundClaim::EqualsOmega => colors_used == omega,
    };
    if !holds {
        return Err(fail(ViolationKind::Bound {
            claim: plan.claim,
            colors_used,
            omega,
        }));
    }
    Ok(ColoringCertificate {
        case,
        anchor: plan.anchor,
        leaf: plan.leaf,
        classes: plan.classes.iter().map(|s| s.to_vec()).collect(),
        colors_used,
        bound_claim: plan.claim,
        omega: Some(omega),
        validated: true,
        omega_branch_data: plan.omega_branch,
        fallback: None,
    })
}

/// `{v_i : i in cyc} ∪ named ∪ parts`
fn class(d: &C5Decomposition, cyc: &[i32], named: &[usize], parts: &[&VertexSet]) -> VertexSet {
    let mut s = VertexSet::from_iter(d.capacity(), cyc.iter().map(|&i| d.v(i)).chain(named.iter().copied()));
    for p in parts {
        s.union_with(p);
    }
    s
}

fn class7(d: &C7Decomposition, cyc: &[i32], parts: &[&VertexSet]) -> VertexSet {
    let mut s = VertexSet::from_iter(d.capacity(), cyc.iter().map(|&i| d.v(i)));
    for p in parts {
        s.union_with(p);
    }
    s
}

fn singleton(n: usize, v: Option<usize>) -> VertexSet {
    VertexSet::from_iter(n, v)
}

fn six(leaf: &str, d: &C5Decomposition, classes: Vec<VertexSet>) -> Plan {
    Plan {
        leaf: leaf.to_string(),
        anchor: d.cycle().to_vec(),
        classes,
        claim: BoundClaim::AtMostSix,
        omega_branch: None,
    }
}

/// Relabels so the new `w_k` is `v_(map(k))`.
fn relabel5(cycle: [usize; 5], map: impl Fn(i32) -> i32) -> [usize; 5] {
    std::array::from_fn(|j| cycle[(map(j as i32 + 1) - 1).rem_euclid(5) as usize])
}

fn relabel7(cycle: [usize; 7], map: impl Fn(i32) -> i32) -> [usize; 7] {
    std::array::from_fn(|j| cycle[(map(j as i32 + 1) - 1).rem_euclid(7) as usize])
}

/// Shared shape of the omega branches: color `k1 ∪ k2` optimally, give the
/// bipartite part `w2a ∪ w2b` the first two colors of that palette, then
/// add the two fresh stable sets.
fn omega_branch(
    g: &Graph,
    d: &C5Decomposition,
    leaf: &str,
    (k1, k2): (VertexSet, VertexSet),
    (w2a, w2b): (VertexSet, VertexSet),
    fresh: [VertexSet; 2],
) -> Result<Plan, Unmet> {
    let anchor = d.cycle();
    let w1 = k1.union(&k2);
    let w2 = w2a.union(&w2b);
    if let Some((u, v)) = g.edge_between(&w1, &w2) {
        return Err(unmet(leaf, &anchor, format!("W1 and W2 are joined by edge {u}-{v}")));
    }
    let two = color_two_clique_union(g, &k1.to_vec(), &k2.to_vec())
        .map_err(|e| unmet(leaf, &anchor, format!("W1 is not two disjoint cliques: {e}")))?;
    let n = g.n();
    let width = two.colors_used().max(2);
    let mut classes: Vec<VertexSet> = (0..width)
        .map(|j| VertexSet::from_iter(n, two.classes.get(j).into_iter().flatten().copied()))
        .collect();
    classes[0].union_with(&w2a);
    classes[1].union_with(&w2b);
    classes.extend(fresh);
    Ok(Plan {
        leaf: leaf.to_string(),
        anchor: anchor.to_vec(),
        classes,
        claim: BoundClaim::EqualsOmega,
        omega_branch: Some(OmegaBranchData {
            w1: w1.to_vec(),
            w2: w2.to_vec(),
            matching: two.matching,
            m: Vec::new(),
        }),
    })
}

/// `B_1` and `B_5` nonempty.
pub fn color_case_f1(g: &Graph, anchor: [usize; 5]) -> Result<ColoringCertificate, ColorError> {
    let d = decompose_c5(g, anchor)?;
    finish(g, CaseTag::F1, Ok(plan_f1(&d)))
}

fn plan_f1(d: &C5Decomposition) -> Plan {
    let n = d.capacity();
    let b3p = singleton(n, d.b(3).first());
    six(
        "F1",
        d,
        vec![
            class(d, &[3], &[], &[d.a(1), d.b(1), d.b(5), d.d(1)]),
            class(d, &[], &[], &[d.a(2), d.b(2), d.d(3)]),
            class(d, &[4], &[], &[d.a(3), d.t()]),
            class(d, &[2, 5], &[], &[d.a(4), &b3p]),
            class(d, &[1], &[], &[d.a(5), d.b(4), d.d(4)]),
            class(d, &[], &[], &[&d.z_all().difference(d.z(1)), &d.b(3).difference(&b3p)]),
        ],
    )
}

/// `B_1` and `A_3` nonempty, no F1.
pub fn color_case_f2(g: &Graph, anchor: [usize; 5]) -> Result<ColoringCertificate, ColorError> {
    let d = decompose_c5(g, anchor)?;
    finish(g, CaseTag::F2, plan_f2(g, &d))
}

fn plan_f2(g: &Graph, d: &C5Decomposition) -> Result<Plan, Unmet> {
    let n = d.capacity();
    let anchor = d.cycle();
    let (Some(b1), Some(a3)) = (d.b(1).first(), d.a(3).first()) else {
        return Err(unmet("F2", &anchor, "B_1 or A_3 is empty"));
    };

    if let Some(b4) = d.b(4).first() {
        return Ok(six(
            "F2/B4",
            d,
            vec![
                class(d, &[4], &[b1], &[d.a(1), d.d(1), d.z(3)]),
                class(d, &[5], &[], &[d.a(2), &d.b(1).difference(&singleton(n, Some(b1))), d.d(2)]),
                class(d, &[2], &[], &[d.a(3), d.t()]),
                class(d, &[1], &[b4], &[d.a(4), d.d(4)]),
                class(d, &[3], &[], &[&d.b(4).difference(&singleton(n, Some(b4))), d.a(5), d.d(5)]),
                class(d, &[], &[], &[d.d(3), d.z(1), d.z(2), d.z(4), d.z(5)]),
            ],
        ));
    }

    if d.b(1).len() >= 2 {
        let leaf = "F2/B1";
        if d.b(1).len() > 2 {
            return Err(unmet(leaf, &anchor, "|B_1| > 2 although A_3 is nonempty"));
        }
        let seen: Vec<usize> = d.b(1).iter().filter(|&b| g.has_edge(a3, b)).collect();
        let [b1] = seen[..] else {
            return Err(unmet(leaf, &anchor, format!("a_3 = {a3} must see exactly one vertex of B_1")));
        };
        let b1p = d.b(1).iter().find(|&b| b != b1).unwrap();
        let b3p = singleton(n, d.b(3).first());
        return Ok(six(
            leaf,
            d,
            vec![
                class(d, &[4], &[b1p], &[d.a(3)]),
                class(d, &[3, 5], &[b1], &[d.a(1), d.d(3)]),
                class(d, &[], &[], &[d.a(4), &b3p, d.z(2)]),
                class(d, &[2], &[], &[d.a(5), d.t()]),
                class(d, &[1], &[], &[&d.b(3).difference(&b3p), d.d(4), d.z(5)]),
                class(d, &[], &[], &[d.d(5), d.z(1), d.z(3), d.z(4)]),
            ],
        ));
    }

    if let Some(b3) = d.b(3).first() {
        if d.b(3).len() <= 2 {
            return Ok(six(
                "F2/B3",
                d,
                vec![
                    class(d, &[3], &[b1], &[d.a(1), d.d(1)]),
                    class(d, &[4], &[], &[d.a(2), d.d(2), d.z(5)]),
                    class(d, &[5], &[b3], &[d.a(3), d.d(3)]),
                    class(d, &[1], &[], &[d.a(4), &d.b(3).difference(&singleton(n, Some(b3))), d.d(4)]),
                    class(d, &[2], &[], &[d.a(5), d.t()]),
                    class(d, &[], &[], &[d.d(5), d.z(1), d.z(2), d.z(3), d.z(4)]),
                ],
            ));
        }
        return omega_branch(
            g,
            d,
            "F2/B3/omega",
            (d.b(1).union(d.z(4)), d.b(3).union(d.z(1))),
            (class(d, &[], &[], &[d.a(3), d.d(2), d.z(5)]), class(d, &[5], &[], &[d.d(5)])),
            [
                class(d, &[1, 3], &[], &[d.a(4), d.d(1), d.z(2)]),
                class(d, &[2, 4], &[], &[d.a(1), d.z(3), d.t()]),
            ],
        );
    }

    if !d.d(1).is_empty() {
        let leaf = "F2/D1";
        if let Some(a) = d.a(3).iter().find(|&a| !g.has_edge(a, b1)) {
            return Err(unmet(leaf, &anchor, format!("[A_3, b_1] not complete at {a}")));
        }
        if d.a(2).is_empty() || d.a(4).is_empty() {
            return Ok(six(
                leaf,
                d,
                vec![
                    class(d, &[], &[b1], &[d.d(2), d.d(5), d.z(3)]),
                    class(d, &[2, 5], &[], &[d.a(1), d.a(3), d.z(1)]),
                    class(d, &[1, 3], &[], &[d.a(5), d.t()]),
                    class(d, &[], &[], &[d.d(1), d.d(3), d.z(2), d.z(4), d.z(5)]),
                    class(d, &[4], &[], &[d.d(4)]),
                    class(d, &[], &[], &[d.a(2), d.a(4)]),
                ],
            ));
        }
        if g.non_edge_between(d.a(3), d.a(4)).is_some() {
            return Err(unmet(leaf, &anchor, "[A_3, A_4] is not complete"));
        }
        return Ok(six(
            "F2/D1/A2A4",
            d,
            vec![
                class(d, &[], &[b1], &[d.d(2), d.d(5), d.z(3)]),
                class(d, &[2, 5], &[], &[d.a(4), d.z(1)]),
                class(d, &[1, 3], &[], &[d.a(5), d.t()]),
                class(d, &[], &[], &[d.d(1), d.d(3), d.z(2), d.z(4), d.z(5)]),
                class(d, &[4], &[], &[d.a(3), d.d(4)]),
                class(d, &[], &[], &[d.a(2)]),
            ],
        ));
    }

    let head = [
        class(d, &[3, 5], &[b1], &[d.a(1), d.d(5)]),
        class(d, &[], &[], &[d.a(2), d.d(2), d.z(4)]),
        class(d, &[2, 4], &[], &[d.a(5), d.t()]),
    ];
    let z = class(d, &[], &[], &[d.d(4), d.z(1), d.z(2), d.z(3), d.z(5)]);
    if g.edge_between(d.a(3), d.a(4)).is_none() {
        let mut classes = head.to_vec();
        classes.extend([class(d, &[1], &[], &[d.a(3), d.a(4)]), d.d(3).clone(), z]);
        return Ok(six("F2/final/A3A4-empty", d, classes));
    }
    if g.non_edge_between(d.a(3), d.a(4)).is_some() {
        return Err(unmet("F2/final", &anchor, "[A_3, A_4] neither empty nor complete"));
    }
    let mut classes = head.to_vec();
    classes.extend([class(d, &[1], &[], &[d.a(3)]), class(d, &[], &[], &[d.a(4), d.d(3)]), z]);
    Ok(six("F2/final/A3A4-complete", d, classes))
}

/// `B_1` and `B_4` nonempty, no F1 or F2.
pub fn color_case_f3(g: &Graph, anchor: [usize; 5]) -> Result<ColoringCertificate, ColorError> {
    let d = decompose_c5(g, anchor)?;
    if d.b(1).len() < 3 && d.b(4).len() >= 3 {
        // w_k = v_(6-k) swaps the roles of B_1 and B_4.
        let d = decompose_c5(g, relabel5(anchor, |k| 6 - k))?;
        return finish(g, CaseTag::F3, plan_f3(g, &d));
    }
    finish(g, CaseTag::F3, plan_f3(g, &d))
}

fn plan_f3(g: &Graph, d: &C5Decomposition) -> Result<Plan, Unmet> {
    let n = d.capacity();
    let (Some(b1), Some(b4)) = (d.b(1).first(), d.b(4).first()) else {
        return Err(unmet("F3", &d.cycle(), "B_1 or B_4 is empty"));
    };
    if d.b(1).len() <= 2 && d.b(4).len() <= 2 {
        return Ok(six(
            "F3",
            d,
            vec![
                class(d, &[1, 4], &[], &[d.a(2), d.t()]),
                class(d, &[2], &[b4], &[d.a(4), d.d(4)]),
                class(d, &[3, 5], &[b1], &[d.d(5)]),
                class(d, &[], &[], &[&d.b(1).difference(&singleton(n, Some(b1))), d.z(2)]),
                class(d, &[], &[], &[&d.b(4).difference(&singleton(n, Some(b4))), d.d(1), d.d(3)]),
                class(d, &[], &[], &[d.d(2), d.z(1), d.z(3), d.z(4), d.z(5)]),
            ],
        ));
    }
    omega_branch(
        g,
        d,
        "F3/omega",
        (d.b(1).union(d.z(4)), d.b(4).union(d.z(2))),
        (d.d(5).union(d.z(3)), class(d, &[3], &[], &[d.d(3)])),
        [
            class(d, &[1, 4], &[], &[d.a(2), d.d(4), d.z(5)]),
            class(d, &[2, 5], &[], &[d.a(4), d.z(1), d.t()]),
        ],
    )
}

/// Only `B_1` nonempty among the B sets, no F1, F2 or F3.
pub fn color_case_f4(g: &Graph, anchor: [usize; 5]) -> Result<ColoringCertificate, ColorError> {
    let d = decompose_c5(g, anchor)?;
    if d.d(1).is_empty() && !d.d(2).is_empty() {
        // w_k = v_(3-k) fixes B_1 and swaps D_1 with D_2.
        let d = decompose_c5(g, relabel5(anchor, |k| 3 - k))?;
        return finish(g, CaseTag::F4, plan_f4(g, &d));
    }
    finish(g, CaseTag::F4, plan_f4(g, &d))
}

fn plan_f4(g: &Graph, d: &C5Decomposition) -> Result<Plan, Unmet> {
    let n = d.capacity();
    let anchor = d.cycle();
    let b1s = d.b(1).to_vec();
    let Some(&b1) = b1s.first() else {
        return Err(unmet("F4", &anchor, "B_1 is empty"));
    };

    if !d.d(1).is_empty() {
        return Ok(six(
            "F4/D1",
            d,
            vec![
                class(d, &[3, 5], &[b1], &[d.a(1), d.d(5)]),
                class(d, &[], &[], &[d.a(2), d.d(3), d.z(4)]),
                class(d, &[2], &[], &[d.a(4), d.t()]),
                class(d, &[1, 4], &[], &[d.d(1)]),
                d.d(2).clone(),
                class(d, &[], &[], &[d.d(4), d.z(1), d.z(2), d.z(3), d.z(5)]),
            ],
        ));
    }

    if b1s.len() <= 3 {
        let b1p = singleton(n, b1s.get(1).copied());
        let b1pp = singleton(n, b1s.get(2).copied());
        return Ok(six(
            "F4/B1-small",
            d,
            vec![
                class(d, &[1], &[], &[d.a(4), d.t()]),
                class(d, &[4], &[b1], &[d.a(1), d.a(2)]),
                class(d, &[3, 5], &[], &[&b1p, d.d(3)]),
                class(d, &[], &[], &[&b1pp, d.d(5)]),
                class(d, &[2], &[], &[d.d(4), d.z(1), d.z(3)]),
                class(d, &[], &[], &[d.z(2), d.z(4), d.z(5)]),
            ],
        ));
    }

    let leaf = "F4/tail";
    let (x, y, w) = (b1s[1], b1s[2], b1s[3]);
    let a4p = VertexSet::from_iter(n, d.a(4).iter().filter(|&a| !g.has_edge(a, x)));
    let a4pp = d.a(4).difference(&a4p);
    if let Some(a) = a4pp.iter().find(|&a| g.has_edge(a, y)) {
        return Err(unmet(leaf, &anchor, format!("{a} in A_4 sees both x = {x} and y = {y}")));
    }
    let mut m = d.z(4).clone();
    m.union_with(&VertexSet::from_iter(n, b1s[4..].iter().copied()));
    let mut classes = vec![
        class(d, &[3, 5], &[b1], &[d.a(2), d.d(3)]),
        class(d, &[], &[w], &[d.a(1), d.d(5)]),
        class(d, &[], &[x], &[&a4p, d.z(1)]),
        class(d, &[], &[y], &[&a4pp]),
        class(d, &[1], &[], &[d.d(4), d.z(2), d.z(5)]),
        class(d, &[2, 4], &[], &[d.z(3), d.t()]),
    ];
    classes.extend(m.iter().map(|v| singleton(n, Some(v))));
    Ok(Plan {
        leaf: leaf.to_string(),
        anchor: anchor.to_vec(),
        classes,
        claim: BoundClaim::EqualsOmega,
        omega_branch: Some(OmegaBranchData {
            w1: Vec::new(),
            w2: Vec::new(),
            matching: Vec::new(),
            m: m.to_vec(),
        }),
    })
}

/// A C5 exists but every B set is empty for every labeled C5.
pub fn color_case_pure_c5(g: &Graph, anchor: [usize; 5]) -> Result<ColoringCertificate, ColorError> {
    let d = decompose_c5(g, anchor)?;
    finish(g, CaseTag::PureC5, Ok(plan_pure_c5(&d)))
}

fn plan_pure_c5(d: &C5Decomposition) -> Plan {
    six(
        "PureC5",
        d,
        vec![
            class(d, &[2, 4], &[], &[d.a(1), d.d(2), d.z(3)]),
            class(d, &[], &[], &[d.a(2), d.d(3)]),
            class(d, &[], &[], &[d.a(3), d.d(4), d.z(1)]),
            class(d, &[3, 5], &[], &[d.a(4), d.d(5)]),
            class(d, &[1], &[], &[d.a(5), d.t()]),
            class(d, &[], &[], &[d.d(1), d.z(2), d.z(4), d.z(5)]),
        ],
    )
}

/// C5-free with an induced C7: three colors.
pub fn color_case_c7(g: &Graph, anchor: [usize; 7]) -> Result<ColoringCertificate, ColorError> {
    let d = decompose_c7(g, anchor)?;
    let rot = |i: i32| relabel7(anchor, move |k| k + i - 1);
    let plan = if let Some(i) = d.first_x() {
        plan_c7_x(&decompose_c7(g, rot(i))?)
    } else if let Some(i) = d.first_y() {
        plan_c7_y(&decompose_c7(g, rot(i))?, "C7/Y")
    } else if d.first_l().is_some() {
        // w_k = v_(2-k) turns every L_i trace into a Y_(1-i) trace.
        let rev = relabel7(anchor, |k| 2 - k);
        let i = decompose_c7(g, rev)?.first_y().expect("reversal maps L to Y");
        plan_c7_y(&decompose_c7(g, relabel7(rev, move |k| k + i - 1))?, "C7/L")
    } else if let Some(i) = d.first_empty_q() {
        plan_c7_q_empty(&decompose_c7(g, rot(i))?)
    } else {
        plan_c7_q_full(&d)
    };
    finish(g, CaseTag::C7Case, Ok(plan))
}

fn three(leaf: &str, d: &C7Decomposition, classes: Vec<VertexSet>) -> Plan {
    Plan {
        leaf: leaf.to_string(),
        anchor: d.cycle().to_vec(),
        classes,
        claim: BoundClaim::AtMostSix,
        omega_branch: None,
    }
}

fn plan_c7_x(d: &C7Decomposition) -> Plan {
    three(
        "C7/X",
        d,
        vec![
            class7(d, &[5], &[d.q(5), d.x(1), d.y(3), d.l(6)]),
            class7(d, &[2, 4, 7], &[d.q(4), d.q(7), d.m()]),
            class7(d, &[1, 3, 6], &[d.q(3), d.q(6)]),
        ],
    )
}

fn plan_c7_y(d: &C7Decomposition, leaf: &str) -> Plan {
    if d.l(3).is_empty() {
        three(
            leaf,
            d,
            vec![
                class7(d, &[5], &[d.q(2), d.q(5), d.y(1), d.l(7)]),
                class7(d, &[1, 3, 6], &[d.q(3), d.q(6), d.l(4)]),
                class7(d, &[2, 4, 7], &[d.q(4), d.q(7), d.l(5), d.m()]),
            ],
        )
    } else {
        three(
            &format!("{leaf}/L3"),
            d,
            vec![
                class7(d, &[3, 5, 7], &[d.q(3), d.q(7), d.y(1)]),
                class7(d, &[2], &[d.q(2), d.q(5), d.l(3)]),
                class7(d, &[1, 4, 6], &[d.q(6), d.m()]),
            ],
        )
    }
}

fn plan_c7_q_empty(d: &C7Decomposition) -> Plan {
    three(
        "C7/Q-empty",
        d,
        vec![
            class7(d, &[1, 3, 6], &[d.q(3), d.q(6)]),
            class7(d, &[2, 5], &[d.q(2), d.q(5)]),
            class7(d, &[4, 7], &[d.q(4), d.q(7), d.m()]),
        ],
    )
}

fn plan_c7_q_full(d: &C7Decomposition) -> Plan {
    three(
        "C7/Q-full",
        d,
        vec![
            class7(d, &[1, 3, 5], &[d.q(1), d.q(3), d.q(5)]),
            class7(d, &[2, 4, 6], &[d.q(2), d.q(4), d.q(6)]),
            class7(d, &[7], &[d.q(7), d.m()]),
        ],
    )
}

/// No induced C5 or C7: optimal coloring from the oracle, which must use
/// exactly omega colors.
pub fn color_perfect_fallback(g: &Graph) -> Result<ColoringCertificate, ColorError> {
    color_perfect_fallback_with_budget(g, DEFAULT_BUDGET)
}

pub fn color_perfect_fallback_with_budget(g: &Graph, budget: u64) -> Result<ColoringCertificate, ColorError> {
    let exact = chromatic_number(g, budget)?;
    let plan = Plan {
        leaf: "Perfect".to_string(),
        anchor: Vec::new(),
        classes: exact
            .coloring
            .classes
            .iter()
            .map(|c| VertexSet::from_iter(g.n(), c.iter().copied()))
            .collect(),
        claim: BoundClaim::EqualsOmega,
        omega_branch: None,
    };
    finish(g, CaseTag::Perfect, Ok(plan))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("classes do not partition the vertex set: {0}")]
    Partition(#[from] PartitionError),
    #[error("edge {0}-{1} is monochromatic")]
    Monochromatic(usize, usize),
    #[error("colors_used is {declared} but {actual} classes are nonempty")]
    ColorsUsed { declared: usize, actual: usize },
    #[error("omega is recorded as {declared:?} but is {actual}")]
    Omega { declared: Option<usize>, actual: usize },
    #[error("bound claim {claim} does not hold with {colors_used} colors and omega {omega}")]
    Claim { claim: BoundClaim, colors_used: usize, omega: usize },
    #[error("certificate is marked unvalidated")]
    Unvalidated,
}

/// Re-checks a certificate against `g` without trusting any derived field.
pub fn verify_certificate(g: &Graph, cert: &ColoringCertificate) -> Result<(), CertificateError> {
    if !cert.validated {
        return Err(CertificateError::Unvalidated);
    }
    let coloring = cert.coloring();
    if let ColoringCheck::Monochromatic(u, v) = is_proper_coloring(g, &coloring)? {
        return Err(CertificateError::Monochromatic(u, v));
    }
    let actual = coloring.colors_used();
    if actual != cert.colors_used {
        return Err(CertificateError::ColorsUsed {
            declared: cert.colors_used,
            actual,
        });
    }
    let omega = clique_number(g).0;
    if cert.omega.is_some_and(|w| w != omega) {
        return Err(CertificateError::Omega {
            declared: cert.omega,
            actual: omega,
        });
    }
    let holds = match cert.bound_claim {
        BoundClaim::AtMostSix => actual <= 6,
        BoundClaim::EqualsOmega => actual == omega,
    };
    if !holds {
        return Err(CertificateError::Claim {
            claim: cert.bound_claim,
            colors_used: actual,
            omega,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::{complete_graph, cycle_graph, gstar};

    fn c5_plus(extra: &[&[usize]], inner: &[(usize, usize)]) -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for (k, nb) in extra.iter().enumerate() {
            edges.extend(nb.iter().map(|&c| (5 + k, c)));
        }
        edges.extend_from_slice(inner);
        Graph::new(5 + extra.len(), edges).unwrap()
    }

    #[test]
    fn bare_c5() {
        let c = color_near_optimal(&cycle_graph(5).unwrap()).unwrap();
        assert_eq!(c.case, CaseTag::PureC5);
        assert_eq!(c.colors_used, 3);
        assert_eq!(c.classes.len(), 6);
        assert_eq!(c.classes[0], vec![1, 3]);
        assert_eq!(c.classes[3], vec![2, 4]);
        assert_eq!(c.classes[4], vec![0]);
        assert_eq!(c.bound_claim, BoundClaim::AtMostSix);
        verify_certificate(&cycle_graph(5).unwrap(), &c).unwrap();
    }

    #[test]
    fn pure_c5_placements() {
        // a in A_1, d in D_3, z in Z_1 (anchor 0..5 is the least labeling).
        let g = c5_plus(&[&[0], &[1, 3], &[3, 0, 2]], &[]);
        let c = color_case_pure_c5(&g, [0, 1, 2, 3, 4]).unwrap();
        assert!(c.classes[0].contains(&5));
        assert!(c.classes[1].contains(&6));
        assert!(c.classes[2].contains(&7));
    }

    #[test]
    fn complete_graphs_use_omega() {
        for n in 1..9 {
            let g = complete_graph(n).unwrap();
            let c = color_near_optimal(&g).unwrap();
            assert_eq!(c.case, CaseTag::Perfect);
            assert_eq!(c.colors_used, n);
            assert_eq!(c.bound_claim, BoundClaim::EqualsOmega);
        }
    }

    #[test]
    fn gstar_uses_the_x_leaf() {
        let c = color_near_optimal(&gstar()).unwrap();
        assert_eq!(c.case, CaseTag::C7Case);
        assert_eq!(c.leaf, "C7/X");
        assert!(c.colors_used <= 3);
        verify_certificate(&gstar(), &c).unwrap();
    }

    #[test]
    fn c7_leaves() {
        let c = color_near_optimal(&cycle_graph(7).unwrap()).unwrap();
        assert_eq!((c.leaf.as_str(), c.colors_used), ("C7/Q-empty", 3));
        // q in Q_3 sees v_2 and v_4.
        let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.extend([(7, 1), (7, 3)]);
        let g = Graph::new(8, edges).unwrap();
        let c = color_near_optimal(&g).unwrap();
        assert_eq!(c.leaf, "C7/Q-empty");
        assert_eq!(c.colors_used, 3);
    }

    #[test]
    fn f1_minimal() {
        let g = c5_plus(&[&[0, 1], &[4, 0]], &[]);
        let c = color_near_optimal(&g).unwrap();
        assert_eq!(c.case, CaseTag::F1);
        assert!(c.colors_used <= 6);
        verify_certificate(&g, &c).unwrap();
    }

    #[test]
    fn f2_minimal() {
        let g = c5_plus(&[&[0, 1], &[2]], &[]);
        let c = color_near_optimal(&g).unwrap();
        assert_eq!(c.case, CaseTag::F2);
        verify_certificate(&g, &c).unwrap();
    }

    #[test]
    fn f3_minimal() {
        let g = c5_plus(&[&[0, 1], &[3, 4]], &[]);
        let c = color_near_optimal(&g).unwrap();
        assert_eq!(c.case, CaseTag::F3);
        verify_certificate(&g, &c).unwrap();
    }

    #[test]
    fn f4_minimal() {
        let g = c5_plus(&[&[0, 1]], &[]);
        let c = color_near_optimal(&g).unwrap();
        assert_eq!(c.case, CaseTag::F4);
        assert!(c.colors_used <= 6);
        verify_certificate(&g, &c).unwrap();
    }

    #[test]
    fn rejects_non_members() {
        assert!(matches!(
            color_near_optimal(&cycle_graph(9).unwrap()),
            Err(ColorError::NotAMember(_))
        ));
    }

    #[test]
    fn violations_are_reported() {
        // Decomposition of a bare C5 run through the F1 leaf needs B_1 and
        // B_5; the PureC5 leaf applied to an F4 graph leaves b uncovered.
        let g = c5_plus(&[&[0, 1]], &[]);
        let e = color_case_pure_c5(&g, [0, 1, 2, 3, 4]).unwrap_err();
        let ColorError::LemmaViolation(v) = e else { panic!() };
        assert_eq!(v.kind, ViolationKind::Uncovered(5));
        let opts = ColorOptions {
            fallback_exact: true,
            ..ColorOptions::default()
        };
        assert!(color_with_options(&g, &opts).is_ok());
    }

    #[test]
    fn certificate_json_shape() {
        let c = color_near_optimal(&cycle_graph(5).unwrap()).unwrap();
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["case"], "PureC5");
        assert_eq!(j["bound_claim"], "≤6");
        assert_eq!(j["omega"], 2);
        assert_eq!(j["validated"], true);
        let back: ColoringCertificate = serde_json::from_value(j).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn tampered_certificate_fails() {
        let g = cycle_graph(5).unwrap();
        let mut c = color_near_optimal(&g).unwrap();
        c.classes[0].push(2);
        c.classes[3].retain(|&v| v != 2);
        assert!(matches!(verify_certificate(&g, &c), Err(CertificateError::Monochromatic(..))));
    }
}
