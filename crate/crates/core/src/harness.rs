//! Random class members and the property sweep over them.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colorer::{color_with_options, verify_certificate, ColorOptions};
use crate::decompose::{c5_labelings, decompose_c5, decompose_c7, validate_c5_properties, validate_c7_claims, CaseTag};
use crate::detect::{check_class_membership, enumerate_induced_c5, enumerate_induced_c7};
use crate::graph::{is_proper_coloring, Graph, GraphJson};
use crate::oracles::{chromatic_number, clique_number, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Rejection-sampled G(n, p).
    Gnp,
    /// C5 plus vertices added with chosen cycle traces.
    C5Seeded,
    /// C7 plus vertices added with chosen cycle traces, kept C5-free.
    C7Seeded,
    /// A clique plus vertices seeing none, one or all of it.
    CliqueSeeded,
    /// Cycles through the four kinds by sample index.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub p: f64,
    pub count: usize,
    pub seed: u64,
    pub generator: GeneratorKind,
    /// Attempts per sample for rejection sampling.
    pub max_tries: usize,
    /// Node budget per chromatic-number call.
    pub budget: u64,
    pub check_structure: bool,
    pub check_c7_claims: bool,
    /// Compare against the exact chromatic number on every sample.
    pub exact: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 5,
            n_max: 12,
            p: 0.3,
            count: 100,
            seed: 0,
            generator: GeneratorKind::Mixed,
            max_tries: 200,
            budget: DEFAULT_BUDGET,
            check_structure: true,
            check_c7_claims: true,
            exact: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub generator: GeneratorKind,
    pub graph: GraphJson,
    pub member: bool,
    pub case: Option<CaseTag>,
    pub leaf: Option<String>,
    pub colors_used: Option<usize>,
    pub omega: usize,
    pub chi_exact: Option<usize>,
    pub c5_free: bool,
    pub has_c7: bool,
    pub violations: usize,
}

/// One failed check, with the graph so it can be replayed alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub check: String,
    pub detail: String,
    pub graph: GraphJson,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub samples: usize,
    /// Samples for which no member was produced.
    pub skipped: usize,
    pub members: usize,
    pub colored: usize,
    pub proper: usize,
    pub within_bound: usize,
    pub chi_compared: usize,
    pub chi_within: usize,
    pub c5_labelings_checked: usize,
    pub c7_cycles_checked: usize,
    /// C5-free members with omega >= 4.
    pub perfect_candidates: usize,
    pub perfect_confirmed: usize,
    /// C5-free members containing a C7.
    pub c7_members: usize,
    pub c7_three_colors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub samples: Vec<SampleRecord>,
    pub counters: Counters,
    pub case_histogram: BTreeMap<CaseTag, usize>,
    pub leaf_histogram: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn is_member(g: &Graph) -> bool {
    check_class_membership(g).is_member()
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Rejection-sampled G(n, p) member.
pub fn sample_gnp_member(n: usize, p: f64, rng: &mut ChaCha8Rng, max_tries: usize) -> Option<Graph> {
    (0..max_tries).map(|_| gnp(n, p, rng)).find(is_member)
}

/// Grows `seed_edges` on `0..k` to `n` vertices. Each new vertex gets a
/// cycle trace from `roles` (with a role id), plus edges to earlier added
/// vertices: always to ones sharing a `clique_role`, never to ones sharing
/// another role, otherwise with probability `p`. A candidate is kept only
/// if `accept` holds; after `attempts` failures the vertex is added isolated.
#[allow(clippy::too_many_arguments)]
fn grow(
    n: usize,
    k: usize,
    seed_edges: Vec<(usize, usize)>,
    roles: &[(u32, Vec<usize>)],
    clique_role: impl Fn(u32) -> bool,
    p: f64,
    rng: &mut ChaCha8Rng,
    accept: impl Fn(&Graph) -> bool,
) -> Graph {
    let attempts = 30;
    let mut edges = seed_edges;
    let mut role_of: Vec<Option<u32>> = vec![None; k];
    for v in k..n {
        let mut chosen = None;
        for _ in 0..attempts {
            let (role, trace) = roles.choose(rng).unwrap();
            let mut cand = edges.clone();
            cand.extend(trace.iter().map(|&c| (c, v)));
            for (u, ru) in role_of.iter().enumerate().skip(k) {
                let join = match *ru {
                    Some(r) if r == *role => clique_role(r),
                    _ => rng.gen_bool(p),
                };
                if join {
                    cand.push((u, v));
                }
            }
            let g = Graph::new(v + 1, cand.iter().copied()).unwrap();
            if accept(&g) {
                chosen = Some((*role, cand));
                break;
            }
        }
        match chosen {
            Some((role, cand)) => {
                edges = cand;
                role_of.push(Some(role));
            }
            None => role_of.push(None),
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Fallback for orders too small for a seeded generator.
fn small_member(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    sample_gnp_member(n, p, rng, 1000).unwrap_or_else(|| Graph::empty(n))
}

fn cycle_edges(k: usize) -> Vec<(usize, usize)> {
    (0..k).map(|i| (i, (i + 1) % k)).collect()
}

/// Traces on the 1-based cycle positions, as 0-based vertex ids.
fn trace(k: i32, positions: &[i32]) -> Vec<usize> {
    positions.iter().map(|&i| (i - 1).rem_euclid(k) as usize).collect()
}

/// C5-seeded member. Role ids: 0 = T, 10+i = A_i, 20+i = B_i (cliques),
/// 30+i = D_i, 40+i = Z_i. B roles are listed twice to make them common.
pub fn sample_c5_seeded(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    if n < 5 {
        return small_member(n, p, rng);
    }
    let mut roles = vec![(0, vec![])];
    for i in 1..=5 {
        roles.push((10 + i as u32, trace(5, &[i])));
        roles.push((20 + i as u32, trace(5, &[i, i + 1])));
        roles.push((20 + i as u32, trace(5, &[i, i + 1])));
        roles.push((30 + i as u32, trace(5, &[i - 1, i + 1])));
        roles.push((40 + i as u32, trace(5, &[i - 2, i, i + 2])));
    }
    grow(n, 5, cycle_edges(5), &roles, |r| (21..=25).contains(&r), p, rng, is_member)
}

/// C7-seeded C5-free member. Role ids: 0 = M, 10+i = Q_i, 20+i = X_i,
/// 30+i = Y_i, 40+i = L_i.
pub fn sample_c7_seeded(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    if n < 7 {
        return small_member(n, p, rng);
    }
    let mut roles = vec![(0, vec![])];
    for i in 1..=7 {
        roles.push((10 + i as u32, trace(7, &[i - 1, i + 1])));
        roles.push((20 + i as u32, trace(7, &[i, i + 1, i + 3, i - 2])));
        roles.push((30 + i as u32, trace(7, &[i, i + 1, i - 2])));
        roles.push((40 + i as u32, trace(7, &[i, i + 1, i + 3])));
    }
    grow(n, 7, cycle_edges(7), &roles, |_| false, p, rng, |g| {
        is_member(g) && enumerate_induced_c5(g).is_empty()
    })
}

/// Clique-seeded member: `K_k` with `3 <= k <= min(n, 7)`; each new vertex
/// sees none, one, or all of the clique.
pub fn sample_clique_seeded(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    if n < 3 {
        return small_member(n, p, rng);
    }
    let k = rng.gen_range(3..=n.min(7));
    let seed_edges: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    let mut roles = vec![(0, vec![]), (1, (0..k).collect())];
    roles.extend((0..k).map(|c| (2 + c as u32, vec![c])));
    grow(n, k, seed_edges, &roles, |_| false, p, rng, is_member)
}

/// A class member on `n` vertices: rejection-sampled G(n, p) first, then
/// the C5-seeded generator. Deterministic per seed.
pub fn sample_class_member(n: usize, p: f64, seed: u64, max_tries: usize) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(g) = sample_gnp_member(n, p, &mut rng, max_tries) {
        return Some(g);
    }
    (0..max_tries).map(|_| sample_c5_seeded(n, p, &mut rng)).find(is_member)
}

fn kind_for(cfg: &SweepConfig, index: usize) -> GeneratorKind {
    match cfg.generator {
        GeneratorKind::Mixed => [
            GeneratorKind::Mixed,
            GeneratorKind::C5Seeded,
            GeneratorKind::C7Seeded,
            GeneratorKind::CliqueSeeded,
        ][index % 4],
        k => k,
    }
}

/// The graph for sample `index`; each index has its own ChaCha stream.
pub fn sample_for(cfg: &SweepConfig, index: usize) -> (GeneratorKind, Option<Graph>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(cfg.n_min..=cfg.n_max.max(cfg.n_min));
    let kind = kind_for(cfg, index);
    let g = match kind {
        GeneratorKind::Gnp => sample_gnp_member(n, cfg.p, &mut rng, cfg.max_tries),
        // Mixed sweeps always yield a member: a rejected G(n, p) slot is
        // refilled by the C5-seeded generator.
        GeneratorKind::Mixed if index.is_multiple_of(4) => {
            return match sample_gnp_member(n, cfg.p, &mut rng, cfg.max_tries) {
                Some(g) => (GeneratorKind::Gnp, Some(g)),
                None => (GeneratorKind::C5Seeded, Some(sample_c5_seeded(n, cfg.p, &mut rng))),
            };
        }
        GeneratorKind::C5Seeded => Some(sample_c5_seeded(n, cfg.p, &mut rng)),
        GeneratorKind::C7Seeded => Some(sample_c7_seeded(n, cfg.p, &mut rng)),
        GeneratorKind::CliqueSeeded => Some(sample_clique_seeded(n, cfg.p, &mut rng)),
        GeneratorKind::Mixed => unreachable!("index % 4 == 0 handled above"),
    };
    (kind, g)
}

struct Outcome {
    record: Option<SampleRecord>,
    counters: Counters,
    failures: Vec<Failure>,
}

/// Runs every check on one graph.
pub fn check_sample(cfg: &SweepConfig, index: usize, kind: GeneratorKind, g: &Graph) -> (SampleRecord, Counters, Vec<Failure>) {
    let mut c = Counters {
        samples: 1,
        ..Counters::default()
    };
    let mut failures = Vec::new();
    let json = GraphJson::from(g);
    let mut fail = |check: &str, detail: String| {
        failures.push(Failure {
            index,
            check: check.to_string(),
            detail,
            graph: json.clone(),
        })
    };

    let member = is_member(g);
    let omega = clique_number(g).0;
    let c5s = enumerate_induced_c5(g);
    let c5_free = c5s.is_empty();
    let c7s = if c5_free { enumerate_induced_c7(g) } else { Vec::new() };
    let has_c7 = !c7s.is_empty();
    let mut record = SampleRecord {
        index,
        generator: kind,
        graph: json.clone(),
        member,
        case: None,
        leaf: None,
        colors_used: None,
        omega,
        chi_exact: None,
        c5_free,
        has_c7,
        violations: 0,
    };
    if !member {
        fail("membership", "generator produced a non-member".to_string());
        record.violations = failures.len();
        return (record, c, failures);
    }
    c.members = 1;

    let opts = ColorOptions {
        fallback_exact: false,
        budget: cfg.budget,
    };
    let cert = match color_with_options(g, &opts) {
        Ok(cert) => Some(cert),
        Err(e) => {
            fail("color", e.to_string());
            None
        }
    };
    if let Some(cert) = &cert {
        c.colored = 1;
        record.case = Some(cert.case);
        record.leaf = Some(cert.leaf.clone());
        record.colors_used = Some(cert.colors_used);
        if let Err(e) = verify_certificate(g, cert) {
            fail("certificate", e.to_string());
        }
        match is_proper_coloring(g, &cert.coloring()) {
            Ok(r) if r.is_proper() => c.proper = 1,
            Ok(r) => fail("proper", format!("{r:?}")),
            Err(e) => fail("proper", e.to_string()),
        }
        if cert.colors_used <= omega.max(6) {
            c.within_bound = 1;
        } else {
            fail("bound", format!("{} colors, omega {omega}", cert.colors_used));
        }
        if has_c7 {
            c.c7_members = 1;
            if cert.colors_used <= 3 {
                c.c7_three_colors = 1;
            } else {
                fail("c7-three", format!("{} colors on a C5-free graph with a C7", cert.colors_used));
            }
        }
    }

    let perfect_candidate = c5_free && omega >= 4;
    if cfg.exact || perfect_candidate {
        match chromatic_number(g, cfg.budget) {
            Ok(ch) => {
                record.chi_exact = Some(ch.chi);
                if let (true, Some(cert)) = (cfg.exact, &cert) {
                    c.chi_compared = 1;
                    if ch.chi <= cert.colors_used {
                        c.chi_within = 1;
                    } else {
                        fail("chi", format!("chi {} > colors_used {}", ch.chi, cert.colors_used));
                    }
                }
                if perfect_candidate {
                    c.perfect_candidates = 1;
                    if ch.chi == omega {
                        c.perfect_confirmed = 1;
                    } else {
                        fail("perfect", format!("C5-free, omega {omega}, chi {}", ch.chi));
                    }
                }
            }
            Err(e) => fail("oracle", e.to_string()),
        }
    }

    if cfg.check_structure {
        for &cycle in &c5s {
            for lab in c5_labelings(cycle) {
                c.c5_labelings_checked += 1;
                match decompose_c5(g, lab) {
                    Ok(d) => {
                        for v in validate_c5_properties(g, &d) {
                            fail(&v.property, format!("cycle {lab:?} index {:?} witness {:?}", v.index, v.witness));
                        }
                    }
                    Err(e) => fail("decompose", e.to_string()),
                }
            }
        }
    }
    if cfg.check_c7_claims {
        for &cycle in &c7s {
            c.c7_cycles_checked += 1;
            match decompose_c7(g, cycle) {
                Ok(d) => {
                    for v in validate_c7_claims(g, &d) {
                        fail(&v.property, format!("cycle {cycle:?} index {:?} witness {:?}", v.index, v.witness));
                    }
                }
                Err(e) => fail("decompose", e.to_string()),
            }
        }
    }
    record.violations = failures.len();
    (record, c, failures)
}

fn run_one(cfg: &SweepConfig, index: usize) -> Outcome {
    match sample_for(cfg, index) {
        (_, None) => Outcome {
            record: None,
            counters: Counters {
                samples: 1,
                skipped: 1,
                ..Counters::default()
            },
            failures: Vec::new(),
        },
        (kind, Some(g)) => {
            let (record, counters, failures) = check_sample(cfg, index, kind, &g);
            Outcome {
                record: Some(record),
                counters,
                failures,
            }
        }
    }
}

impl Counters {
    fn add(&mut self, o: &Counters) {
        self.samples += o.samples;
        self.skipped += o.skipped;
        self.members += o.members;
        self.colored += o.colored;
        self.proper += o.proper;
        self.within_bound += o.within_bound;
        self.chi_compared += o.chi_compared;
        self.chi_within += o.chi_within;
        self.c5_labelings_checked += o.c5_labelings_checked;
        self.c7_cycles_checked += o.c7_cycles_checked;
        self.perfect_candidates += o.perfect_candidates;
        self.perfect_confirmed += o.perfect_confirmed;
        self.c7_members += o.c7_members;
        self.c7_three_colors += o.c7_three_colors;
    }
}

/// Runs the sweep. Samples are evaluated on worker threads and merged in
/// index order, so the report depends only on `cfg`.
pub fn run_sweep(cfg: &SweepConfig) -> SweepReport {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cfg.count.max(1));
    let mut slots: Vec<Option<Outcome>> = (0..cfg.count).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..cfg.count)
                        .step_by(workers)
                        .map(|i| (i, run_one(cfg, i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, o) in h.join().expect("sweep worker panicked") {
                slots[i] = Some(o);
            }
        }
    });

    let mut report = SweepReport {
        samples: Vec::new(),
        counters: Counters::default(),
        case_histogram: BTreeMap::new(),
        leaf_histogram: BTreeMap::new(),
        failures: Vec::new(),
    };
    for o in slots.into_iter().map(|o| o.unwrap()) {
        report.counters.add(&o.counters);
        if let Some(r) = &o.record {
            if let Some(case) = r.case {
                *report.case_histogram.entry(case).or_default() += 1;
            }
            if let Some(leaf) = &r.leaf {
                *report.leaf_histogram.entry(leaf.clone()).or_default() += 1;
            }
        }
        report.samples.extend(o.record);
        report.failures.extend(o.failures);
    }
    report
}
