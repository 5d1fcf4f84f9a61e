use nearopt_core::colorer::{color_near_optimal, verify_certificate, BoundClaim};
use nearopt_core::decompose::{
    c5_labelings, classify_member, decompose_c5, decompose_c7, validate_c5_properties, validate_c7_claims, CaseTag,
};
use nearopt_core::detect::{
    check_class_membership, enumerate_induced_c5, find_induced, find_induced_c7, Embedding, Pattern,
};
use nearopt_core::dimacs::{parse_dimacs, parse_json, write_dimacs, write_json};
use nearopt_core::harness::sample_class_member;
use nearopt_core::oracles::{chromatic_number, clique_number, color_two_clique_union, is_perfect_in_class};
use nearopt_core::{is_proper_coloring, Coloring, ColoringCheck, Graph, VertexSet};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn graph_with_subset(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        let bits = proptest::collection::vec(any::<bool>(), n);
        (Just(g), bits).prop_map(move |(g, bits)| {
            let s = VertexSet::from_iter(n, (0..n).filter(|&v| bits[v]));
            (g, s)
        })
    })
}

/// Lexicographically least induced embedding by exhaustive injective maps.
fn brute_force_induced(g: &Graph, p: &Pattern) -> Option<Vec<usize>> {
    fn rec(g: &Graph, p: &Pattern, map: &mut Vec<usize>) -> bool {
        if map.len() == p.order() {
            return Embedding {
                pattern: p.name().to_string(),
                map: map.clone(),
            }
            .is_induced_in(g, p);
        }
        for v in 0..g.n() {
            if !map.contains(&v) {
                map.push(v);
                if rec(g, p, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = Vec::new();
    rec(g, p, &mut map).then_some(map)
}

fn direct_proper(g: &Graph, classes: &[Vec<usize>]) -> bool {
    let mut color = vec![usize::MAX; g.n()];
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            color[v] = c;
        }
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) && color[u] == color[v] {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn find_induced_matches_brute_force(g in graph_strategy(8)) {
        for p in [Pattern::p2_plus_p4(), Pattern::diamond(), Pattern::cycle(5).unwrap()] {
            let found = find_induced(&g, &p);
            let brute = brute_force_induced(&g, &p);
            prop_assert_eq!(found.as_ref().map(|e| e.map.clone()), brute);
            if let Some(e) = found {
                prop_assert!(e.is_induced_in(&g, &p));
            }
        }
    }

    #[test]
    fn membership_and_omega_survive_relabeling((g, perm) in graph_with_perm(9)) {
        let h = g.permute(&perm);
        prop_assert_eq!(check_class_membership(&g).is_member(), check_class_membership(&h).is_member());
        prop_assert_eq!(clique_number(&g).0, clique_number(&h).0);
    }

    #[test]
    fn omega_is_monotone_under_induced_subgraphs((g, s) in graph_with_subset(10)) {
        let (h, _) = g.induced_subgraph(&s);
        prop_assert!(clique_number(&h).0 <= clique_number(&g).0);
        let (w, clique) = clique_number(&g);
        prop_assert_eq!(clique.len(), w);
        prop_assert!(g.is_clique(&clique));
    }

    #[test]
    fn complement_is_an_involution_and_commutes_with_induced((g, s) in graph_with_subset(10)) {
        prop_assert_eq!(&g.complement().complement(), &g);
        let (a, map_a) = g.complement().induced_subgraph(&s);
        let (b, map_b) = g.induced_subgraph(&s);
        prop_assert_eq!(map_a, map_b);
        prop_assert_eq!(a, b.complement());
    }

    #[test]
    fn proper_check_agrees_with_double_loop(
        g in graph_strategy(9),
        colors in proptest::collection::vec(0usize..4, 9),
    ) {
        let c = Coloring::from_colors(&colors[..g.n()]);
        let verdict = is_proper_coloring(&g, &c).unwrap();
        prop_assert_eq!(verdict.is_proper(), direct_proper(&g, &c.classes));
        if let ColoringCheck::Monochromatic(u, v) = verdict {
            prop_assert!(g.has_edge(u, v) && colors[u] == colors[v]);
        }
    }

    #[test]
    fn dimacs_and_json_round_trip(g in graph_strategy(10)) {
        prop_assert_eq!(&parse_dimacs(&write_dimacs(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_json(&write_json(&g)).unwrap(), &g);
    }

    #[test]
    fn chromatic_oracle_is_sound(g in graph_strategy(9)) {
        let c = chromatic_number(&g, u64::MAX).unwrap();
        prop_assert!(is_proper_coloring(&g, &c.coloring).unwrap().is_proper());
        prop_assert_eq!(c.coloring.colors_used(), c.chi);
        prop_assert!(clique_number(&g).0 <= c.chi);
    }

    #[test]
    fn two_clique_union_is_optimal(
        a in 0usize..=8,
        b in 0usize..=8,
        cross in proptest::collection::vec(any::<bool>(), 64),
    ) {
        let mut edges = Vec::new();
        for k in [0..a, a..a + b] {
            for u in k.clone() {
                for v in u + 1..k.end {
                    edges.push((u, v));
                }
            }
        }
        for u in 0..a {
            for w in 0..b {
                if cross[u * 8 + w] {
                    edges.push((u, a + w));
                }
            }
        }
        let g = Graph::new(a + b, edges).unwrap();
        let k1: Vec<usize> = (0..a).collect();
        let k2: Vec<usize> = (a..a + b).collect();
        let c = color_two_clique_union(&g, &k1, &k2).unwrap();
        let coloring = Coloring::new(c.classes.clone());
        prop_assert!(is_proper_coloring(&g, &coloring).unwrap().is_proper());
        prop_assert_eq!(c.colors_used(), chromatic_number(&g, u64::MAX).unwrap().chi);
        prop_assert_eq!(c.colors_used(), a + b - c.matching.len());
    }

    #[test]
    fn c5_decomposition_is_a_partition(g in graph_strategy(9)) {
        prop_assume!(find_induced(&g, &Pattern::diamond()).is_none());
        for cycle in enumerate_induced_c5(&g) {
            let d = decompose_c5(&g, cycle).unwrap();
            let mut parts = vec![d.cycle_set(), d.t().clone()];
            for i in 1..=5 {
                parts.extend([d.a(i), d.b(i), d.d(i), d.z(i)].into_iter().cloned());
            }
            let mut seen = vec![0; g.n()];
            for p in &parts {
                for v in p.iter() {
                    seen[v] += 1;
                }
            }
            prop_assert!(seen.iter().all(|&k| k == 1), "{:?}", seen);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn colorer_is_sound_on_members(n in 5usize..=12, p in 0.15f64..0.6, seed in any::<u64>()) {
        let Some(g) = sample_class_member(n, p, seed, 200) else { return Ok(()); };
        prop_assert!(check_class_membership(&g).is_member());
        let cert = color_near_optimal(&g).unwrap();
        prop_assert!(cert.validated);
        prop_assert!(cert.fallback.is_none());
        prop_assert!(verify_certificate(&g, &cert).is_ok());
        prop_assert!(direct_proper(&g, &cert.classes));
        let omega = clique_number(&g).0;
        prop_assert!(cert.colors_used <= omega.max(6));
        prop_assert!(cert.colors_used >= omega);
        if cert.bound_claim == BoundClaim::EqualsOmega {
            prop_assert_eq!(cert.colors_used, omega);
        }
        if cert.case == CaseTag::C7Case {
            prop_assert!(cert.colors_used <= 3);
        }
    }

    #[test]
    fn members_satisfy_every_structural_property(n in 5usize..=12, p in 0.15f64..0.6, seed in any::<u64>()) {
        let Some(g) = sample_class_member(n, p, seed, 200) else { return Ok(()); };
        let c5s = enumerate_induced_c5(&g);
        for &cycle in &c5s {
            for lab in c5_labelings(cycle) {
                let d = decompose_c5(&g, lab).unwrap();
                let v = validate_c5_properties(&g, &d);
                prop_assert!(v.is_empty(), "{:?}", v);
            }
        }
        if c5s.is_empty() {
            if let Some(c7) = find_induced_c7(&g) {
                let d = decompose_c7(&g, c7).unwrap();
                let v = validate_c7_claims(&g, &d);
                prop_assert!(v.is_empty(), "{:?}", v);
            } else {
                prop_assert!(is_perfect_in_class(&g));
                let chi = chromatic_number(&g, u64::MAX).unwrap().chi;
                prop_assert_eq!(chi, clique_number(&g).0);
            }
        }
    }

    #[test]
    fn case_tag_is_labeling_invariant(
        n in 5usize..=11,
        p in 0.15f64..0.6,
        seed in any::<u64>(),
        shuffle in any::<u64>(),
    ) {
        let Some(g) = sample_class_member(n, p, seed, 200) else { return Ok(()); };
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = shuffle;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permute(&perm);
        prop_assert_eq!(classify_member(&g).unwrap().tag, classify_member(&h).unwrap().tag);
    }
}
