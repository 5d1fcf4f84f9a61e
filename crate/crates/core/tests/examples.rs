//! Small hand-built instances with known decompositions and colorings.
//! Cycle vertex `v_i` is vertex `i - 1`; extra vertices are numbered from 5
//! (or 7) in the order given.

use nearopt_core::colorer::{
    color_case_c7, color_case_f1, color_case_pure_c5, color_near_optimal, verify_certificate, BoundClaim,
    ColoringCertificate,
};
use nearopt_core::decompose::{classify_case, decompose_c5, decompose_c7, validate_c7_claims, CaseTag, DecomposeError};
use nearopt_core::detect::{check_class_membership, enumerate_induced_c5, find_induced, Pattern};
use nearopt_core::oracles::{chromatic_number, clique_number};
use nearopt_core::witnesses::{complete_graph, cycle_graph, gstar, path_graph};
use nearopt_core::Graph;

fn cycle_plus(len: usize, extra: &[&[usize]], inner: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    for (k, nb) in extra.iter().enumerate() {
        edges.extend(nb.iter().map(|&c| (len + k, c)));
    }
    edges.extend_from_slice(inner);
    Graph::new(len + extra.len(), edges).unwrap()
}

fn class_of(cert: &ColoringCertificate, v: usize) -> usize {
    cert.classes.iter().position(|c| c.contains(&v)).unwrap()
}

fn checked(g: &Graph, cert: ColoringCertificate) -> ColoringCertificate {
    assert!(check_class_membership(g).is_member());
    verify_certificate(g, &cert).unwrap();
    cert
}

#[test]
fn detection_examples() {
    let p7 = path_graph(7).unwrap();
    assert_eq!(find_induced(&p7, &Pattern::p2_plus_p4()).unwrap().map, vec![0, 1, 3, 4, 5, 6]);
    assert!(find_induced(&path_graph(6).unwrap(), &Pattern::p2_plus_p4()).is_none());
    assert!(find_induced(&complete_graph(4).unwrap(), &Pattern::diamond()).is_none());
    assert!(!check_class_membership(&cycle_graph(9).unwrap()).is_member());
    assert_eq!(enumerate_induced_c5(&cycle_graph(5).unwrap()).len(), 1);
    assert!(enumerate_induced_c5(&complete_graph(6).unwrap()).is_empty());
}

#[test]
fn c5_roles() {
    let d = decompose_c5(&cycle_plus(5, &[&[0, 1]], &[]), [0, 1, 2, 3, 4]).unwrap();
    assert_eq!(d.b(1).to_vec(), vec![5]);
    let d = decompose_c5(&cycle_plus(5, &[&[3, 0, 2]], &[]), [0, 1, 2, 3, 4]).unwrap();
    assert_eq!(d.z(1).to_vec(), vec![5]);
    let err = decompose_c5(&cycle_plus(5, &[&[0, 1, 2]], &[]), [0, 1, 2, 3, 4]).unwrap_err();
    assert_eq!(err, DecomposeError::Diamond([5, 0, 1, 2]));
}

#[test]
fn c7_roles() {
    let d = decompose_c7(&cycle_plus(7, &[&[]], &[]), [0, 1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(d.m().to_vec(), vec![7]);
    let g = gstar();
    let d = decompose_c7(&g, [0, 1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(d.x(1).to_vec(), vec![7]);
    assert!(validate_c7_claims(&g, &d).is_empty());
    let g = cycle_plus(7, &[&[], &[]], &[(7, 8)]);
    let d = decompose_c7(&g, [0, 1, 2, 3, 4, 5, 6]).unwrap();
    assert!(validate_c7_claims(&g, &d).iter().any(|v| v.property == "C7.stable.M"));
}

#[test]
fn classify_examples() {
    let f1 = cycle_plus(5, &[&[0, 1], &[1, 2]], &[]);
    assert_eq!(classify_case(&f1).unwrap().tag, CaseTag::F1);
    let f4 = cycle_plus(5, &[&[0, 1]], &[]);
    assert_eq!(classify_case(&f4).unwrap().tag, CaseTag::F4);
    assert_eq!(classify_case(&complete_graph(7).unwrap()).unwrap().tag, CaseTag::Perfect);
    assert_eq!(classify_case(&gstar()).unwrap().tag, CaseTag::C7Case);
}

#[test]
fn pure_c5_placements() {
    let c5 = cycle_graph(5).unwrap();
    let cert = checked(&c5, color_near_optimal(&c5).unwrap());
    assert_eq!(cert.case, CaseTag::PureC5);
    assert_eq!(cert.colors_used, 3);
    assert_eq!(cert.classes[0], vec![1, 3]);
    assert_eq!(cert.classes[3], vec![2, 4]);
    assert_eq!(cert.classes[4], vec![0]);

    // a in A_1, d in D_3
    let g = cycle_plus(5, &[&[0], &[1, 3]], &[]);
    let cert = checked(&g, color_case_pure_c5(&g, [0, 1, 2, 3, 4]).unwrap());
    assert_eq!(class_of(&cert, 5), 0);
    assert_eq!(class_of(&cert, 6), 1);

    // z in Z_1
    let g = cycle_plus(5, &[&[3, 0, 2]], &[]);
    let cert = checked(&g, color_case_pure_c5(&g, [0, 1, 2, 3, 4]).unwrap());
    assert_eq!(class_of(&cert, 5), 2);
}

#[test]
fn f1_placements() {
    // b1 in B_1, b5 in B_5, a in A_1
    let g = cycle_plus(5, &[&[0, 1], &[4, 0], &[0]], &[]);
    let cert = checked(&g, color_case_f1(&g, [0, 1, 2, 3, 4]).unwrap());
    assert!(cert.colors_used <= 6);
    assert_eq!(cert.bound_claim, BoundClaim::AtMostSix);
    assert_eq!(class_of(&cert, 7), 0);

    // |B_3| = 2 splits between S_4 and S_6; b1 and b5 each see one B_3 vertex.
    let g = cycle_plus(5, &[&[0, 1], &[4, 0], &[2, 3], &[2, 3]], &[(7, 8), (5, 8), (6, 7)]);
    let cert = checked(&g, color_case_f1(&g, [0, 1, 2, 3, 4]).unwrap());
    let mut split = [class_of(&cert, 7), class_of(&cert, 8)];
    split.sort();
    assert_eq!(split, [3, 5]);
}

#[test]
fn c7_leaves() {
    let g = gstar();
    let cert = checked(&g, color_near_optimal(&g).unwrap());
    assert_eq!((cert.case, cert.leaf.as_str(), cert.colors_used), (CaseTag::C7Case, "C7/X", 3));

    let c7 = cycle_graph(7).unwrap();
    assert_eq!(checked(&c7, color_near_optimal(&c7).unwrap()).colors_used, 3);

    // q in Q_3 only
    let g = cycle_plus(7, &[&[1, 3]], &[]);
    let cert = checked(&g, color_case_c7(&g, [0, 1, 2, 3, 4, 5, 6]).unwrap());
    assert_eq!((cert.leaf.as_str(), cert.colors_used), ("C7/Q-empty", 3));
}

#[test]
fn c7_every_q_nonempty() {
    // q_i in Q_i for every i; the q_i form a second 7-cycle.
    let q: Vec<&[usize]> = vec![&[6, 1], &[0, 2], &[1, 3], &[2, 4], &[3, 5], &[4, 6], &[5, 0]];
    let outer = [(7, 8), (7, 13), (8, 9), (9, 10), (10, 11), (11, 12), (12, 13)];
    let g = cycle_plus(7, &q, &outer);
    assert!(enumerate_induced_c5(&g).is_empty());
    let cert = checked(&g, color_near_optimal(&g).unwrap());
    assert_eq!((cert.case, cert.leaf.as_str(), cert.colors_used), (CaseTag::C7Case, "C7/Q-full", 3));
}

#[test]
fn perfect_examples() {
    for n in [1, 4, 7] {
        let k = complete_graph(n).unwrap();
        let cert = checked(&k, color_near_optimal(&k).unwrap());
        assert_eq!((cert.case, cert.colors_used, cert.bound_claim), (CaseTag::Perfect, n, BoundClaim::EqualsOmega));
    }
    let c6 = cycle_graph(6).unwrap();
    assert_eq!(checked(&c6, color_near_optimal(&c6).unwrap()).colors_used, 2);
}

#[test]
fn oracle_examples() {
    assert_eq!(clique_number(&complete_graph(6).unwrap()).0, 6);
    assert_eq!(chromatic_number(&cycle_graph(7).unwrap(), u64::MAX).unwrap().chi, 3);
    let diamond = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    assert_eq!(chromatic_number(&diamond, u64::MAX).unwrap().chi, 3);
}
