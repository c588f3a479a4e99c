use std::collections::BTreeSet;

use ratiocert::bits::VertexSet;
use ratiocert::certificate::{Certificate, ErrorKind, Status};
use ratiocert::certifier::{
    certify_family, colspace_enumerate, support_localization_check, CertifyOptions, EnumerationOptions, Family,
    SeedStrategy,
};
use ratiocert::constructions::{build_q_kneser, build_w1k, build_witt, enumerate_subspaces};
use ratiocert::graph::{max_independent_brute, Graph};

fn brute_labels(g: &Graph) -> (usize, Vec<Vec<String>>) {
    let r = max_independent_brute(g, None, None).unwrap();
    assert!(!r.truncated);
    (r.size, r.witnesses.iter().map(|s| g.set_labels(s)).collect())
}

fn certified(family: Family) -> Certificate {
    let cert = certify_family(family, &CertifyOptions::default());
    let failed: Vec<_> = cert.failed_checks().iter().map(|c| c.name.clone()).collect();
    assert_eq!(cert.status, Status::Certified, "{family}: {failed:?} {:?}", cert.error);
    cert
}

#[test]
fn small_families_match_exhaustive_search() {
    let cases: Vec<(Family, Graph)> = vec![
        (Family::Kneser { v: 5, k: 2 }, ratiocert::constructions::build_kneser(5, 2).unwrap().graph),
        (Family::Kneser { v: 7, k: 3 }, ratiocert::constructions::build_kneser(7, 3).unwrap().graph),
        (Family::QKneser { q: 2, v: 4, k: 2 }, build_q_kneser(2, 4, 2).unwrap().0),
    ];
    for (family, g) in cases {
        let cert = certified(family);
        let (size, sets) = brute_labels(&g);
        assert_eq!(cert.max_independent_sets, sets, "{family}");
        assert!(sets.iter().all(|s| s.len() == size));
    }
    for n in 4..=7 {
        let g = ratiocert::constructions::build_line_graph_complete(n).unwrap();
        let cert = certified(Family::LineComplete { n });
        assert_eq!(cert.max_independent_sets, brute_labels(&g).1, "n = {n}");
    }
}

#[test]
fn petersen_has_five_stars() {
    let cert = certified(Family::Kneser { v: 5, k: 2 });
    assert_eq!(cert.max_independent_sets.len(), 5);
    assert!(cert.max_independent_sets.iter().all(|s| s.len() == 4));
    assert_eq!(cert.ratio.unwrap().bound, ratiocert::exact_linalg::rat(4));
}

#[test]
fn boundary_q_kneser_has_stars_and_duals() {
    let cert = certified(Family::QKneser { q: 2, v: 4, k: 2 });
    assert_eq!(cert.max_independent_sets.len(), 30);
    assert!(cert.notes.iter().any(|n| n.contains("v = 2k")));
    // 15 stars of points plus 15 sets of lines inside a plane.
    let (_, spaces) = build_q_kneser(2, 4, 2).unwrap();
    let mut expected = BTreeSet::new();
    for p in enumerate_subspaces(2, 4, 1).unwrap() {
        expected.insert(spaces.iter().filter(|s| s.contains(&p)).map(ToString::to_string).collect::<Vec<_>>());
    }
    for h in enumerate_subspaces(2, 4, 3).unwrap() {
        expected.insert(spaces.iter().filter(|s| h.contains(s)).map(ToString::to_string).collect::<Vec<_>>());
    }
    let found: BTreeSet<Vec<String>> = cert.max_independent_sets.iter().cloned().collect();
    assert_eq!(found, expected);
}

#[test]
fn kneser_matching_boundary_falls_back_to_search() {
    // K(6,3) is a perfect matching on 20 vertices: 2^10 maximum sets, far
    // outside the column space of the star matrix.
    let cert = certified(Family::Kneser { v: 6, k: 3 });
    assert_eq!(cert.max_independent_sets.len(), 1024);
    assert!(cert.identity_checks.iter().any(|c| c.name == "shifted_columns_are_eigenvectors"));
}

#[test]
fn q_kneser_seed_subspace_gives_its_point_stars() {
    let (g, spaces) = build_q_kneser(2, 5, 2).unwrap();
    let m = build_w1k(2, 5, 2).unwrap().transpose();
    let alpha = 0;
    let seed = VertexSet::from_indices(g.vertex_count(), [alpha]);
    let r = colspace_enumerate(&g, &m, &seed, 15, &EnumerationOptions::default()).unwrap();
    let points = enumerate_subspaces(2, 5, 1).unwrap();
    let mut stars: Vec<VertexSet> = points
        .iter()
        .filter(|p| spaces[alpha].contains(p))
        .map(|p| VertexSet::from_indices(g.vertex_count(), (0..spaces.len()).filter(|&i| spaces[i].contains(p))))
        .collect();
    stars.sort();
    assert_eq!(stars.len(), 3);
    assert_eq!(r.valid_sets, stars);
    for s in &stars {
        let loc = support_localization_check(&m, &g, s, alpha).unwrap();
        assert!(loc.holds && loc.outside_independent);
        assert_eq!(loc.canonical_support.len(), 1);
    }
}

#[test]
fn witt_pencils_localize() {
    let w = build_witt().unwrap();
    let pencil = VertexSet::from_indices(77, (0..77).filter(|&b| w.blocks[b].mask() & 1 == 1));
    assert_eq!(pencil.len(), 21);
    for alpha in pencil.iter() {
        let r = support_localization_check(&w.m, &w.graph, &pencil, alpha).unwrap();
        assert!(r.holds && r.outside_independent, "block {alpha}");
        assert_eq!(r.canonical_support, vec![0]);
        assert_eq!(r.inside.len(), 6);
    }
}

#[test]
fn rank_cap_is_a_budget_failure() {
    let opts = CertifyOptions {
        rank_cap: 1,
        ..Default::default()
    };
    let cert = certify_family(Family::Kneser { v: 7, k: 3 }, &opts);
    assert_eq!(cert.status, Status::Failed);
    assert_eq!(cert.error.unwrap().kind, ErrorKind::Budget);
}

#[test]
fn invalid_parameters_fail_cleanly() {
    let cert = certify_family(Family::QKneser { q: 6, v: 4, k: 2 }, &CertifyOptions::default());
    assert_eq!(cert.status, Status::Failed);
    assert_eq!(cert.error.unwrap().kind, ErrorKind::Pipeline);
    assert!(Family::LineComplete { n: 3 }.validate().is_err());
    assert!(Family::Kneser { v: 8, k: 4 }.validate().is_ok());
}

#[test]
fn odd_line_graph_uses_near_perfect_matchings() {
    let cert = certified(Family::LineComplete { n: 7 });
    // 7 · 5!! = 105
    assert_eq!(cert.max_independent_sets.len(), 105);
    let ratio = cert.ratio.unwrap();
    assert_eq!(ratio.integral_bound(), None);
    assert_eq!(ratio.floor(), 3);
}

#[test]
fn certificate_json_round_trips() {
    let cert = certified(Family::QKneser { q: 2, v: 4, k: 2 });
    let text = cert.to_json();
    let back = Certificate::from_json(&text).unwrap();
    assert_eq!(back, cert);
    assert_eq!(back.to_json(), text);
    assert!(text.contains("\"status\": \"certified\""));
    assert!(!text.contains("timings"));
}

#[test]
fn seeds_override_and_jobs_do_not_change_output() {
    let base = certify_family(Family::Kneser { v: 7, k: 3 }, &CertifyOptions::default());
    let wide = certify_family(
        Family::Kneser { v: 7, k: 3 },
        &CertifyOptions {
            jobs: 4,
            seeds: Some(SeedStrategy::Singletons),
            ..Default::default()
        },
    );
    assert_eq!(base.to_json(), wide.to_json());
}
