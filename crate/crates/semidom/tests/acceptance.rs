//! Acceptance suite: every supported claim at its full desk-scale bounds,
//! plus solver and format soundness sweeps. One pass/fail line per criterion
//! (visible with `--nocapture`).

mod common;

use common::{naive_min_value, random_connected_graph, random_graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semidom::format::{encode_graph6, parse_edgelist, parse_graph6, parse_graph6_stream, write_edgelist};
use semidom::graph::Graph;
use semidom::solver::{self, DominationVariant};
use semidom::trees::enumerate_trees;
use semidom::verify::{run_verification, ClaimId, Verdict, VerifyOptions};

fn external_stream() -> Vec<Graph> {
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/connected_n_le_7.g6");
    let text = std::fs::read_to_string(&path)
        .expect("data/connected_n_le_7.g6 ships with the repository");
    parse_graph6_stream(&text).expect("the committed stream parses")
}

fn check_claim(label: &str, claim: ClaimId, max_n: Option<usize>, stream: Vec<Graph>) {
    let opts = VerifyOptions {
        max_n,
        external_graphs: stream,
        counterexample_cap: None,
    };
    let report = run_verification(claim, &opts).expect("claim runs within budget");
    assert_eq!(
        report.verdict,
        Verdict::Pass,
        "{label} failed on {} of {} instances; first counterexamples: {:#?}",
        report.counterexamples.len(),
        report.instances,
        report.counterexamples
    );
    println!(
        "PASS {label}: {} [{} instances, {} ms]",
        claim.statement(),
        report.instances,
        report.elapsed_ms
    );
}

#[test]
fn c01_complete_graphs_and_wheels() {
    check_claim("criterion 1 (obs2.1)", ClaimId::Obs2_1, Some(10), Vec::new());
    // spot value straight from the solver
    let r = semidom::msd_semitotal(&semidom::named::complete(5).unwrap(), 5).unwrap();
    assert_eq!((r.k, r.base_value), (3, 2));
}

#[test]
fn c02_paths_and_cycles_mod_five_table() {
    check_claim("criterion 2 (obs2.2)", ClaimId::Obs2_2, Some(20), Vec::new());
}

#[test]
fn c03_complete_bipartite_table() {
    check_claim("criterion 3 (obs2.3)", ClaimId::Obs2_3, Some(5), Vec::new());
    let k2 = semidom::named::complete_bipartite(1, 1).unwrap();
    assert_eq!(semidom::msd_semitotal(&k2, 5).unwrap().k, 4);
}

#[test]
fn c04_multisubdivision_number_at_most_three() {
    check_claim(
        "criterion 4 (thm2.4)",
        ClaimId::Thm2_4,
        Some(12),
        external_stream(),
    );
}

#[test]
fn c05_universal_vertex_forces_three() {
    check_claim(
        "criterion 5 (cor2.5)",
        ClaimId::Cor2_5,
        Some(10),
        external_stream(),
    );
}

#[test]
fn c06_support_pairs_cap_at_two() {
    check_claim("criterion 6 (obs2.6)", ClaimId::Obs2_6, Some(12), Vec::new());
}

#[test]
fn c07_class_three_characterization() {
    check_claim(
        "criterion 7 (thm2.12 + diameter side check)",
        ClaimId::Thm2_12,
        Some(12),
        Vec::new(),
    );
}

#[test]
fn c08_family_structure_and_ratio_identity() {
    check_claim("criterion 8a (obs2.7)", ClaimId::Obs2_7, Some(12), Vec::new());
    check_claim("criterion 8b (obs3.3)", ClaimId::Obs3_3, Some(14), Vec::new());
    check_claim("criterion 8c (cor3.4)", ClaimId::Cor3_4, Some(14), Vec::new());
}

#[test]
fn c09_almost_semitotal_sets_from_derivations() {
    let opts = VerifyOptions {
        max_n: Some(12),
        external_graphs: Vec::new(),
        counterexample_cap: None,
    };
    let report = run_verification(ClaimId::Lem2_8, &opts).unwrap();
    assert_eq!(
        report.verdict,
        Verdict::Pass,
        "criterion 9 failed: {:#?}",
        report.counterexamples
    );
    assert!(
        report
            .notes
            .iter()
            .any(|n| n == "construction fallback invocations: 0"),
        "criterion 9: expected zero fallbacks, notes were {:?}",
        report.notes
    );
    println!(
        "PASS criterion 9 (lem2.8): {} [{} instances, {} ms, fallbacks 0]",
        ClaimId::Lem2_8.statement(),
        report.instances,
        report.elapsed_ms
    );
}

#[test]
fn c10_semitotal_versus_domination() {
    check_claim("criterion 10 (thm3.1)", ClaimId::Thm3_1, Some(14), Vec::new());
}

#[test]
fn c11_total_versus_semitotal() {
    check_claim("criterion 11 (thm3.2)", ClaimId::Thm3_2, Some(14), Vec::new());
}

#[test]
fn c12_solver_soundness() {
    let variants = [
        DominationVariant::Plain,
        DominationVariant::Total,
        DominationVariant::Semitotal,
    ];
    let mut instances = 0u64;

    let mut check = |g: &Graph| {
        let mut values = std::collections::HashMap::new();
        for variant in variants {
            let fast = solver::min_set(g, variant).expect("valid instance");
            let slow = naive_min_value(g, variant).expect("nonempty instance");
            assert_eq!(fast.value, slow, "{variant:?} on {g:?}");
            assert!(
                solver::check_set(g, &fast.witness, variant).unwrap(),
                "witness must validate on {g:?}"
            );
            values.insert(variant.as_str(), fast.value);
        }
        assert!(
            values["gamma"] <= values["gamma-t2"] && values["gamma-t2"] <= values["gamma-t"],
            "sandwich inequality on {g:?}"
        );
        instances += 1;
    };

    for n in 2..=10 {
        for tree in enumerate_trees(n) {
            check(&tree);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    for _ in 0..200 {
        let n = rng.random_range(3..=10);
        let extra = rng.random_range(0..=n);
        check(&random_connected_graph(&mut rng, n, extra));
    }
    // plain domination also covers the one-vertex tree
    assert_eq!(
        solver::min_value(&Graph::from_edges(1, []).unwrap(), DominationVariant::Plain).unwrap(),
        1
    );
    println!("PASS criterion 12: optimized solver matches subset enumeration and the sandwich inequality holds [{instances} instances]");
}

#[test]
fn c13_format_fidelity() {
    let mut instances = 0u64;
    let mut check = |g: &Graph| {
        assert_eq!(parse_graph6(&encode_graph6(g).unwrap()).unwrap(), *g);
        assert_eq!(parse_edgelist(&write_edgelist(g)).unwrap(), *g);
        instances += 1;
    };
    for n in 1..=10 {
        for tree in enumerate_trees(n) {
            check(&tree);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xF1DE117);
    for _ in 0..500 {
        let n = rng.random_range(1..=20);
        check(&random_graph(&mut rng, n));
    }
    println!("PASS criterion 13: graph6 and edge-list round-trips are identities [{instances} instances]");
}
