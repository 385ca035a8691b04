//! Cross-checks of the optimized paths against independent oracles: the
//! subset-enumeration solver, Prüfer-based tree generation, and hand-derived
//! format vectors.

mod common;

use common::{all_labeled_trees, first_valid_of_size, naive_min_value};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semidom::canon::canonical_code;
use semidom::graph::{named, Edge, Graph};
use semidom::solver::{min_set, min_value, DominationVariant};
use semidom::trees::enumerate_trees;
use std::collections::BTreeSet;

#[test]
fn solver_matches_subset_enumeration_on_trees() {
    for n in 2..=9 {
        for tree in enumerate_trees(n) {
            for variant in [
                DominationVariant::Plain,
                DominationVariant::Total,
                DominationVariant::Semitotal,
            ] {
                let fast = min_set(&tree, variant).unwrap();
                let slow = naive_min_value(&tree, variant).unwrap();
                assert_eq!(fast.value, slow, "{variant:?} on {tree:?}");
                let lex_least = first_valid_of_size(&tree, variant, slow).unwrap();
                assert_eq!(fast.witness, lex_least, "{variant:?} on {tree:?}");
            }
        }
    }
}

#[test]
fn solver_matches_subset_enumeration_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E11_1D01);
    for _ in 0..60 {
        let n = 4 + rng.random_range(0..5);
        let g = common::random_connected_graph(&mut rng, n, n / 2);
        for variant in [
            DominationVariant::Plain,
            DominationVariant::Total,
            DominationVariant::Semitotal,
        ] {
            let fast = min_value(&g, variant).unwrap();
            let slow = naive_min_value(&g, variant).unwrap();
            assert_eq!(fast, slow, "{variant:?} on {g:?}");
        }
    }
}

#[test]
fn free_tree_enumeration_matches_prufer_dedup() {
    for n in 2..=8 {
        let from_prufer: BTreeSet<_> = all_labeled_trees(n)
            .iter()
            .map(|t| canonical_code(t).unwrap())
            .collect();
        let from_enumeration: BTreeSet<_> = enumerate_trees(n)
            .map(|t| canonical_code(&t).unwrap())
            .collect();
        assert_eq!(from_prufer, from_enumeration, "order {n}");
        assert_eq!(from_enumeration.len(), enumerate_trees(n).count());
    }
    assert_eq!(enumerate_trees(7).count(), 11);
}

#[test]
fn canonical_codes_of_order_eight_trees_are_distinct() {
    let codes: BTreeSet<_> = enumerate_trees(8)
        .map(|t| canonical_code(&t).unwrap())
        .collect();
    assert_eq!(codes.len(), 23);
}

#[test]
fn canonical_code_stable_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    let trees: Vec<Graph> = (2..=10).flat_map(enumerate_trees).collect();
    for _ in 0..100 {
        let idx = rng.random_range(0..trees.len());
        let tree = &trees[idx];
        let mut perm: Vec<usize> = (0..tree.n()).collect();
        for i in (1..perm.len()).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        assert_eq!(
            canonical_code(tree).unwrap(),
            canonical_code(&tree.relabel(&perm)).unwrap()
        );
    }
}

#[test]
fn subdivision_composes_additively() {
    // subdividing an edge a times, then the last fresh edge b more times,
    // yields the (a+b)-fold subdivision up to renaming the second batch of
    // fresh vertices (their chain comes out reversed)
    let g = named::cycle(6).unwrap();
    let e = Edge::new(2, 3).unwrap();
    for a in 1..=3usize {
        for b in 1..=3usize {
            let once = g.subdivide_edge(e, a + b).unwrap();
            let first = g.subdivide_edge(e, a).unwrap();
            let last_fresh = g.n() + a - 1;
            let second = first
                .subdivide_edge(Edge::new(last_fresh, 3).unwrap(), b)
                .unwrap();
            let perm: Vec<usize> = (0..second.n())
                .map(|v| if v < 6 + a { v } else { 11 + 2 * a + b - v })
                .collect();
            assert_eq!(second.relabel(&perm), once);
            assert_eq!(once.n(), g.n() + a + b);
            assert_eq!(once.edge_count(), g.edge_count() + a + b);
        }
    }

    // same composition on a tree, compared by canonical code
    let p7 = named::path(7).unwrap();
    let e = Edge::new(3, 4).unwrap();
    let once = p7.subdivide_edge(e, 5).unwrap();
    let twice = p7
        .subdivide_edge(e, 2)
        .unwrap()
        .subdivide_edge(Edge::new(8, 4).unwrap(), 3)
        .unwrap();
    assert_eq!(
        canonical_code(&once).unwrap(),
        canonical_code(&twice).unwrap()
    );
}

#[test]
fn semitotal_value_is_at_least_two_beyond_a_single_vertex() {
    for n in 2..=9 {
        for tree in enumerate_trees(n) {
            assert!(min_value(&tree, DominationVariant::Semitotal).unwrap() >= 2);
        }
    }
}

#[test]
fn almost_relaxation_stays_within_one_of_the_semitotal_optimum() {
    // The exempt vertex is part of the set by definition. Relative to
    // members of some optimal semitotal set the relaxation can only help;
    // relative to any other vertex it costs at most the one forced pick
    // (a semitotal set plus the exempt vertex is almost semitotal).
    for n in 2..=8 {
        for tree in enumerate_trees(n) {
            let full = min_value(&tree, DominationVariant::Semitotal).unwrap();
            for v in 0..tree.n() {
                let relaxed = semidom::solver::min_almost_value(&tree, v).unwrap();
                assert!(relaxed <= full + 1, "vertex {v} on {tree:?}");
            }
        }
    }

    // with the exempt vertex inside an optimal set, the bound tightens
    let p6 = named::path(6).unwrap();
    let witness = min_set(&p6, DominationVariant::Semitotal).unwrap().witness;
    for &v in &witness {
        assert!(
            semidom::solver::min_almost_value(&p6, v).unwrap()
                <= min_value(&p6, DominationVariant::Semitotal).unwrap()
        );
    }
}

#[test]
fn hand_derived_graph6_vectors() {
    // K_2: header 63+2 = 'A'; one edge bit padded to 100000 -> 63+32 = '_'
    assert_eq!(semidom::format::encode_graph6(&named::complete(2).unwrap()).unwrap(), "A_");
    // P_3 as 0-1-2: bits (0,1)=1,(0,2)=0,(1,2)=1 -> 101000 -> 63+40 = 'g'
    assert_eq!(semidom::format::encode_graph6(&named::path(3).unwrap()).unwrap(), "Bg");
}
