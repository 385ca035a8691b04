#![allow(dead_code)] // each integration test target compiles its own copy

//! Shared test support: independent oracles and instance generators.
//!
//! Everything here deliberately avoids the library's search machinery so it
//! can serve as ground truth: the subset-enumeration solver walks all vertex
//! subsets in increasing size and only consults the membership predicate;
//! labeled trees come from decoding all Prüfer sequences; small general
//! graphs are canonicalized by brute force over all vertex permutations.

use semidom::graph::Graph;
use semidom::solver::{check_set, DominationVariant};
use std::collections::BTreeSet;

/// Minimum size over all subsets passing `check_set`, smallest size first.
/// `None` when no subset qualifies.
pub fn naive_min_value(g: &Graph, variant: DominationVariant) -> Option<usize> {
    (1..=g.n()).find(|&k| first_valid_of_size(g, variant, k).is_some())
}

/// The first (lexicographically least) valid subset of size exactly `k`.
pub fn first_valid_of_size(
    g: &Graph,
    variant: DominationVariant,
    k: usize,
) -> Option<Vec<usize>> {
    let mut subset: Vec<usize> = (0..k).collect();
    let n = g.n();
    if k > n {
        return None;
    }
    loop {
        if check_set(g, &subset, variant).expect("ids in range") {
            return Some(subset);
        }
        // next k-combination of 0..n in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Decodes a Prüfer sequence over `0..n` into the edge set of a labeled tree.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaf_heap: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &v in seq {
        let leaf = *leaf_heap.iter().next().expect("a leaf always remains");
        leaf_heap.remove(&leaf);
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaf_heap.insert(v);
        }
    }
    let mut rest = leaf_heap.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((a, b));
    edges
}

/// All labeled trees on `n` vertices via Prüfer sequences, as graphs.
pub fn all_labeled_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::from_edges(1, []).unwrap()];
    }
    if n == 2 {
        return vec![Graph::from_edges(2, [(0, 1)]).unwrap()];
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut out = Vec::new();
    loop {
        out.push(Graph::from_edges(n, prufer_decode(n, &seq)).unwrap());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            if i == 0 {
                return out;
            }
        }
    }
}

/// Upper-triangle bit representation of a graph on at most eight vertices,
/// in column order (the graph6 bit order).
fn tri_bits(g: &Graph) -> u32 {
    let n = g.n();
    let mut bits = 0u32;
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bits |= 1 << idx;
            }
            idx += 1;
        }
    }
    bits
}

fn from_tri_bits(n: usize, bits: u32) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits >> idx & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permutations(&mut items, n, &mut out);
    out
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Canonical form by brute force: the minimum upper-triangle bit pattern over
/// all vertex permutations. Only sensible for very small orders.
pub fn brute_canonical_bits(g: &Graph, perms: &[Vec<usize>]) -> u32 {
    let n = g.n();
    let mut best = u32::MAX;
    for perm in perms {
        let mut bits = 0u32;
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if g.has_edge(perm[i], perm[j]) {
                    bits |= 1 << idx;
                }
                idx += 1;
            }
        }
        best = best.min(bits);
    }
    best
}

/// All graphs on exactly `n <= 8` vertices, one per isomorphism class, built
/// by extending each smaller canonical graph with every attachment pattern.
pub fn all_graphs_of_order(n_max: usize) -> Vec<Vec<Graph>> {
    assert!(n_max <= 8, "brute-force canonicalization only scales so far");
    let perms_by_n: Vec<Vec<Vec<usize>>> = (0..=n_max).map(permutations).collect();
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::from_edges(1, []).unwrap()]];
    for n in 2..=n_max {
        let mut seen = BTreeSet::new();
        let mut level = Vec::new();
        for g in &levels[n - 2] {
            let base = tri_bits(g);
            let new_block_start = (n - 1) * (n - 2) / 2;
            for attach in 0u32..(1 << (n - 1)) {
                let bits = base | (attach << new_block_start);
                let candidate = from_tri_bits(n, bits);
                let canon = brute_canonical_bits(&candidate, &perms_by_n[n]);
                if seen.insert(canon) {
                    level.push(from_tri_bits(n, canon));
                }
            }
        }
        levels.push(level);
    }
    levels
}

/// All connected graphs with orders in `1..=n_max`, canonical and
/// deterministically ordered.
pub fn connected_graphs_up_to(n_max: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for level in all_graphs_of_order(n_max) {
        let mut connected: Vec<Graph> = level.into_iter().filter(Graph::is_connected).collect();
        connected.sort_by_key(tri_bits);
        out.extend(connected);
    }
    out
}

/// Deterministic pseudo-random connected graphs: a random labeled tree plus
/// extra random edges.
pub fn random_connected_graph(rng: &mut impl rand::Rng, n: usize, extra_edges: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = if n >= 3 {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
        prufer_decode(n, &seq)
    } else if n == 2 {
        vec![(0, 1)]
    } else {
        vec![]
    };
    for _ in 0..extra_edges {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Deterministic pseudo-random graph with independent edge probability 1/2.
pub fn random_graph(rng: &mut impl rand::Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.random_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
