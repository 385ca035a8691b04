//! Exhaustive desk-scale verification of the crate's backing results.
//!
//! Every claim has one registered check that sweeps an instance range —
//! internally enumerated trees and parametric families, plus an optional
//! external graph6 stream for general-graph claims — and reports a verdict
//! with counterexamples. Reports are deterministic for fixed inputs:
//! counterexamples are sorted and capped, and instance fan-out never affects
//! the outcome.

use crate::canon::canonical_code;
use crate::families::{self, FamilyId, Status};
use crate::format::encode_graph6;
use crate::graph::{named, Graph};
use crate::msd::{self, msd_semitotal, TreeClass};
use crate::par;
use crate::solver::{self, DominationVariant};
use crate::trees::enumerate_trees;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("claim {claim} bound {requested} exceeds the configured budget {cap}")]
    BoundTooLarge {
        claim: ClaimId,
        requested: usize,
        cap: usize,
    },
}

/// The registered claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimId {
    Obs2_1,
    Obs2_2,
    Obs2_3,
    Thm2_4,
    Cor2_5,
    Obs2_6,
    Obs2_7,
    Lem2_8,
    Obs2_10,
    Thm2_12,
    Thm3_1,
    Thm3_2,
    Obs3_3,
    Cor3_4,
}

impl ClaimId {
    pub const ALL: [ClaimId; 14] = [
        ClaimId::Obs2_1,
        ClaimId::Obs2_2,
        ClaimId::Obs2_3,
        ClaimId::Thm2_4,
        ClaimId::Cor2_5,
        ClaimId::Obs2_6,
        ClaimId::Obs2_7,
        ClaimId::Lem2_8,
        ClaimId::Obs2_10,
        ClaimId::Thm2_12,
        ClaimId::Thm3_1,
        ClaimId::Thm3_2,
        ClaimId::Obs3_3,
        ClaimId::Cor3_4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Obs2_1 => "obs2.1",
            ClaimId::Obs2_2 => "obs2.2",
            ClaimId::Obs2_3 => "obs2.3",
            ClaimId::Thm2_4 => "thm2.4",
            ClaimId::Cor2_5 => "cor2.5",
            ClaimId::Obs2_6 => "obs2.6",
            ClaimId::Obs2_7 => "obs2.7",
            ClaimId::Lem2_8 => "lem2.8",
            ClaimId::Obs2_10 => "obs2.10",
            ClaimId::Thm2_12 => "thm2.12",
            ClaimId::Thm3_1 => "thm3.1",
            ClaimId::Thm3_2 => "thm3.2",
            ClaimId::Obs3_3 => "obs3.3",
            ClaimId::Cor3_4 => "cor3.4",
        }
    }

    /// What the check asserts, in one line.
    pub fn statement(self) -> &'static str {
        match self {
            ClaimId::Obs2_1 => "complete graphs and wheels have multisubdivision number 3",
            ClaimId::Obs2_2 => {
                "paths and cycles follow the order-mod-5 multisubdivision table (0,2 -> 1; 1,4 -> 2; 3 -> 3)"
            }
            ClaimId::Obs2_3 => {
                "complete bipartite graphs have multisubdivision number 4 (p=q=1), 3 (p=1<q), or 2 (p>=2)"
            }
            ClaimId::Thm2_4 => "every connected graph of order at least 3 has multisubdivision number at most 3",
            ClaimId::Cor2_5 => "a universal vertex forces multisubdivision number exactly 3 (order >= 3)",
            ClaimId::Obs2_6 => {
                "a tree with two supports adjacent or at distance two, one of degree two, has multisubdivision number at most 2"
            }
            ClaimId::Obs2_7 => "every generated U member satisfies the U structural clauses",
            ClaimId::Lem2_8 => {
                "every U member admits an almost semitotal dominating set of size gamma_t2 - 1 relative to each A vertex, and the derivation walk constructs one"
            }
            ClaimId::Obs2_10 => {
                "connected non-star graphs have leaf-free minimum dominating and semitotal dominating sets"
            }
            ClaimId::Thm2_12 => {
                "a tree of order >= 3 has multisubdivision number 3 exactly when it carries a U labeling"
            }
            ClaimId::Thm3_1 => {
                "non-star trees satisfy gamma_t2 <= 2*gamma - 1, with equality exactly on the T family"
            }
            ClaimId::Thm3_2 => {
                "nontrivial trees satisfy gamma_t <= 2*gamma_t2 - 1, with equality exactly on the T1 family"
            }
            ClaimId::Obs3_3 => "every generated T and T1 member satisfies its structural clauses",
            ClaimId::Cor3_4 => "every T member satisfies gamma_t2 = 2*gamma - 1 exactly",
        }
    }

    /// Default order bound of the internal instance sweep.
    pub fn default_bound(self) -> usize {
        match self {
            ClaimId::Obs2_1 => 10,
            ClaimId::Obs2_2 => 20,
            ClaimId::Obs2_3 => 5,
            ClaimId::Thm2_4 | ClaimId::Obs2_6 | ClaimId::Obs2_7 | ClaimId::Lem2_8 => 12,
            ClaimId::Obs2_10 | ClaimId::Thm2_12 => 12,
            ClaimId::Cor2_5 => 10,
            ClaimId::Thm3_1 | ClaimId::Thm3_2 | ClaimId::Obs3_3 | ClaimId::Cor3_4 => 14,
        }
    }

    /// Hard ceiling protecting the time budget.
    fn bound_cap(self) -> usize {
        match self {
            ClaimId::Obs2_1 | ClaimId::Cor2_5 => 12,
            ClaimId::Obs2_2 => 40,
            ClaimId::Obs2_3 => 8,
            ClaimId::Thm2_4
            | ClaimId::Obs2_6
            | ClaimId::Obs2_7
            | ClaimId::Lem2_8
            | ClaimId::Obs2_10
            | ClaimId::Thm2_12 => 13,
            ClaimId::Thm3_1 | ClaimId::Thm3_2 => 15,
            ClaimId::Obs3_3 | ClaimId::Cor3_4 => 16,
        }
    }
}

impl std::fmt::Display for ClaimId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClaimId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownClaim(s.to_string()))
    }
}

/// Run parameters. `max_n` overrides the claim's default order bound;
/// `external_graphs` supplies the optional graph6-sourced instance set.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub max_n: Option<usize>,
    pub external_graphs: Vec<Graph>,
    pub counterexample_cap: Option<usize>,
}

pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub canonical_code: Option<String>,
    pub graph6: String,
    pub details: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub claim: ClaimId,
    pub range: String,
    pub instances: u64,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
    pub notes: Vec<String>,
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(7))?;
        m.serialize_entry("claim", self.claim.as_str())?;
        m.serialize_entry("range", &self.range)?;
        m.serialize_entry("instances", &self.instances)?;
        m.serialize_entry("verdict", self.verdict.as_str())?;
        m.serialize_entry("counterexamples", &self.counterexamples)?;
        m.serialize_entry("elapsed_ms", &self.elapsed_ms)?;
        m.serialize_entry("notes", &self.notes)?;
        m.end()
    }
}

struct Outcome {
    range: String,
    instances: u64,
    counterexamples: Vec<Counterexample>,
    notes: Vec<String>,
}

fn cex(g: &Graph, details: String) -> Counterexample {
    Counterexample {
        canonical_code: canonical_code(g).ok().map(|c| c.to_string()),
        graph6: encode_graph6(g).unwrap_or_else(|_| "(order > 62)".into()),
        details,
    }
}

/// Runs one claim. The verdict is `Fail` exactly when counterexamples were
/// found; checks never error on hypothesis-violating instances — they skip
/// them instead.
pub fn run_verification(
    claim: ClaimId,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let bound = opts.max_n.unwrap_or_else(|| claim.default_bound());
    if bound > claim.bound_cap() {
        return Err(VerifyError::BoundTooLarge {
            claim,
            requested: bound,
            cap: claim.bound_cap(),
        });
    }
    let start = std::time::Instant::now();
    let mut outcome = match claim {
        ClaimId::Obs2_1 => check_complete_and_wheels(bound),
        ClaimId::Obs2_2 => check_paths_and_cycles(bound),
        ClaimId::Obs2_3 => check_complete_bipartite(bound),
        ClaimId::Thm2_4 => check_msd_upper_bound(bound, &opts.external_graphs),
        ClaimId::Cor2_5 => check_universal_vertex(bound, &opts.external_graphs),
        ClaimId::Obs2_6 => check_support_pairs(bound),
        ClaimId::Obs2_7 => check_family_structure(FamilyId::U, bound),
        ClaimId::Lem2_8 => check_almost_sets(bound),
        ClaimId::Obs2_10 => check_leaf_free_optima(bound, &opts.external_graphs),
        ClaimId::Thm2_12 => check_class3_characterization(bound),
        ClaimId::Thm3_1 => check_semitotal_vs_domination(bound),
        ClaimId::Thm3_2 => check_total_vs_semitotal(bound),
        ClaimId::Obs3_3 => {
            let mut t = check_family_structure(FamilyId::T, bound);
            let t1 = check_family_structure(FamilyId::T1, bound);
            t.range = format!("{}; {}", t.range, t1.range);
            t.instances += t1.instances;
            t.counterexamples.extend(t1.counterexamples);
            t.notes.extend(t1.notes);
            t
        }
        ClaimId::Cor3_4 => check_extremal_ratio_identity(bound),
    };
    let cap = opts
        .counterexample_cap
        .unwrap_or(DEFAULT_COUNTEREXAMPLE_CAP);
    outcome.counterexamples.sort();
    outcome.counterexamples.dedup();
    if outcome.counterexamples.len() > cap {
        outcome
            .notes
            .push(format!("counterexample list truncated to {cap}"));
        outcome.counterexamples.truncate(cap);
    }
    let verdict = if outcome.counterexamples.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(VerificationReport {
        claim,
        range: outcome.range,
        instances: outcome.instances,
        verdict,
        counterexamples: outcome.counterexamples,
        elapsed_ms: start.elapsed().as_millis() as u64,
        notes: outcome.notes,
    })
}

fn msd_value(g: &Graph) -> Result<usize, String> {
    match msd_semitotal(g, msd::DEFAULT_K_MAX) {
        Ok(r) => Ok(r.k),
        Err(e) => Err(e.to_string()),
    }
}

fn trees_in(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(enumerate_trees).collect()
}

fn check_complete_and_wheels(bound: usize) -> Outcome {
    let mut instances = Vec::new();
    for n in 3..=bound {
        instances.push((format!("K_{n}"), named::complete(n).expect("n >= 3")));
        instances.push((format!("W_{n}"), named::wheel(n).expect("n >= 3")));
    }
    let counterexamples = par::map_slice(&instances, |(name, g)| match msd_value(g) {
        Ok(3) => None,
        Ok(k) => Some(cex(g, format!("{name}: expected msd 3, got {k}"))),
        Err(e) => Some(cex(g, format!("{name}: {e}"))),
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("complete graphs and wheels, parameter 3..={bound}"),
        instances: instances.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn mod5_expected(n: usize) -> usize {
    match n % 5 {
        0 | 2 => 1,
        1 | 4 => 2,
        _ => 3,
    }
}

fn check_paths_and_cycles(bound: usize) -> Outcome {
    let mut instances = Vec::new();
    for n in 3..=bound {
        instances.push((format!("P_{n}"), named::path(n).expect("n >= 3"), mod5_expected(n)));
        instances.push((format!("C_{n}"), named::cycle(n).expect("n >= 3"), mod5_expected(n)));
    }
    let counterexamples = par::map_slice(&instances, |(name, g, expected)| {
        match msd_value(g) {
            Ok(k) if k == *expected => None,
            Ok(k) => Some(cex(g, format!("{name}: expected msd {expected}, got {k}"))),
            Err(e) => Some(cex(g, format!("{name}: {e}"))),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("paths and cycles of order 3..={bound}"),
        instances: instances.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn check_complete_bipartite(bound: usize) -> Outcome {
    let mut instances = Vec::new();
    for p in 1..=bound {
        for q in p..=bound {
            let expected = if p == 1 && q == 1 {
                4
            } else if p == 1 {
                3
            } else {
                2
            };
            instances.push((p, q, named::complete_bipartite(p, q).expect("p,q >= 1"), expected));
        }
    }
    let counterexamples = par::map_slice(&instances, |(p, q, g, expected)| {
        match msd_value(g) {
            Ok(k) if k == *expected => None,
            Ok(k) => Some(cex(g, format!("K_{{{p},{q}}}: expected msd {expected}, got {k}"))),
            Err(e) => Some(cex(g, format!("K_{{{p},{q}}}: {e}"))),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("complete bipartite graphs, 1 <= p <= q <= {bound}"),
        instances: instances.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn eligible_stream<'a>(
    stream: &'a [Graph],
    notes: &mut Vec<String>,
    filter: impl Fn(&Graph) -> bool,
) -> Vec<&'a Graph> {
    if stream.is_empty() {
        notes.push("no external graph stream supplied; internal instances only".into());
        return Vec::new();
    }
    let eligible: Vec<&Graph> = stream.iter().filter(|g| filter(g)).collect();
    notes.push(format!(
        "external stream: {} graphs, {} matching the hypothesis",
        stream.len(),
        eligible.len()
    ));
    eligible
}

fn check_msd_upper_bound(bound: usize, stream: &[Graph]) -> Outcome {
    let trees = trees_in(3, bound);
    let mut counterexamples: Vec<Counterexample> = par::map_slice(&trees, |t| {
        match msd_value(t) {
            Ok(k) if k <= 3 => None,
            Ok(k) => Some(cex(t, format!("tree of order {}: msd {k} > 3", t.n()))),
            Err(e) => Some(cex(t, e)),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    let mut notes = Vec::new();
    let externals = eligible_stream(stream, &mut notes, |g| g.n() >= 3 && g.is_connected());
    counterexamples.extend(
        par::map_slice(&externals, |g| match msd_value(g) {
            Ok(k) if k <= 3 => None,
            Ok(k) => Some(cex(g, format!("connected graph of order {}: msd {k} > 3", g.n()))),
            Err(e) => Some(cex(g, e)),
        })
        .into_iter()
        .flatten(),
    );
    Outcome {
        range: format!(
            "all trees of order 3..={bound}; external connected graphs of order >= 3"
        ),
        instances: (trees.len() + externals.len()) as u64,
        counterexamples,
        notes,
    }
}

fn check_universal_vertex(bound: usize, stream: &[Graph]) -> Outcome {
    let mut instances = Vec::new();
    for n in 3..=bound {
        instances.push((format!("K_{n}"), named::complete(n).expect("n >= 3")));
        if n < bound {
            instances.push((format!("W_{n}"), named::wheel(n).expect("n >= 3")));
        }
        if n >= 3 {
            instances.push((format!("K_{{1,{}}}", n - 1), named::star(n - 1).expect("n >= 3")));
        }
    }
    let mut notes = Vec::new();
    let externals = eligible_stream(stream, &mut notes, |g| {
        g.n() >= 3 && !g.structural_profile().universal.is_empty()
    });
    let mut labeled: Vec<(String, Graph)> = instances;
    labeled.extend(
        externals
            .into_iter()
            .map(|g| (format!("stream graph of order {}", g.n()), g.clone())),
    );
    let counterexamples = par::map_slice(&labeled, |(name, g)| match msd_value(g) {
        Ok(3) => None,
        Ok(k) => Some(cex(g, format!("{name}: universal vertex but msd {k} != 3"))),
        Err(e) => Some(cex(g, format!("{name}: {e}"))),
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!(
            "universal-vertex graphs: completes, wheels, stars up to order {bound}; external stream graphs with a universal vertex"
        ),
        instances: labeled.len() as u64,
        counterexamples,
        notes,
    }
}

/// Support pairs: (1) adjacent supports, (2) supports at distance two, in
/// both cases one of them of degree two.
fn support_pair_hypothesis(t: &Graph) -> Option<&'static str> {
    let profile = t.structural_profile();
    let supports = &profile.supports;
    for (i, &u) in supports.iter().enumerate() {
        for &v in &supports[i + 1..] {
            if t.degree(u) != 2 && t.degree(v) != 2 {
                continue;
            }
            if t.has_edge(u, v) {
                return Some("adjacent supports");
            }
        }
    }
    for (i, &u) in supports.iter().enumerate() {
        let du = t.distances_from(u);
        for &v in &supports[i + 1..] {
            if t.degree(u) != 2 && t.degree(v) != 2 {
                continue;
            }
            if du[v] == Some(2) {
                return Some("supports at distance two");
            }
        }
    }
    None
}

fn check_support_pairs(bound: usize) -> Outcome {
    let trees = trees_in(3, bound);
    let matching: Vec<(Graph, &'static str)> = trees
        .into_iter()
        .filter_map(|t| support_pair_hypothesis(&t).map(|h| (t, h)))
        .collect();
    let counterexamples = par::map_slice(&matching, |(t, hypothesis)| match msd_value(t) {
        Ok(k) if k <= 2 => None,
        Ok(k) => Some(cex(t, format!("{hypothesis} with a degree-two member, yet msd {k} > 2"))),
        Err(e) => Some(cex(t, e)),
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("trees of order 3..={bound} with a qualifying support pair"),
        instances: matching.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn check_family_structure(family: FamilyId, bound: usize) -> Outcome {
    let catalog = families::generate_family(family, bound);
    let members: Vec<_> = catalog.all_members().map(|m| m.labeled.clone()).collect();
    let counterexamples = par::map_slice(&members, |lt| {
        match families::validate_labeling(lt, family) {
            Ok(violations) if violations.is_empty() => None,
            Ok(violations) => {
                let list: Vec<String> = violations
                    .iter()
                    .map(|v| format!("({}) {}", v.clause, v.details))
                    .collect();
                Some(cex(
                    lt.graph(),
                    format!("member [{}] violates: {}", lt.status_string(), list.join("; ")),
                ))
            }
            Err(e) => Some(cex(lt.graph(), e.to_string())),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("family {family} generated up to order {bound} ({} members)", members.len()),
        instances: members.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn check_almost_sets(bound: usize) -> Outcome {
    let catalog = families::generate_family(FamilyId::U, bound);
    let members: Vec<_> = catalog.all_members().cloned().collect();
    let results = par::map_slice(&members, |member| {
        let lt = &member.labeled;
        let mut cexs = Vec::new();
        let mut fallbacks = 0u64;
        let gt2 = match solver::min_value(lt.graph(), DominationVariant::Semitotal) {
            Ok(v) => v,
            Err(e) => {
                cexs.push(cex(lt.graph(), e.to_string()));
                return (cexs, 0);
            }
        };
        let a_set: Vec<usize> = lt.vertices_with(Status::A).collect();
        for &x in &a_set {
            match solver::min_almost_value(lt.graph(), x) {
                Ok(v) if v == gt2 - 1 => {}
                Ok(v) => cexs.push(cex(
                    lt.graph(),
                    format!(
                        "member [{}], vertex {x}: minimum almost semitotal set has size {v}, expected {}",
                        lt.status_string(),
                        gt2 - 1
                    ),
                )),
                Err(e) => cexs.push(cex(lt.graph(), e.to_string())),
            }
            match member.construct_almost_set(x) {
                Ok(outcome) => {
                    if outcome.fallback {
                        fallbacks += 1;
                    }
                    let size_ok = outcome.set.len() == gt2 - 1;
                    let contains_a = a_set.iter().all(|a| outcome.set.contains(a));
                    let valid = solver::is_almost_semitotal(lt.graph(), &outcome.set, x)
                        .unwrap_or(false);
                    if !(size_ok && contains_a && valid) {
                        cexs.push(cex(
                            lt.graph(),
                            format!(
                                "member [{}], vertex {x}: constructed set {:?} invalid (size_ok={size_ok}, contains_A={contains_a}, valid={valid})",
                                lt.status_string(),
                                outcome.set
                            ),
                        ));
                    }
                }
                Err(e) => cexs.push(cex(
                    lt.graph(),
                    format!("member [{}], vertex {x}: {e}", lt.status_string()),
                )),
            }
        }
        (cexs, fallbacks)
    });
    let mut counterexamples = Vec::new();
    let mut fallbacks = 0u64;
    let mut queries = 0u64;
    for (member, (cexs, f)) in members.iter().zip(results) {
        counterexamples.extend(cexs);
        fallbacks += f;
        queries += member.labeled.vertices_with(Status::A).count() as u64;
    }
    Outcome {
        range: format!(
            "family U up to order {bound}: {} members, {queries} (member, A-vertex) queries",
            members.len()
        ),
        instances: queries,
        counterexamples,
        notes: vec![format!("construction fallback invocations: {fallbacks}")],
    }
}

fn check_leaf_free_optima(bound: usize, stream: &[Graph]) -> Outcome {
    let trees: Vec<Graph> = trees_in(3, bound)
        .into_iter()
        .filter(|t| !t.structural_profile().is_star)
        .collect();
    let mut notes = Vec::new();
    let externals = eligible_stream(stream, &mut notes, |g| {
        g.n() >= 3 && g.is_connected() && !g.structural_profile().is_star
    });
    let mut all: Vec<Graph> = trees;
    all.extend(externals.into_iter().cloned());
    let counterexamples = par::map_slice(&all, |g| {
        let leaves = g.structural_profile().leaves;
        for variant in [DominationVariant::Plain, DominationVariant::Semitotal] {
            let full = match solver::min_value(g, variant) {
                Ok(v) => v,
                Err(e) => return Some(cex(g, e.to_string())),
            };
            match solver::min_value_excluding(g, variant, &leaves) {
                Ok(Some(v)) if v == full => {}
                Ok(Some(v)) => {
                    return Some(cex(
                        g,
                        format!(
                            "{}: leaf-free optimum {v} differs from optimum {full}",
                            variant.as_str()
                        ),
                    ))
                }
                Ok(None) => {
                    return Some(cex(
                        g,
                        format!("{}: no leaf-free set exists", variant.as_str()),
                    ))
                }
                Err(e) => return Some(cex(g, e.to_string())),
            }
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("non-star trees of order 3..={bound}; external connected non-star graphs"),
        instances: all.len() as u64,
        counterexamples,
        notes,
    }
}

fn check_class3_characterization(bound: usize) -> Outcome {
    let catalog = families::generate_family(FamilyId::U, bound);
    let family_codes: BTreeSet<String> =
        catalog.tree_codes().map(|c| c.to_string()).collect();
    let trees = trees_in(3, bound);
    let counterexamples = par::map_slice(&trees, |t| {
        let mut out = Vec::new();
        let code = canonical_code(t).expect("enumerated trees").to_string();
        let in_family = family_codes.contains(&code);
        match msd::classify_tree(t) {
            Ok(class) => {
                let is_class3 = class == TreeClass::Class3;
                if is_class3 != in_family {
                    out.push(cex(
                        t,
                        format!(
                            "order {}: {class} but {} the U catalog",
                            t.n(),
                            if in_family { "inside" } else { "outside" }
                        ),
                    ));
                }
                let profile = t.structural_profile();
                if is_class3
                    && !profile.is_star
                    && profile.diameter.is_some_and(|d| d <= 6)
                {
                    out.push(cex(
                        t,
                        format!(
                            "non-star tree of diameter {:?} <= 6 in Class 3",
                            profile.diameter
                        ),
                    ));
                }
            }
            Err(e) => out.push(cex(t, e.to_string())),
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("all trees of order 3..={bound} against the U catalog"),
        instances: trees.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn check_semitotal_vs_domination(bound: usize) -> Outcome {
    let catalog = families::generate_family(FamilyId::T, bound);
    let family_codes: BTreeSet<String> =
        catalog.tree_codes().map(|c| c.to_string()).collect();
    let trees: Vec<Graph> = trees_in(2, bound)
        .into_iter()
        .filter(|t| !t.structural_profile().is_star)
        .collect();
    let counterexamples = par::map_slice(&trees, |t| {
        let gamma = solver::min_value(t, DominationVariant::Plain).expect("tree");
        let gt2 = solver::min_value(t, DominationVariant::Semitotal).expect("order >= 2");
        if gt2 > 2 * gamma - 1 {
            return Some(cex(
                t,
                format!("gamma_t2 {gt2} exceeds 2*gamma-1 = {}", 2 * gamma - 1),
            ));
        }
        let code = canonical_code(t).expect("tree").to_string();
        let equality = gt2 == 2 * gamma - 1;
        let in_family = family_codes.contains(&code);
        if equality != in_family {
            return Some(cex(
                t,
                format!(
                    "gamma_t2 {gt2}, gamma {gamma}: equality={equality} but T membership={in_family}"
                ),
            ));
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("non-star trees of order 2..={bound} against the T catalog"),
        instances: trees.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn check_total_vs_semitotal(bound: usize) -> Outcome {
    let catalog = families::generate_family(FamilyId::T1, bound);
    let family_codes: BTreeSet<String> =
        catalog.tree_codes().map(|c| c.to_string()).collect();
    let trees = trees_in(2, bound);
    let counterexamples = par::map_slice(&trees, |t| {
        let gt = solver::min_value(t, DominationVariant::Total).expect("order >= 2");
        let gt2 = solver::min_value(t, DominationVariant::Semitotal).expect("order >= 2");
        if gt > 2 * gt2 - 1 {
            return Some(cex(
                t,
                format!("gamma_t {gt} exceeds 2*gamma_t2-1 = {}", 2 * gt2 - 1),
            ));
        }
        let code = canonical_code(t).expect("tree").to_string();
        let equality = gt == 2 * gt2 - 1;
        let in_family = family_codes.contains(&code);
        if equality != in_family {
            return Some(cex(
                t,
                format!(
                    "gamma_t {gt}, gamma_t2 {gt2}: equality={equality} but T1 membership={in_family}"
                ),
            ));
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("all trees of order 2..={bound} against the T1 catalog"),
        instances: trees.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

fn check_extremal_ratio_identity(bound: usize) -> Outcome {
    let catalog = families::generate_family(FamilyId::T, bound);
    let members: Vec<_> = catalog.all_members().map(|m| m.labeled.clone()).collect();
    let counterexamples = par::map_slice(&members, |lt| {
        let gamma = solver::min_value(lt.graph(), DominationVariant::Plain).expect("tree");
        let gt2 = solver::min_value(lt.graph(), DominationVariant::Semitotal).expect("order >= 6");
        if gt2 == 2 * gamma - 1 {
            None
        } else {
            Some(cex(
                lt.graph(),
                format!(
                    "member [{}]: gamma_t2 {gt2} != 2*gamma-1 = {}",
                    lt.status_string(),
                    2 * gamma - 1
                ),
            ))
        }
    })
    .into_iter()
    .flatten()
    .collect();
    Outcome {
        range: format!("family T generated up to order {bound} ({} members)", members.len()),
        instances: members.len() as u64,
        counterexamples,
        notes: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(claim: ClaimId, max_n: usize) -> VerificationReport {
        run_verification(
            claim,
            &VerifyOptions {
                max_n: Some(max_n),
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn small_bounds_pass() {
        assert_eq!(run(ClaimId::Obs2_1, 5).verdict, Verdict::Pass);
        assert_eq!(run(ClaimId::Obs2_2, 9).verdict, Verdict::Pass);
        assert_eq!(run(ClaimId::Obs2_3, 3).verdict, Verdict::Pass);
        assert_eq!(run(ClaimId::Thm2_4, 8).verdict, Verdict::Pass);
        assert_eq!(run(ClaimId::Thm2_12, 9).verdict, Verdict::Pass);
        assert_eq!(run(ClaimId::Thm3_1, 10).verdict, Verdict::Pass);
        assert_eq!(run(ClaimId::Thm3_2, 10).verdict, Verdict::Pass);
        assert_eq!(run(ClaimId::Lem2_8, 9).verdict, Verdict::Pass);
    }

    #[test]
    fn claim_ids_round_trip() {
        for claim in ClaimId::ALL {
            assert_eq!(claim.as_str().parse::<ClaimId>().unwrap(), claim);
        }
        assert!(matches!(
            "thm9.9".parse::<ClaimId>(),
            Err(VerifyError::UnknownClaim(_))
        ));
    }

    #[test]
    fn bounds_are_guarded() {
        let err = run_verification(
            ClaimId::Thm2_4,
            &VerifyOptions {
                max_n: Some(50),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, VerifyError::BoundTooLarge { .. }));
    }

    #[test]
    fn stream_feeds_general_graph_claims() {
        let stream = vec![
            named::complete(4).unwrap(),
            named::cycle(5).unwrap(),
            Graph::from_edges(2, [(0, 1)]).unwrap(), // below the order filter
        ];
        let report = run_verification(
            ClaimId::Thm2_4,
            &VerifyOptions {
                max_n: Some(5),
                external_graphs: stream,
                counterexample_cap: None,
            },
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.notes.iter().any(|n| n.contains("2 matching")));
    }

    #[test]
    fn reports_serialize_with_stable_fields() {
        let report = run(ClaimId::Obs2_1, 4);
        let json = crate::format::to_json(&report);
        assert!(json.starts_with("{\"claim\":\"obs2.1\",\"range\":"));
        assert!(json.contains("\"verdict\":\"pass\""));
    }
}
