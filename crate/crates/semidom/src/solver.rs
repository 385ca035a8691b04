//! Exact minimizers for plain, total, and semitotal domination, plus the
//! "almost semitotal" relaxation that exempts one designated vertex from the
//! distance-two partner requirement.
//!
//! The search is iterative deepening over the target cardinality with
//! branch-and-bound inside each level: pick an unsatisfied requirement (an
//! undominated vertex, or a partner-less member), branch over the vertices
//! able to satisfy it, and prune with a coverage bound. Searching
//! cardinalities in increasing order makes optimality constructive: the first
//! level that succeeds is the parameter value. Witnesses are then rebuilt
//! greedily so the reported set is the lexicographically least optimum.

use crate::graph::{bit, Bits, Graph};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("the empty graph has no domination parameters")]
    EmptyGraph,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("vertex {0} is not a member of the given set")]
    NotInSet(usize),
}

/// The three domination flavors this crate computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DominationVariant {
    /// Every vertex outside the set has a neighbor in it.
    Plain,
    /// Every vertex of the graph has a neighbor in the set.
    Total,
    /// Dominating, and every member has another member within distance two.
    Semitotal,
}

impl DominationVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            DominationVariant::Plain => "gamma",
            DominationVariant::Total => "gamma-t",
            DominationVariant::Semitotal => "gamma-t2",
        }
    }
}

/// An exact optimum with its witness set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub variant: DominationVariant,
    pub value: usize,
    /// Sorted ids; the lexicographically least optimal set.
    pub witness: Vec<usize>,
    /// Search nodes visited, for diagnostics.
    pub explored: u64,
}

impl Serialize for SolveResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(4))?;
        m.serialize_entry("param", self.variant.as_str())?;
        m.serialize_entry("value", &self.value)?;
        m.serialize_entry("witness", &self.witness)?;
        m.serialize_entry("explored", &self.explored)?;
        m.end()
    }
}

fn mask_from(g: &Graph, set: &[usize]) -> Result<u128, SolveError> {
    let mut m = 0u128;
    for &v in set {
        if v >= g.n() {
            return Err(SolveError::VertexOutOfRange {
                vertex: v,
                order: g.n(),
            });
        }
        m |= bit(v);
    }
    Ok(m)
}

/// Membership test for a candidate set under the given variant.
pub fn check_set(g: &Graph, set: &[usize], variant: DominationVariant) -> Result<bool, SolveError> {
    let s = mask_from(g, set)?;
    Ok(match variant {
        DominationVariant::Plain => dominates(g, s),
        DominationVariant::Total => totally_dominates(g, s),
        DominationVariant::Semitotal => {
            dominates(g, s) && Bits(s).all(|v| g.ball2_mask(v) & s != 0)
        }
    })
}

/// True when `set` dominates `g` and every member other than `exempt` has a
/// partner in the set within distance two. `exempt` must belong to the set.
pub fn is_almost_semitotal(g: &Graph, set: &[usize], exempt: usize) -> Result<bool, SolveError> {
    let s = mask_from(g, set)?;
    if exempt >= g.n() {
        return Err(SolveError::VertexOutOfRange {
            vertex: exempt,
            order: g.n(),
        });
    }
    if s & bit(exempt) == 0 {
        return Err(SolveError::NotInSet(exempt));
    }
    Ok(dominates(g, s) && Bits(s & !bit(exempt)).all(|v| g.ball2_mask(v) & s != 0))
}

fn dominates(g: &Graph, s: u128) -> bool {
    let mut covered = s;
    for v in Bits(s) {
        covered |= g.neighbors_mask(v);
    }
    covered == g.full_mask()
}

fn totally_dominates(g: &Graph, s: u128) -> bool {
    let mut covered = 0u128;
    for v in Bits(s) {
        covered |= g.neighbors_mask(v);
    }
    covered == g.full_mask()
}

#[derive(Clone, Copy)]
enum Mode {
    Plain,
    Total,
    Semitotal { exempt: Option<usize> },
}

struct Search<'a> {
    g: &'a Graph,
    closed: Vec<u128>,
    ball2: Vec<u128>,
    full: u128,
    mode: Mode,
    explored: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, mode: Mode) -> Self {
        let closed = g.vertices().map(|v| g.closed_mask(v)).collect();
        let ball2 = match mode {
            Mode::Semitotal { .. } => g.vertices().map(|v| g.ball2_mask(v)).collect(),
            _ => Vec::new(),
        };
        Search {
            g,
            closed,
            ball2,
            full: g.full_mask(),
            mode,
            explored: 0,
        }
    }

    /// Vertices satisfied by picking `u` into the set.
    fn covers(&self, u: usize) -> u128 {
        match self.mode {
            Mode::Total => self.g.neighbors_mask(u),
            _ => self.closed[u],
        }
    }

    /// What still violates the coverage requirement given `chosen`.
    fn uncovered(&self, chosen: u128) -> u128 {
        let mut covered = match self.mode {
            Mode::Total => 0,
            _ => chosen,
        };
        for v in Bits(chosen) {
            covered |= self.g.neighbors_mask(v);
        }
        self.full & !covered
    }

    /// Vertex set able to cover requirement vertex `v`.
    fn suppliers(&self, v: usize) -> u128 {
        match self.mode {
            Mode::Total => self.g.neighbors_mask(v),
            _ => self.closed[v],
        }
    }

    /// Looks for a valid set of at most `budget` more vertices on top of
    /// `chosen`, never touching `banned`. Returns the set found.
    fn run(&mut self, budget: usize, chosen: u128, mut banned: u128) -> Option<u128> {
        self.explored += 1;
        let uncovered = self.uncovered(chosen);
        if uncovered != 0 {
            // choose the requirement with the fewest suppliers
            let mut best: Option<(u128, u32)> = None;
            for v in Bits(uncovered) {
                let cands = self.suppliers(v) & !banned;
                let count = cands.count_ones();
                if count == 0 {
                    return None;
                }
                if best.is_none_or(|(_, c)| count < c) {
                    best = Some((cands, count));
                    if count == 1 {
                        break;
                    }
                }
            }
            if budget == 0 {
                return None;
            }
            // coverage bound: each further pick satisfies at most `max_gain`
            // outstanding requirements
            let allowed = self.full & !banned & !chosen;
            let mut max_gain = 0;
            for u in Bits(allowed) {
                max_gain = max_gain.max((self.covers(u) & uncovered).count_ones());
            }
            if max_gain == 0 || uncovered.count_ones().div_ceil(max_gain) as usize > budget {
                return None;
            }
            let (cands, _) = best.expect("uncovered vertex yields a requirement");
            for u in Bits(cands) {
                if let Some(found) = self.run(budget - 1, chosen | bit(u), banned) {
                    return Some(found);
                }
                banned |= bit(u);
            }
            return None;
        }
        if let Mode::Semitotal { exempt } = self.mode {
            for s in Bits(chosen) {
                if Some(s) == exempt || self.ball2[s] & chosen != 0 {
                    continue;
                }
                if budget == 0 {
                    return None;
                }
                let cands = self.ball2[s] & !banned & !chosen;
                for u in Bits(cands) {
                    if let Some(found) = self.run(budget - 1, chosen | bit(u), banned) {
                        return Some(found);
                    }
                    banned |= bit(u);
                }
                return None;
            }
        }
        Some(chosen)
    }

    /// Smallest `k` admitting a valid set of size exactly `k` that contains
    /// `forced` and avoids `banned`. `None` when no such set exists at all.
    fn optimum(&mut self, forced: u128, banned: u128) -> Option<usize> {
        debug_assert_eq!(forced & banned, 0);
        let pool = ((self.full & !banned) | forced).count_ones() as usize;
        let base = forced.count_ones() as usize;
        (base.max(1)..=pool).find(|&k| self.run(k - base, forced, banned).is_some())
    }

    /// Lexicographically least valid set of size exactly `value` containing
    /// `forced` and avoiding `banned`. Requires such a set to exist.
    fn lex_min(&mut self, value: usize, forced: u128, banned0: u128) -> u128 {
        let mut chosen = forced;
        let mut banned = banned0;
        for id in 0..self.g.n() {
            if chosen.count_ones() as usize == value {
                break;
            }
            if chosen & bit(id) != 0 || banned & bit(id) != 0 {
                continue;
            }
            let trial = chosen | bit(id);
            let pool = (self.full & !banned).count_ones() as usize;
            let feasible = pool >= value
                && self
                    .run(value - trial.count_ones() as usize, trial, banned)
                    .is_some();
            if feasible {
                chosen = trial;
            } else {
                banned |= bit(id);
            }
        }
        assert_eq!(
            chosen.count_ones() as usize,
            value,
            "witness reconstruction must reach the optimum size"
        );
        chosen
    }
}

fn require_nonempty(g: &Graph) -> Result<(), SolveError> {
    if g.n() == 0 {
        Err(SolveError::EmptyGraph)
    } else {
        Ok(())
    }
}

fn require_isolate_free(g: &Graph) -> Result<(), SolveError> {
    require_nonempty(g)?;
    match g.vertices().find(|&v| g.degree(v) == 0) {
        Some(v) => Err(SolveError::IsolatedVertex(v)),
        None => Ok(()),
    }
}

fn validate(g: &Graph, variant: DominationVariant) -> Result<(), SolveError> {
    match variant {
        DominationVariant::Plain => require_nonempty(g),
        _ => require_isolate_free(g),
    }
}

fn mode_of(variant: DominationVariant) -> Mode {
    match variant {
        DominationVariant::Plain => Mode::Plain,
        DominationVariant::Total => Mode::Total,
        DominationVariant::Semitotal => Mode::Semitotal { exempt: None },
    }
}

/// Exact parameter value without witness reconstruction.
pub fn min_value(g: &Graph, variant: DominationVariant) -> Result<usize, SolveError> {
    validate(g, variant)?;
    let mut search = Search::new(g, mode_of(variant));
    Ok(search
        .optimum(0, 0)
        .expect("an unconstrained instance always has the whole vertex set"))
}

/// Exact optimum and the lexicographically least optimal witness.
pub fn min_set(g: &Graph, variant: DominationVariant) -> Result<SolveResult, SolveError> {
    validate(g, variant)?;
    let mut search = Search::new(g, mode_of(variant));
    let value = search
        .optimum(0, 0)
        .expect("an unconstrained instance always has the whole vertex set");
    let witness = search.lex_min(value, 0, 0);
    Ok(SolveResult {
        variant,
        value,
        witness: Bits(witness).collect(),
        explored: search.explored,
    })
}

/// Minimum size of an almost semitotal dominating set relative to `exempt`.
pub fn min_almost_value(g: &Graph, exempt: usize) -> Result<usize, SolveError> {
    require_isolate_free(g)?;
    if exempt >= g.n() {
        return Err(SolveError::VertexOutOfRange {
            vertex: exempt,
            order: g.n(),
        });
    }
    let mut search = Search::new(
        g,
        Mode::Semitotal {
            exempt: Some(exempt),
        },
    );
    Ok(search
        .optimum(bit(exempt), 0)
        .expect("the whole vertex set is almost semitotal"))
}

/// Minimum almost semitotal dominating set relative to `exempt`, which is
/// always part of the witness.
pub fn min_almost_semitotal(g: &Graph, exempt: usize) -> Result<SolveResult, SolveError> {
    require_isolate_free(g)?;
    if exempt >= g.n() {
        return Err(SolveError::VertexOutOfRange {
            vertex: exempt,
            order: g.n(),
        });
    }
    let mut search = Search::new(
        g,
        Mode::Semitotal {
            exempt: Some(exempt),
        },
    );
    let value = search
        .optimum(bit(exempt), 0)
        .expect("the whole vertex set is almost semitotal");
    let witness = search.lex_min(value, bit(exempt), 0);
    Ok(SolveResult {
        variant: DominationVariant::Semitotal,
        value,
        witness: Bits(witness).collect(),
        explored: search.explored,
    })
}

/// Like [`min_value`] but with a set of vertices barred from the solution.
/// `None` when no valid set avoids all of them.
pub fn min_value_excluding(
    g: &Graph,
    variant: DominationVariant,
    excluded: &[usize],
) -> Result<Option<usize>, SolveError> {
    validate(g, variant)?;
    let banned = mask_from(g, excluded)?;
    let mut search = Search::new(g, mode_of(variant));
    Ok(search.optimum(0, banned))
}

/// Minimum almost semitotal set relative to `exempt` forced to contain all of
/// `required`. Used as the guaranteed fallback when constructing such sets
/// from a family derivation.
pub(crate) fn min_almost_superset(
    g: &Graph,
    exempt: usize,
    required: u128,
) -> Result<Vec<usize>, SolveError> {
    require_isolate_free(g)?;
    let forced = required | bit(exempt);
    let mut search = Search::new(
        g,
        Mode::Semitotal {
            exempt: Some(exempt),
        },
    );
    let value = search
        .optimum(forced, 0)
        .expect("the whole vertex set is almost semitotal");
    let witness = search.lex_min(value, forced, 0);
    Ok(Bits(witness).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn membership_predicates() {
        let p3 = named::path(3).unwrap();
        assert!(check_set(&p3, &[1], DominationVariant::Plain).unwrap());
        assert!(!check_set(&p3, &[1], DominationVariant::Semitotal).unwrap());

        let p6 = named::path(6).unwrap();
        // {1,4} dominates but the members are distance three apart
        assert!(check_set(&p6, &[1, 4], DominationVariant::Plain).unwrap());
        assert!(!check_set(&p6, &[1, 4], DominationVariant::Semitotal).unwrap());

        assert_eq!(
            check_set(&p3, &[7], DominationVariant::Plain).unwrap_err(),
            SolveError::VertexOutOfRange { vertex: 7, order: 3 }
        );
    }

    #[test]
    fn almost_semitotal_predicate() {
        let p3 = named::path(3).unwrap();
        assert!(is_almost_semitotal(&p3, &[1], 1).unwrap());

        let p8 = named::path(8).unwrap();
        assert!(is_almost_semitotal(&p8, &[1, 4, 6], 1).unwrap());
        assert!(!is_almost_semitotal(&p8, &[1, 4, 7], 1).unwrap());

        assert_eq!(
            is_almost_semitotal(&p8, &[1, 4, 6], 2).unwrap_err(),
            SolveError::NotInSet(2)
        );
    }

    #[test]
    fn small_optima() {
        let p6 = named::path(6).unwrap();
        assert_eq!(min_set(&p6, DominationVariant::Plain).unwrap().value, 2);
        assert_eq!(min_set(&p6, DominationVariant::Semitotal).unwrap().value, 3);

        let p5 = named::path(5).unwrap();
        assert_eq!(min_set(&p5, DominationVariant::Total).unwrap().value, 3);
        assert_eq!(min_set(&p5, DominationVariant::Semitotal).unwrap().value, 2);

        let k2 = named::complete(2).unwrap();
        assert_eq!(min_set(&k2, DominationVariant::Semitotal).unwrap().value, 2);
    }

    #[test]
    fn witnesses_are_lex_least_and_valid() {
        let p6 = named::path(6).unwrap();
        let r = min_set(&p6, DominationVariant::Semitotal).unwrap();
        assert_eq!(r.witness, vec![0, 2, 4]);
        assert!(check_set(&p6, &r.witness, DominationVariant::Semitotal).unwrap());

        let r = min_set(&p6, DominationVariant::Plain).unwrap();
        assert_eq!(r.witness, vec![1, 4]);
    }

    #[test]
    fn almost_semitotal_minima() {
        let p3 = named::path(3).unwrap();
        let r = min_almost_semitotal(&p3, 1).unwrap();
        assert_eq!((r.value, r.witness.clone()), (1, vec![1]));

        let p8 = named::path(8).unwrap();
        assert_eq!(min_almost_semitotal(&p8, 1).unwrap().value, 3);
        assert_eq!(min_value(&p8, DominationVariant::Semitotal).unwrap(), 4);

        let k2 = named::complete(2).unwrap();
        let r = min_almost_semitotal(&k2, 0).unwrap();
        assert_eq!((r.value, r.witness.clone()), (1, vec![0]));
    }

    #[test]
    fn precondition_errors() {
        let empty = crate::graph::Graph::from_edges(0, []).unwrap();
        assert_eq!(
            min_set(&empty, DominationVariant::Plain).unwrap_err(),
            SolveError::EmptyGraph
        );

        let lonely = crate::graph::Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            min_set(&lonely, DominationVariant::Total).unwrap_err(),
            SolveError::IsolatedVertex(2)
        );
        assert_eq!(
            min_set(&lonely, DominationVariant::Semitotal).unwrap_err(),
            SolveError::IsolatedVertex(2)
        );
        // plain domination accepts isolated vertices
        assert_eq!(min_set(&lonely, DominationVariant::Plain).unwrap().value, 2);
    }

    #[test]
    fn disconnected_isolate_free_is_accepted() {
        let g = crate::graph::Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(min_set(&g, DominationVariant::Semitotal).unwrap().value, 4);
        assert_eq!(min_set(&g, DominationVariant::Plain).unwrap().value, 2);
    }

    #[test]
    fn exclusion_search() {
        let p6 = named::path(6).unwrap();
        // leaves can always be avoided on a path
        assert_eq!(
            min_value_excluding(&p6, DominationVariant::Plain, &[0, 5]).unwrap(),
            Some(2)
        );
        // banning everything leaves nothing to pick
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(
            min_value_excluding(&p6, DominationVariant::Plain, &all).unwrap(),
            None
        );
    }

    #[test]
    fn sandwich_on_small_graphs() {
        for g in [
            named::path(7).unwrap(),
            named::cycle(8).unwrap(),
            named::complete_bipartite(2, 4).unwrap(),
            named::wheel(5).unwrap(),
        ] {
            let gamma = min_value(&g, DominationVariant::Plain).unwrap();
            let t2 = min_value(&g, DominationVariant::Semitotal).unwrap();
            let t = min_value(&g, DominationVariant::Total).unwrap();
            assert!(gamma <= t2 && t2 <= t, "sandwich failed on {g:?}");
        }
    }
}
