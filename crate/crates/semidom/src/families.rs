//! Operation-closed families of labeled trees.
//!
//! A labeled tree pairs a tree with one status per vertex. Three families are
//! generated from fixed seeds by attachment operations:
//!
//! * `U`  — seed `P_3` labeled `C,A,C`; closed under `P1`, `P2`, `P3`.
//!   Its trees are exactly the trees whose semitotal domination number grows
//!   only after three subdivisions of an edge.
//! * `T`  — seed `P_6` labeled `C,A,D,E,B,C`; closed under `O1`, `O2`.
//!   Its trees attain the extremal ratio `gamma_t2 = 2*gamma - 1`.
//! * `T1` — seed `P_5` labeled `C,B,D,A,C`; closed under `O1`, `O3`.
//!   Its trees attain `gamma_t = 2*gamma_t2 - 1`.
//!
//! Catalogs are built by breadth-first closure up to an order bound,
//! deduplicated on a label-aware canonical code, and retain the derivations
//! that reach each member. Catalog lookups answer membership for arbitrary
//! input trees, and a derivation can be replayed into an almost semitotal
//! dominating set one vertex short of the optimum.

use crate::canon::{self, canonical_code, CanonicalCode};
use crate::graph::{bit, Bits, Graph, GraphError};
use crate::par;
use crate::solver::{self, DominationVariant, SolveError};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("input graph is not a tree")]
    NotATree,
    #[error("status count {statuses} does not match graph order {order}")]
    StatusCountMismatch { statuses: usize, order: usize },
    #[error("vertex {vertex} out of range for tree of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("operation {op} requires status {required} at the attachment vertex, found {found}")]
    StatusMismatch {
        op: OpId,
        required: &'static str,
        found: Status,
    },
    #[error("tree order {order} exceeds the recognition cap {cap}")]
    OrderExceedsCap { order: usize, cap: usize },
    #[error("vertex {0} does not have status A")]
    NotStatusA(usize),
    #[error("derivation does not reproduce the given labeled tree")]
    DerivationMismatch,
    #[error("labeling uses status {found} outside the {family} alphabet")]
    AlphabetMismatch { family: FamilyId, found: Status },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Vertex status. Family `U` uses `A`, `B`, `C`; families `T` and `T1` use
/// the full alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    A,
    B,
    C,
    D,
    E,
}

impl Status {
    pub fn letter(self) -> char {
        match self {
            Status::A => 'A',
            Status::B => 'B',
            Status::C => 'C',
            Status::D => 'D',
            Status::E => 'E',
        }
    }

    pub fn from_letter(c: char) -> Option<Status> {
        Some(match c {
            'A' => Status::A,
            'B' => Status::B,
            'C' => Status::C,
            'D' => Status::D,
            'E' => Status::E,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// The three generated families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    U,
    T,
    T1,
}

impl FamilyId {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::U => "U",
            FamilyId::T => "T",
            FamilyId::T1 => "T1",
        }
    }

    pub fn operations(self) -> &'static [OpId] {
        match self {
            FamilyId::U => &[OpId::P1, OpId::P2, OpId::P3],
            FamilyId::T => &[OpId::O1, OpId::O2],
            FamilyId::T1 => &[OpId::O1, OpId::O3],
        }
    }

    pub fn alphabet(self) -> &'static [Status] {
        match self {
            FamilyId::U => &[Status::A, Status::B, Status::C],
            _ => &[Status::A, Status::B, Status::C, Status::D, Status::E],
        }
    }
}

impl std::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "U" | "u" => Ok(FamilyId::U),
            "T" | "t" => Ok(FamilyId::T),
            "T1" | "t1" => Ok(FamilyId::T1),
            other => Err(format!("unknown family `{other}` (expected U, T, or T1)")),
        }
    }
}

/// Attachment operations. Each adds a pendant path at a vertex whose status
/// matches, labeling the new vertices in path order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpId {
    /// At an `A` vertex, add one leaf labeled `C`.
    P1,
    /// At a `B` vertex, add a four-vertex path labeled `B,C,A,C`.
    P2,
    /// At a `C` vertex, add a five-vertex path labeled `B,B,C,A,C`.
    P3,
    /// At an `A` or `B` vertex, add one leaf labeled `C`.
    O1,
    /// At an `A` vertex, add a four-vertex path labeled `D,E,B,C`.
    O2,
    /// At an `A` vertex, add a three-vertex path labeled `D,B,C`.
    O3,
}

impl OpId {
    pub fn as_str(self) -> &'static str {
        match self {
            OpId::P1 => "P1",
            OpId::P2 => "P2",
            OpId::P3 => "P3",
            OpId::O1 => "O1",
            OpId::O2 => "O2",
            OpId::O3 => "O3",
        }
    }

    /// Statuses of the added path, outward from the attachment vertex.
    pub fn added_statuses(self) -> &'static [Status] {
        use Status::*;
        match self {
            OpId::P1 | OpId::O1 => &[C],
            OpId::P2 => &[B, C, A, C],
            OpId::P3 => &[B, B, C, A, C],
            OpId::O2 => &[D, E, B, C],
            OpId::O3 => &[D, B, C],
        }
    }

    pub fn added_count(self) -> usize {
        self.added_statuses().len()
    }

    pub fn accepts(self, status: Status) -> bool {
        match self {
            OpId::P1 | OpId::O2 | OpId::O3 => status == Status::A,
            OpId::P2 => status == Status::B,
            OpId::P3 => status == Status::C,
            OpId::O1 => status == Status::A || status == Status::B,
        }
    }

    fn required_str(self) -> &'static str {
        match self {
            OpId::P1 | OpId::O2 | OpId::O3 => "A",
            OpId::P2 => "B",
            OpId::P3 => "C",
            OpId::O1 => "A or B",
        }
    }
}

impl std::fmt::Display for OpId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for OpId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "P1" => OpId::P1,
            "P2" => OpId::P2,
            "P3" => OpId::P3,
            "O1" => OpId::O1,
            "O2" => OpId::O2,
            "O3" => OpId::O3,
            other => return Err(format!("unknown operation `{other}`")),
        })
    }
}

/// A tree together with one status per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    graph: Graph,
    status: Vec<Status>,
}

impl LabeledTree {
    pub fn new(graph: Graph, status: Vec<Status>) -> Result<Self, FamilyError> {
        if !graph.is_tree() {
            return Err(FamilyError::NotATree);
        }
        if status.len() != graph.n() {
            return Err(FamilyError::StatusCountMismatch {
                statuses: status.len(),
                order: graph.n(),
            });
        }
        Ok(LabeledTree { graph, status })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    pub fn status(&self, v: usize) -> Status {
        self.status[v]
    }

    pub fn statuses(&self) -> &[Status] {
        &self.status
    }

    pub fn status_string(&self) -> String {
        self.status.iter().map(|s| s.letter()).collect()
    }

    pub fn vertices_with(&self, status: Status) -> impl Iterator<Item = usize> + '_ {
        self.status
            .iter()
            .enumerate()
            .filter(move |(_, s)| **s == status)
            .map(|(v, _)| v)
    }

    fn status_bytes(&self) -> Vec<u8> {
        self.status.iter().map(|s| s.letter() as u8).collect()
    }

    /// Canonical code refined by statuses: equal exactly on label-preserving
    /// isomorphism classes.
    pub fn labeled_code(&self) -> String {
        let (code, _) = canon::canonical_form(&self.graph, Some(&self.status_bytes()))
            .expect("labeled trees hold trees");
        String::from_utf8(code).expect("ASCII code")
    }

    /// Like [`labeled_code`](Self::labeled_code) with one vertex marked, so
    /// codes match exactly when an isomorphism maps mark to mark.
    fn marked_code(&self, mark: usize) -> Vec<u8> {
        let mut sym = self.status_bytes();
        sym[mark] = sym[mark].to_ascii_lowercase();
        let (code, _) =
            canon::canonical_form(&self.graph, Some(&sym)).expect("labeled trees hold trees");
        code
    }
}

/// One construction step: the operation and the vertex it attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivationStep {
    pub op: OpId,
    pub attach: usize,
}

/// A replayable construction from a family seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub family: FamilyId,
    pub steps: Vec<DerivationStep>,
}

/// Per-step replay bookkeeping: which op ran and the first id it added.
#[derive(Debug, Clone, Copy)]
struct StepTrace {
    op: OpId,
    base: usize,
}

impl Derivation {
    pub fn seed_only(family: FamilyId) -> Self {
        Derivation {
            family,
            steps: Vec::new(),
        }
    }

    pub fn replay(&self) -> Result<LabeledTree, FamilyError> {
        Ok(self.replay_traced()?.0)
    }

    /// Replay that also reports, per vertex, the index of the step that
    /// introduced it (`0` for seed vertices) and the id ranges of each step.
    fn replay_traced(&self) -> Result<(LabeledTree, Vec<usize>, Vec<StepTrace>), FamilyError> {
        let mut lt = seed(self.family);
        let mut intro = vec![0usize; lt.order()];
        let mut traces = Vec::with_capacity(self.steps.len());
        for (idx, step) in self.steps.iter().enumerate() {
            let base = lt.order();
            lt = apply_operation(&lt, step.op, step.attach)?;
            intro.resize(lt.order(), idx + 1);
            traces.push(StepTrace { op: step.op, base });
        }
        Ok((lt, intro, traces))
    }

    /// Compact text form: `P3@2;P1@1`, or `-` for the bare seed.
    pub fn to_compact(&self) -> String {
        if self.steps.is_empty() {
            return "-".into();
        }
        self.steps
            .iter()
            .map(|s| format!("{}@{}", s.op, s.attach))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// The fixed starting labeled tree of a family.
pub fn seed(family: FamilyId) -> LabeledTree {
    use Status::*;
    let (order, statuses): (usize, Vec<Status>) = match family {
        FamilyId::U => (3, vec![C, A, C]),
        FamilyId::T => (6, vec![C, A, D, E, B, C]),
        FamilyId::T1 => (5, vec![C, B, D, A, C]),
    };
    let graph = crate::graph::named::path(order).expect("seed path");
    LabeledTree::new(graph, statuses).expect("seed labeling")
}

/// Applies one attachment operation at `attach`, whose status must match the
/// operation. New vertices take the next ids, in path order outward.
pub fn apply_operation(
    lt: &LabeledTree,
    op: OpId,
    attach: usize,
) -> Result<LabeledTree, FamilyError> {
    if attach >= lt.order() {
        return Err(FamilyError::VertexOutOfRange {
            vertex: attach,
            order: lt.order(),
        });
    }
    if !op.accepts(lt.status(attach)) {
        return Err(FamilyError::StatusMismatch {
            op,
            required: op.required_str(),
            found: lt.status(attach),
        });
    }
    let graph = lt.graph.with_attached_path(attach, op.added_count())?;
    let mut status = lt.status.clone();
    status.extend_from_slice(op.added_statuses());
    Ok(LabeledTree { graph, status })
}

/// Cap on stored derivations per catalog member.
pub const DERIVATION_CAP: usize = 32;

/// A labeled tree in a catalog along with the derivations that reached it.
/// The first derivation replays to `labeled` id-for-id; later ones replay to
/// label-isomorphic copies.
#[derive(Debug, Clone)]
pub struct CatalogMember {
    pub labeled: LabeledTree,
    pub derivations: Vec<Derivation>,
}

/// All members of a family up to an order bound, keyed by the canonical code
/// of the underlying unlabeled tree. One code maps to every distinct labeling
/// of that tree shape present in the family.
#[derive(Debug, Clone)]
pub struct FamilyCatalog {
    pub family: FamilyId,
    pub bound: usize,
    members: BTreeMap<CanonicalCode, Vec<CatalogMember>>,
}

impl FamilyCatalog {
    pub fn members(&self) -> impl Iterator<Item = (&CanonicalCode, &[CatalogMember])> {
        self.members.iter().map(|(c, m)| (c, m.as_slice()))
    }

    pub fn all_members(&self) -> impl Iterator<Item = &CatalogMember> {
        self.members.values().flatten()
    }

    pub fn member_count(&self) -> usize {
        self.members.values().map(Vec::len).sum()
    }

    pub fn tree_codes(&self) -> impl Iterator<Item = &CanonicalCode> {
        self.members.keys()
    }

    pub fn contains_tree(&self, tree: &Graph) -> Result<bool, FamilyError> {
        Ok(self.members.contains_key(&canonical_code(tree)?))
    }

    /// Membership lookup. On success returns the input tree relabeled with a
    /// family labeling (statuses transported onto the caller's vertex ids)
    /// and the primary derivation of the stored representative.
    pub fn recognize(&self, tree: &Graph) -> Result<Option<(LabeledTree, Derivation)>, FamilyError> {
        let code = canonical_code(tree)?;
        let Some(list) = self.members.get(&code) else {
            return Ok(None);
        };
        let member = &list[0];
        let map = canon::isomorphism(tree, None, &member.labeled.graph, None)?
            .expect("equal canonical codes imply an isomorphism");
        let status = (0..tree.n()).map(|v| member.labeled.status(map[v])).collect();
        let labeled = LabeledTree::new(tree.clone(), status)?;
        Ok(Some((labeled, member.derivations[0].clone())))
    }
}

/// Breadth-first closure of the family seed under its operations, pruned at
/// order `n_max`. Deterministic for a given `(family, n_max)`.
pub fn generate_family(family: FamilyId, n_max: usize) -> FamilyCatalog {
    let mut catalog = FamilyCatalog {
        family,
        bound: n_max,
        members: BTreeMap::new(),
    };
    let seed_lt = seed(family);
    if seed_lt.order() > n_max {
        return catalog;
    }
    // labeled code -> member location
    let mut seen: HashMap<String, (CanonicalCode, usize)> = HashMap::new();
    // members pending expansion, grouped by order
    let mut pending: BTreeMap<usize, Vec<(CanonicalCode, usize)>> = BTreeMap::new();

    let insert = |catalog: &mut FamilyCatalog,
                      seen: &mut HashMap<String, (CanonicalCode, usize)>,
                      pending: &mut BTreeMap<usize, Vec<(CanonicalCode, usize)>>,
                      lt: LabeledTree,
                      derivation: Derivation| {
        let key = lt.labeled_code();
        if let Some((code, idx)) = seen.get(&key) {
            let member = &mut catalog
                .members
                .get_mut(code)
                .expect("seen entries point at stored members")[*idx];
            if member.derivations.len() < DERIVATION_CAP {
                member.derivations.push(derivation);
            }
            return;
        }
        let code = canonical_code(lt.graph()).expect("members are trees");
        let order = lt.order();
        let list = catalog.members.entry(code.clone()).or_default();
        list.push(CatalogMember {
            labeled: lt,
            derivations: vec![derivation],
        });
        let idx = list.len() - 1;
        seen.insert(key, (code.clone(), idx));
        pending.entry(order).or_default().push((code, idx));
    };

    insert(
        &mut catalog,
        &mut seen,
        &mut pending,
        seed_lt.clone(),
        Derivation::seed_only(family),
    );

    for order in seed_lt.order()..=n_max {
        let Some(batch) = pending.remove(&order) else {
            continue;
        };
        // snapshot so expansion can run in parallel over the batch
        let snapshot: Vec<(LabeledTree, Derivation)> = batch
            .iter()
            .map(|(code, idx)| {
                let m = &catalog.members[code][*idx];
                (m.labeled.clone(), m.derivations[0].clone())
            })
            .collect();
        let expansions = par::map_slice(&snapshot, |(lt, derivation)| {
            let mut out = Vec::new();
            for &op in family.operations() {
                if lt.order() + op.added_count() > n_max {
                    continue;
                }
                for v in 0..lt.order() {
                    if op.accepts(lt.status(v)) {
                        let child =
                            apply_operation(lt, op, v).expect("status checked before applying");
                        let mut d = derivation.clone();
                        d.steps.push(DerivationStep { op, attach: v });
                        out.push((child, d));
                    }
                }
            }
            out
        });
        for (child, derivation) in expansions.into_iter().flatten() {
            insert(&mut catalog, &mut seen, &mut pending, child, derivation);
        }
    }
    catalog
}

/// Builds the catalog for the input's order and looks the tree up in it.
pub fn recognize(
    family: FamilyId,
    tree: &Graph,
    n_cap: usize,
) -> Result<Option<(LabeledTree, Derivation)>, FamilyError> {
    if !tree.is_tree() {
        return Err(FamilyError::NotATree);
    }
    if tree.n() > n_cap {
        return Err(FamilyError::OrderExceedsCap {
            order: tree.n(),
            cap: n_cap,
        });
    }
    generate_family(family, tree.n()).recognize(tree)
}

/// One failed structural clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: &'static str,
    pub details: String,
}

/// Checks the structural properties every member of the family satisfies.
/// Returns the violated clauses (empty for members). Errors when the
/// labeling uses letters outside the family alphabet.
pub fn validate_labeling(lt: &LabeledTree, family: FamilyId) -> Result<Vec<Violation>, FamilyError> {
    for &s in lt.statuses() {
        if !family.alphabet().contains(&s) {
            return Err(FamilyError::AlphabetMismatch { family, found: s });
        }
    }
    match family {
        FamilyId::U => Ok(validate_u(lt)),
        FamilyId::T => validate_extremal(lt, family),
        FamilyId::T1 => validate_extremal(lt, family),
    }
}

fn validate_u(lt: &LabeledTree) -> Vec<Violation> {
    use Status::*;
    let g = lt.graph();
    let mut violations = Vec::new();
    let mut violate = |clause: &'static str, details: String| {
        violations.push(Violation { clause, details });
    };
    let profile = g.structural_profile();
    for &v in &profile.supports {
        if lt.status(v) != A {
            violate("a", format!("support vertex {v} has status {}", lt.status(v)));
        }
        for u in g.neighbors(v) {
            if lt.status(u) != C {
                violate("a", format!("support vertex {v} has non-C neighbor {u}"));
            }
        }
    }
    for &v in &profile.leaves {
        if lt.status(v) != C {
            violate("b", format!("leaf {v} has status {}", lt.status(v)));
        }
    }
    for v in g.vertices() {
        let a_nbrs = g.neighbors(v).filter(|&u| lt.status(u) == A).count();
        let b_nbrs = g.neighbors(v).filter(|&u| lt.status(u) == B).count();
        let c_nbrs = g.neighbors(v).filter(|&u| lt.status(u) == C).count();
        match lt.status(v) {
            C => {
                let is_leaf = g.degree(v) == 1;
                if !is_leaf && !(a_nbrs == 1 && b_nbrs == g.degree(v) - 1) {
                    violate(
                        "c",
                        format!("non-leaf C vertex {v} lacks the one-A-rest-B neighborhood"),
                    );
                }
            }
            B if !(c_nbrs == 1 && b_nbrs == g.degree(v) - 1) => {
                violate(
                    "d",
                    format!("B vertex {v} lacks the one-C-rest-B neighborhood"),
                );
            }
            _ => {}
        }
    }
    for e in g.edges() {
        let (su, sv) = (lt.status(e.u()), lt.status(e.v()));
        if su == A && sv == A {
            violate("e", format!("adjacent A vertices {e}"));
        }
        if su == C && sv == C {
            violate("e", format!("adjacent C vertices {e}"));
        }
    }
    violations
}

/// Shared structure of the two extremal-ratio families. They differ in which
/// statuses pad the attached paths and which parameters their distinguished
/// sets optimize:
///
/// * `T`:  `S_A ∪ S_B` is the unique minimum dominating set and
///   `S_A ∪ S_B ∪ S_D` is a minimum semitotal dominating set; `D` sits
///   between `A` and `E`, `E` between `B` and `D`.
/// * `T1`: `S_A ∪ S_B` is the unique minimum semitotal dominating set and
///   `S_A ∪ S_B ∪ S_D` is a minimum total dominating set; `D` sits between
///   `A` and `B`, and `E` never occurs.
fn validate_extremal(lt: &LabeledTree, family: FamilyId) -> Result<Vec<Violation>, FamilyError> {
    use Status::*;
    let g = lt.graph();
    let mut violations = Vec::new();
    let mut violate = |clause: &'static str, details: String| {
        violations.push(Violation { clause, details });
    };
    let profile = g.structural_profile();
    let leaf_mask: u128 = profile.leaves.iter().fold(0, |m, &v| m | bit(v));

    for v in g.vertices() {
        let is_support = profile.supports.contains(&v);
        let is_ab = matches!(lt.status(v), A | B);
        if is_ab != is_support {
            violate("a", format!("vertex {v}: status {} vs support {is_support}", lt.status(v)));
        }
        let is_leaf = g.degree(v) == 1;
        if (lt.status(v) == C) != is_leaf {
            violate("b", format!("vertex {v}: status {} vs leaf {is_leaf}", lt.status(v)));
        }
    }

    let count = |s: Status| lt.statuses().iter().filter(|&&x| x == s).count();
    let (na, nb, nd, ne) = (count(A), count(B), count(D), count(E));
    match family {
        FamilyId::T => {
            if na != 1 || nb != nd || nd != ne {
                violate("c", format!("|S_A|={na}, |S_B|={nb}, |S_D|={nd}, |S_E|={ne}"));
            }
        }
        _ => {
            if na != 1 || nb != nd || ne != 0 {
                violate("c", format!("|S_A|={na}, |S_B|={nb}, |S_D|={nd}, |S_E|={ne}"));
            }
        }
    }

    let ab: Vec<usize> = g.vertices().filter(|&v| matches!(lt.status(v), A | B)).collect();
    let abd: Vec<usize> = g
        .vertices()
        .filter(|&v| matches!(lt.status(v), A | B | D))
        .collect();
    let (unique_variant, cover_variant) = match family {
        FamilyId::T => (DominationVariant::Plain, DominationVariant::Semitotal),
        _ => (DominationVariant::Semitotal, DominationVariant::Total),
    };
    match unique_minimum_sets(g, unique_variant) {
        Ok((value, sets)) => {
            let ab_mask: u128 = ab.iter().fold(0, |m, &v| m | bit(v));
            if ab.len() != value || sets != vec![ab_mask] {
                violate(
                    "d",
                    format!(
                        "A∪B is not the unique minimum {} set ({} optimal sets of size {value})",
                        unique_variant.as_str(),
                        sets.len()
                    ),
                );
            }
        }
        Err(e) => violate("d", format!("could not enumerate optima: {e}")),
    }
    let abd_ok = solver::min_value(g, cover_variant).map(|value| {
        value == abd.len()
            && solver::check_set(g, &abd, cover_variant).unwrap_or(false)
    });
    match abd_ok {
        Ok(true) => {}
        Ok(false) => violate(
            "e",
            format!("A∪B∪D is not a minimum {} set", cover_variant.as_str()),
        ),
        Err(e) => violate("e", format!("could not solve: {e}")),
    }

    for v in g.vertices() {
        let expected_nonleaf = match lt.status(v) {
            A => Some(D),
            B => Some(match family {
                FamilyId::T => E,
                _ => D,
            }),
            _ => None,
        };
        if let Some(want) = expected_nonleaf {
            for u in Bits(g.neighbors_mask(v) & !leaf_mask) {
                if lt.status(u) != want {
                    violate(
                        "f",
                        format!("{} vertex {v} has non-leaf neighbor {u} labeled {}", lt.status(v), lt.status(u)),
                    );
                }
            }
        }
    }

    for v in g.vertices() {
        let wanted: Option<[Status; 2]> = match (family, lt.status(v)) {
            (FamilyId::T, D) => Some([A, E]),
            (FamilyId::T, E) => Some([B, D]),
            (FamilyId::T1, D) => Some([A, B]),
            _ => None,
        };
        if let Some(pair) = wanted {
            let mut nbr: Vec<Status> = g.neighbors(v).map(|u| lt.status(u)).collect();
            nbr.sort();
            let mut want = pair.to_vec();
            want.sort();
            if g.degree(v) != 2 || nbr != want {
                violate(
                    "g",
                    format!(
                        "{} vertex {v} must have degree two with neighbors {}{}",
                        lt.status(v),
                        pair[0],
                        pair[1]
                    ),
                );
            }
        }
    }
    Ok(violations)
}

/// Value and all optimal sets (as masks) for a variant, by exhaustive
/// enumeration of subsets at the optimal size. Intended for small trees.
fn unique_minimum_sets(
    g: &Graph,
    variant: DominationVariant,
) -> Result<(usize, Vec<u128>), SolveError> {
    let value = solver::min_value(g, variant)?;
    let n = g.n();
    let mut optima = Vec::new();
    // Gosper's hack over n-bit masks of weight `value`
    let mut mask: u128 = (1u128 << value) - 1;
    let limit: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    while mask <= limit {
        let set: Vec<usize> = Bits(mask).collect();
        if solver::check_set(g, &set, variant)? {
            optima.push(mask);
            if optima.len() > 2 {
                break; // uniqueness already settled
            }
        }
        // next mask of equal weight
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        if r == 0 {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok((value, optima))
}

/// Result of replaying a derivation into an almost semitotal dominating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostSetConstruction {
    /// Sorted vertex ids of the constructed set.
    pub set: Vec<usize>,
    /// True when the step-by-step transcription failed its postcondition and
    /// the guaranteed search-based set was returned instead.
    pub fallback: bool,
}

/// Replays a `U`-family derivation into an almost semitotal dominating set of
/// `lt` relative to `x`, of size one below the semitotal domination number
/// and containing every `A` vertex.
///
/// The derivation is walked twice conceptually: steps up to the one that
/// introduced `x` contribute their `A` vertex (and, for the five-vertex
/// attachment, the vertex three steps out), with a one-vertex buffer flushed
/// by the next four-vertex attachment; steps after that contribute their `A`
/// vertex and the vertex two steps out. Earlier introduction points are
/// preferred, searching all label-preserving placements of `x` in the
/// derivation's replay.
pub fn lemma28_construct(
    lt: &LabeledTree,
    derivation: &Derivation,
    x: usize,
) -> Result<AlmostSetConstruction, FamilyError> {
    if x >= lt.order() {
        return Err(FamilyError::VertexOutOfRange {
            vertex: x,
            order: lt.order(),
        });
    }
    if lt.status(x) != Status::A {
        return Err(FamilyError::NotStatusA(x));
    }
    let (replayed, intro, traces) = derivation.replay_traced()?;
    if replayed.labeled_code() != lt.labeled_code() {
        return Err(FamilyError::DerivationMismatch);
    }

    let placement = best_placement(lt, x, &replayed, &intro);
    let constructed = placement.and_then(|(image, step)| {
        let mut marked_lt = lt.status_bytes();
        marked_lt[x] = marked_lt[x].to_ascii_lowercase();
        let mut marked_replay = replayed.status_bytes();
        marked_replay[image] = marked_replay[image].to_ascii_lowercase();
        let map = canon::isomorphism(
            &lt.graph,
            Some(&marked_lt),
            &replayed.graph,
            Some(&marked_replay),
        )
        .ok()??;
        let mut inverse = vec![usize::MAX; replayed.order()];
        for (from, &to) in map.iter().enumerate() {
            inverse[to] = from;
        }
        let h = run_steps(&traces, step);
        let mut set: Vec<usize> = Bits(h).map(|v| inverse[v]).collect();
        set.sort_unstable();
        Some(set)
    });

    let target = solver::min_value(lt.graph(), DominationVariant::Semitotal)? - 1;
    let required: u128 = lt.vertices_with(Status::A).fold(0, |m, v| m | bit(v));
    if let Some(set) = constructed {
        let mask: u128 = set.iter().fold(0, |m, &v| m | bit(v));
        let valid = set.len() == target
            && mask & required == required
            && mask & bit(x) != 0
            && solver::is_almost_semitotal(lt.graph(), &set, x)?;
        if valid {
            return Ok(AlmostSetConstruction {
                set,
                fallback: false,
            });
        }
    }
    let set = solver::min_almost_superset(lt.graph(), x, required)?;
    Ok(AlmostSetConstruction {
        set,
        fallback: true,
    })
}

/// The image of `x` in the replayed tree with the earliest introduction step,
/// over all label-preserving isomorphisms.
fn best_placement(
    lt: &LabeledTree,
    x: usize,
    replayed: &LabeledTree,
    intro: &[usize],
) -> Option<(usize, usize)> {
    let mut marked = lt.status_bytes();
    marked[x] = marked[x].to_ascii_lowercase();
    let (target_code, _) =
        canon::canonical_form(&lt.graph, Some(&marked)).expect("labeled trees hold trees");
    let mut best: Option<(usize, usize)> = None;
    for cand in replayed.vertices_with(Status::A) {
        if replayed.marked_code(cand) == target_code {
            let step = intro[cand];
            if best.is_none_or(|(_, s)| step < s) {
                best = Some((cand, step));
            }
        }
    }
    best
}

/// The literal step walk. `pivot` is the step that introduced the exempt
/// vertex (0 when it is the seed's A vertex).
fn run_steps(traces: &[StepTrace], pivot: usize) -> u128 {
    let seed_a = 1usize; // the A vertex of the U seed P_3 labeled C,A,C
    let mut h = bit(seed_a);
    let mut buffered: Option<usize> = None;
    for (idx, trace) in traces.iter().enumerate() {
        let j = idx + 1;
        if j <= pivot {
            match trace.op {
                OpId::P1 => {}
                OpId::P2 => {
                    if let Some(p) = buffered.take() {
                        h |= bit(p);
                    }
                    h |= bit(trace.base + 2);
                    buffered = Some(trace.base);
                }
                OpId::P3 => {
                    h |= bit(trace.base + 3) | bit(trace.base);
                    buffered = Some(trace.base + 1);
                }
                _ => unreachable!("U derivations contain only P operations"),
            }
        } else {
            match trace.op {
                OpId::P1 => {}
                OpId::P2 => h |= bit(trace.base + 2) | bit(trace.base),
                OpId::P3 => h |= bit(trace.base + 3) | bit(trace.base + 1),
                _ => unreachable!("U derivations contain only P operations"),
            }
        }
    }
    h
}

impl CatalogMember {
    /// Runs the construction with the stored derivation whose replay
    /// introduces (an isomorphic image of) `x` earliest.
    pub fn construct_almost_set(&self, x: usize) -> Result<AlmostSetConstruction, FamilyError> {
        let mut best: Option<(usize, &Derivation)> = None;
        for d in &self.derivations {
            let Ok((replayed, intro, _)) = d.replay_traced() else {
                continue;
            };
            if replayed.labeled_code() != self.labeled.labeled_code() {
                continue;
            }
            if let Some((_, step)) = best_placement(&self.labeled, x, &replayed, &intro) {
                if best.is_none_or(|(s, _)| step < s) {
                    best = Some((step, d));
                }
            }
        }
        let (_, derivation) = best.ok_or(FamilyError::DerivationMismatch)?;
        lemma28_construct(&self.labeled, derivation, x)
    }
}
