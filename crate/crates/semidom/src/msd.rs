//! The semitotal domination multisubdivision number: the least `k` such that
//! subdividing some single edge `k` times strictly increases the semitotal
//! domination number. Trees are classified 1/2/3 by that value.

use crate::graph::{Edge, Graph, GraphError};
use crate::par;
use crate::solver::{self, DominationVariant, SolveError};
use serde::Serialize;
use thiserror::Error;

/// Search ceiling large enough for every known finite case: order-two input
/// needs four subdivisions, everything connected of order three and up needs
/// at most three.
pub const DEFAULT_K_MAX: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MsdError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("graph order {got} is below the required minimum {required}")]
    OrderTooSmall { required: usize, got: usize },
    #[error("input graph is not a tree")]
    NotATree,
    #[error("no single-edge subdivision of up to {k_max} vertices increased the value {base_value}")]
    NoIncrease {
        k_max: usize,
        base_value: usize,
        table: Vec<MsdTableRow>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Per-`k` minimum of the semitotal domination number over all single-edge
/// subdivisions tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MsdTableRow {
    pub k: usize,
    pub min_value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MsdResult {
    /// The multisubdivision number.
    pub k: usize,
    /// Lexicographically least edge whose `k`-fold subdivision increases the
    /// parameter.
    pub witness_edge: Edge,
    /// Semitotal domination number of the unmodified graph.
    pub base_value: usize,
    pub table: Vec<MsdTableRow>,
}

/// Computes the multisubdivision number of a connected graph of order at
/// least two, scanning `k = 1..=k_max`.
pub fn msd_semitotal(g: &Graph, k_max: usize) -> Result<MsdResult, MsdError> {
    if g.n() < 2 {
        return Err(MsdError::OrderTooSmall {
            required: 2,
            got: g.n(),
        });
    }
    if !g.is_connected() {
        return Err(MsdError::Disconnected);
    }
    let base_value = solver::min_value(g, DominationVariant::Semitotal)?;
    let edges = g.edges();
    let mut table = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let values = par::map_slice(&edges, |e| -> Result<usize, MsdError> {
            let subdivided = g.subdivide_edge(*e, k)?;
            Ok(solver::min_value(&subdivided, DominationVariant::Semitotal)?)
        });
        let mut row_min = usize::MAX;
        let mut witness = None;
        for (e, value) in edges.iter().zip(values) {
            let value = value?;
            row_min = row_min.min(value);
            if value > base_value && witness.is_none() {
                witness = Some(*e);
            }
        }
        table.push(MsdTableRow {
            k,
            min_value: row_min,
        });
        if let Some(witness_edge) = witness {
            return Ok(MsdResult {
                k,
                witness_edge,
                base_value,
                table,
            });
        }
    }
    Err(MsdError::NoIncrease {
        k_max,
        base_value,
        table,
    })
}

/// Trees split into three classes by multisubdivision number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeClass {
    Class1,
    Class2,
    Class3,
}

impl TreeClass {
    pub fn msd_value(self) -> usize {
        match self {
            TreeClass::Class1 => 1,
            TreeClass::Class2 => 2,
            TreeClass::Class3 => 3,
        }
    }
}

impl std::fmt::Display for TreeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Class{}", self.msd_value())
    }
}

/// Classifies a tree of order at least three. Three subdivisions always
/// suffice for such inputs.
pub fn classify_tree(t: &Graph) -> Result<TreeClass, MsdError> {
    if !t.is_tree() {
        return Err(MsdError::NotATree);
    }
    if t.n() < 3 {
        return Err(MsdError::OrderTooSmall {
            required: 3,
            got: t.n(),
        });
    }
    let result = msd_semitotal(t, 3)?;
    Ok(match result.k {
        1 => TreeClass::Class1,
        2 => TreeClass::Class2,
        _ => TreeClass::Class3,
    })
}
