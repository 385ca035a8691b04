//! Canonical codes for trees.
//!
//! The code of a tree is its rooted AHU encoding, rooted at the tree center;
//! a bicentral tree takes the lexicographically smaller of its two rooted
//! codes. Two trees get equal codes exactly when they are isomorphic. The
//! same machinery optionally carries one symbol per vertex, which extends the
//! guarantee to symbol-preserving isomorphism — that variant backs the
//! labeled-tree catalogs.

use crate::graph::{bit, Bits, Graph, GraphError};

/// Isomorphism-class identifier for a tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical code of an unlabeled tree. Errors when the input is not a tree.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, GraphError> {
    let (code, _) = canonical_form(g, None)?;
    Ok(CanonicalCode(
        String::from_utf8(code).expect("code bytes are ASCII"),
    ))
}

/// Tree centers: the one or two vertices left after repeatedly stripping
/// leaves. Assumes a tree.
fn centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = g.full_mask();
    let mut remaining = n;
    let mut frontier: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &frontier {
            alive &= !bit(v);
            remaining -= 1;
            for u in Bits(g.neighbors_mask(v) & alive) {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    Bits(alive).collect()
}

/// AHU code of the tree rooted at `root`, plus the vertex order of the
/// canonical pre-order traversal (children visited in sorted code order).
fn rooted_form(g: &Graph, root: usize, symbols: Option<&[u8]>) -> (Vec<u8>, Vec<usize>) {
    let n = g.n();
    // BFS orientation
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = bit(root);
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for u in Bits(g.neighbors_mask(v) & !seen) {
            seen |= bit(u);
            parent[u] = v;
            order.push(u);
        }
    }
    debug_assert_eq!(order.len(), n, "rooted_form expects a connected tree");

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order.iter().skip(1) {
        children[parent[v]].push(v);
    }

    // codes bottom-up; children sorted by code
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        children[v].sort_by(|&a, &b| codes[a].cmp(&codes[b]).then(a.cmp(&b)));
        let mut code = Vec::with_capacity(2 + children[v].iter().map(|&c| codes[c].len()).sum::<usize>());
        code.push(b'(');
        if let Some(sym) = symbols {
            code.push(sym[v]);
        }
        for &c in &children[v] {
            code.extend_from_slice(&codes[c]);
        }
        code.push(b')');
        codes[v] = code;
    }

    // canonical traversal order
    let mut traversal = Vec::with_capacity(n);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        traversal.push(v);
        for &c in children[v].iter().rev() {
            stack.push(c);
        }
    }
    (std::mem::take(&mut codes[root]), traversal)
}

/// Canonical code and matching vertex order for a tree, optionally with one
/// symbol byte per vertex. Vertices at the same traversal position in two
/// trees with equal codes correspond under a (symbol-preserving) isomorphism.
pub(crate) fn canonical_form(
    g: &Graph,
    symbols: Option<&[u8]>,
) -> Result<(Vec<u8>, Vec<usize>), GraphError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    for c in centers(g) {
        let form = rooted_form(g, c, symbols);
        if best.as_ref().is_none_or(|b| form.0 < b.0) {
            best = Some(form);
        }
    }
    Ok(best.expect("a tree has at least one center"))
}

/// Maps vertices of `a` onto vertices of `b` by matching canonical positions.
/// Returns `None` when the (symbol-extended) codes differ. The result sends
/// each id of `a` to an id of `b` and preserves adjacency and symbols.
pub(crate) fn isomorphism(
    a: &Graph,
    a_symbols: Option<&[u8]>,
    b: &Graph,
    b_symbols: Option<&[u8]>,
) -> Result<Option<Vec<usize>>, GraphError> {
    let (code_a, ord_a) = canonical_form(a, a_symbols)?;
    let (code_b, ord_b) = canonical_form(b, b_symbols)?;
    if code_a != code_b {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; a.n()];
    for (pa, pb) in ord_a.into_iter().zip(ord_b) {
        map[pa] = pb;
    }
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn relabeling_invariance() {
        let p4 = named::path(4).unwrap();
        let relabeled = p4.relabel(&[2, 0, 3, 1]);
        assert_eq!(
            canonical_code(&p4).unwrap(),
            canonical_code(&relabeled).unwrap()
        );
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let p4 = named::path(4).unwrap();
        let star = named::star(3).unwrap();
        assert_ne!(canonical_code(&p4).unwrap(), canonical_code(&star).unwrap());
    }

    #[test]
    fn rejects_non_trees() {
        let c4 = named::cycle(4).unwrap();
        assert_eq!(canonical_code(&c4).unwrap_err(), GraphError::NotATree);
    }

    #[test]
    fn isomorphism_maps_adjacency() {
        let g = named::path(7).unwrap();
        let perm = [3usize, 5, 0, 6, 1, 4, 2];
        let h = g.relabel(&perm);
        let map = isomorphism(&g, None, &h, None).unwrap().unwrap();
        for e in g.edges() {
            assert!(h.has_edge(map[e.u()], map[e.v()]));
        }
    }

    #[test]
    fn symbols_refine_codes() {
        let p3 = named::path(3).unwrap();
        let (code_a, _) = canonical_form(&p3, Some(b"CAC")).unwrap();
        let (code_b, _) = canonical_form(&p3, Some(b"ACC")).unwrap();
        assert_ne!(code_a, code_b);

        // a labeling and its mirror image code identically
        let p4 = named::path(4).unwrap();
        let (fwd, _) = canonical_form(&p4, Some(b"ABCA")).unwrap();
        let (rev, _) = canonical_form(&p4, Some(b"ACBA")).unwrap();
        assert_eq!(fwd, rev);
    }

    #[test]
    fn single_vertex_and_edge() {
        let k1 = named::complete(1).unwrap();
        let k2 = named::complete(2).unwrap();
        assert_ne!(canonical_code(&k1).unwrap(), canonical_code(&k2).unwrap());
    }
}
