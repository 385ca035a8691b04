//! Enumeration of free (unrooted, unlabeled) trees.
//!
//! Trees are produced as level sequences in the constant-amortized-time
//! scheme of Wright, Richmond, Odlyzko and McKay: rooted-tree level sequences
//! are walked in Beyer–Hedetniemi order and invalid free-tree representatives
//! are skipped by jumping directly to the next valid one. Exactly one graph
//! per isomorphism class is yielded, in a deterministic order, so consumers
//! may partition the stream by index.

use crate::graph::Graph;

/// Iterator over all non-isomorphic free trees on `n` vertices.
pub fn enumerate_trees(n: usize) -> FreeTrees {
    let layout = if n >= 2 {
        // path graph rooted at its center
        let mut l: Vec<usize> = (0..n / 2 + 1).collect();
        l.extend(1..n.div_ceil(2));
        Some(l)
    } else {
        None
    };
    FreeTrees {
        n,
        layout,
        single_done: false,
    }
}

pub struct FreeTrees {
    n: usize,
    layout: Option<Vec<usize>>,
    single_done: bool,
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n == 0 {
            return None;
        }
        if self.n == 1 {
            if self.single_done {
                return None;
            }
            self.single_done = true;
            return Some(Graph::from_edges(1, []).expect("K_1"));
        }
        let current = self.layout.take()?;
        let valid = next_valid(current);
        let g = layout_to_graph(&valid);
        self.layout = next_rooted(&valid, None);
        Some(g)
    }
}

/// Splits a level sequence into the root's first subtree (levels shifted down
/// by one) and the remainder of the tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut one_found = false;
    let mut m = layout.len();
    for (i, &lvl) in layout.iter().enumerate() {
        if lvl == 1 {
            if one_found {
                m = i;
                break;
            }
            one_found = true;
        }
    }
    let left = layout[1..m].iter().map(|&x| x - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Beyer–Hedetniemi successor of a rooted-tree level sequence. `p` overrides
/// the pivot (the rightmost entry greater than one when absent). `None` means
/// the sequence was the last one.
fn next_rooted(layout: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = layout.len() - 1;
            while layout[p] == 1 {
                if p == 0 {
                    return None;
                }
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while layout[q] != layout[p] - 1 {
        q -= 1;
    }
    let mut next = layout.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

/// Returns `candidate` when it canonically represents a free tree, otherwise
/// jumps ahead to the next level sequence that does.
fn next_valid(candidate: Vec<usize>) -> Vec<usize> {
    let (left, rest) = split_tree(&candidate);
    let left_height = *left.iter().max().expect("first subtree is nonempty");
    let rest_height = *rest.iter().max().expect("rest contains the root");
    let mut valid = rest_height >= left_height;
    if valid
        && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
    {
        valid = false;
    }
    if valid {
        return candidate;
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p)).expect("pivot is positive");
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let height = *new_left.iter().max().expect("first subtree is nonempty");
        let start = next.len() - (height + 1);
        for (offset, slot) in next[start..].iter_mut().enumerate() {
            *slot = offset + 1;
        }
    }
    next
}

/// Builds the tree a level sequence describes: each vertex attaches to the
/// most recent vertex one level up.
fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &lvl) in layout.iter().enumerate() {
        if !stack.is_empty() {
            while layout[*stack.last().expect("root stays on the stack")] >= lvl {
                stack.pop();
            }
            edges.push((*stack.last().expect("root stays on the stack"), i));
        }
        stack.push(i);
    }
    Graph::from_edges(layout.len(), edges).expect("level sequence describes a valid tree")
}

/// Free-tree counts for orders 1..=14.
#[cfg(test)]
pub(crate) const FREE_TREE_COUNTS: [usize; 14] =
    [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159];
