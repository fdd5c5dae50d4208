use std::collections::VecDeque;

use super::GraphOfGroups;
use crate::lattice::{rat_inverse, RatMatrix};

/// A breadth-first spanning tree and the path matrices `P_v` that express
/// vertex-group coordinates of `G_v` in base-vertex coordinates.
///
/// Crossing a tree edge `e` from origin to terminus multiplies by
/// `alpha_e * omega_e^-1`; crossing it backwards by `omega_e * alpha_e^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningData {
    pub base: usize,
    /// Edge indices, in the order they were added.
    pub tree_edges: Vec<usize>,
    pub path: Vec<RatMatrix>,
}

impl SpanningData {
    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edges.contains(&e)
    }
}

/// Deterministic: the base vertex is the lexicographically least name and
/// edges are scanned in declaration order. Requires a validated graph.
pub fn spanning_tree(g: &GraphOfGroups) -> SpanningData {
    let n = g.rank();
    let base = (0..g.vertices().len())
        .min_by(|&a, &b| g.vertices()[a].cmp(&g.vertices()[b]))
        .expect("validated graph is nonempty");
    let mut path: Vec<Option<RatMatrix>> = vec![None; g.vertices().len()];
    path[base] = Some(RatMatrix::identity(n));
    let mut tree_edges = Vec::new();
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for (idx, e) in g.edges().iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            let (w, step) = if e.from == u {
                (e.to, (&e.alpha, &e.omega))
            } else if e.to == u {
                (e.from, (&e.omega, &e.alpha))
            } else {
                continue;
            };
            if path[w].is_some() {
                continue;
            }
            let (near, far) = step;
            let far_inv = rat_inverse(far).expect("validated inclusions are nonsingular");
            let change = &near.to_rat() * &far_inv;
            let pu = path[u].as_ref().expect("visited");
            path[w] = Some(pu * &change);
            tree_edges.push(idx);
            queue.push_back(w);
        }
    }
    SpanningData {
        base,
        tree_edges,
        path: path
            .into_iter()
            .map(|p| p.expect("validated graph is connected"))
            .collect(),
    }
}
