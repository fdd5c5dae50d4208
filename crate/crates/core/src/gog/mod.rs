//! Finite graphs of groups whose vertex and edge groups are all Z^n.
//!
//! Edge `e` from `u` to `w` carries inclusions `alpha_e: Z^n -> G_u` and
//! `omega_e: Z^n -> G_w`. Its stable letter satisfies
//! `e.t * alpha_e(b) * e.t^-1 = omega_e(b)`, so the ascending HNN extension
//! `<A, t | t a t^-1 = phi(a)>` is a single loop with `alpha = I`,
//! `omega = phi`.

mod builtins;
mod format;
mod presentation;
mod spanning;

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use builtins::{baumslag_solitar, identity_loop, leary_minasyan, BUILTIN_NAMES};
pub use presentation::{presentation, Presentation, Relator, Syllable};
pub use spanning::{spanning_tree, SpanningData};

use crate::error::{Error, Result};
use crate::lattice::{rat_inverse, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub alpha: IntMatrix,
    pub omega: IntMatrix,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Which inclusion of an edge an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Alpha,
    Omega,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Alpha => "alpha",
            Side::Omega => "omega",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected: vertex `{vertex}` is unreachable")]
    Disconnected { vertex: String },
    #[error("edge `{edge}`: {side} is {rows}x{cols}, expected {rank}x{rank}")]
    RankMismatch {
        edge: String,
        side: Side,
        rows: usize,
        cols: usize,
        rank: usize,
    },
    #[error("edge `{edge}`: {side} is singular")]
    SingularInclusion { edge: String, side: Side },
}

impl GraphOfGroups {
    /// Unchecked constructor; run [`GraphOfGroups::validate`] before use.
    pub fn new(rank: usize, vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        GraphOfGroups { rank, vertices, edges }
    }

    /// Single vertex `v0` with one loop `t` of shape `t a t^-1 = phi(a)`.
    pub fn ascending_hnn(phi: IntMatrix) -> Self {
        let n = phi.rows();
        GraphOfGroups::new(
            n,
            vec!["v0".into()],
            vec![Edge {
                name: "t".into(),
                from: 0,
                to: 0,
                alpha: IntMatrix::identity(n),
                omega: phi,
            }],
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Checks connectivity and the shape and injectivity of every inclusion.
    /// Reports the first offender of each category.
    pub fn validate(&self) -> std::result::Result<(), Vec<GraphError>> {
        let mut errors = Vec::new();
        if self.vertices.is_empty() {
            return Err(vec![GraphError::Empty]);
        }
        let n = self.rank;
        let sides = |e: &Edge| [(Side::Alpha, e.alpha.clone()), (Side::Omega, e.omega.clone())];
        let mismatch = self.edges.iter().find_map(|e| {
            sides(e).into_iter().find_map(|(side, m)| {
                (m.rows() != n || m.cols() != n).then(|| GraphError::RankMismatch {
                    edge: e.name.clone(),
                    side,
                    rows: m.rows(),
                    cols: m.cols(),
                    rank: n,
                })
            })
        });
        errors.extend(mismatch);
        let singular = self.edges.iter().find_map(|e| {
            sides(e).into_iter().find_map(|(side, m)| {
                (m.rows() == n && m.cols() == n && m.det().is_zero()).then(|| GraphError::SingularInclusion {
                    edge: e.name.clone(),
                    side,
                })
            })
        });
        errors.extend(singular);
        let reached = self.reachable_from(0);
        if let Some(v) = reached.iter().position(|r| !r) {
            errors.push(GraphError::Disconnected {
                vertex: self.vertices[v].clone(),
            });
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().map_err(Error::InvalidGraph)?;
        Ok(self)
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for e in &self.edges {
                for (a, b) in [(e.from, e.to), (e.to, e.from)] {
                    if a == u && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        seen
    }

    /// One vertex and one loop with a unimodular inclusion on one side and
    /// `|det| > 1` on the other.
    pub fn is_strictly_ascending_loop(&self) -> bool {
        if self.vertices.len() != 1 || self.edges.len() != 1 {
            return false;
        }
        let e = &self.edges[0];
        let (da, dw) = (e.alpha.det().abs(), e.omega.det().abs());
        (da.is_one() && dw > One::one()) || (dw.is_one() && da > One::one())
    }

    /// `phi = omega * alpha^-1` when the graph is one vertex with one loop
    /// whose alpha side is unimodular.
    pub fn as_ascending_hnn(&self) -> Option<IntMatrix> {
        if self.vertices.len() != 1 || self.edges.len() != 1 {
            return None;
        }
        let e = &self.edges[0];
        let alpha_inv = rat_inverse(&e.alpha).ok()?.to_integer()?;
        Some(&e.omega * &alpha_inv)
    }

    /// Contracts non-loop edges whose alpha or omega side is unimodular.
    ///
    /// Such an edge group is the whole vertex group on that side, so the
    /// amalgam absorbs that vertex into its neighbour. The fundamental group
    /// is unchanged.
    pub fn collapse_unimodular_edges(&self) -> GraphOfGroups {
        let mut g = self.clone();
        while let Some(pos) = g
            .edges
            .iter()
            .position(|e| !e.is_loop() && (e.alpha.det().abs().is_one() || e.omega.det().abs().is_one()))
        {
            let e = g.edges.remove(pos);
            // absorb `gone` into `kept`; `to_kept` maps G_gone coordinates into G_kept
            let (gone, kept, to_kept) = if e.alpha.det().abs().is_one() {
                let inv = rat_inverse(&e.alpha).ok().and_then(|m| m.to_integer());
                (e.from, e.to, &e.omega * &inv.expect("unimodular"))
            } else {
                let inv = rat_inverse(&e.omega).ok().and_then(|m| m.to_integer());
                (e.to, e.from, &e.alpha * &inv.expect("unimodular"))
            };
            for other in g.edges.iter_mut() {
                if other.from == gone {
                    other.from = kept;
                    other.alpha = &to_kept * &other.alpha;
                }
                if other.to == gone {
                    other.to = kept;
                    other.omega = &to_kept * &other.omega;
                }
            }
            g.vertices.remove(gone);
            for other in g.edges.iter_mut() {
                if other.from > gone {
                    other.from -= 1;
                }
                if other.to > gone {
                    other.to -= 1;
                }
            }
        }
        g
    }
}
