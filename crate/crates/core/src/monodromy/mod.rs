//! Modular homomorphism, monodromy classification and property verdicts.
//!
//! The modular matrix of a stable letter is the linear map its conjugation
//! induces on the base vertex group tensored with Q. Vertex-group elements
//! act trivially, so the monodromy group is generated by the matrices of
//! the non-tree stable letters.

pub mod cyclotomic;
mod verdict;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

pub use verdict::{
    decide_all, decide_grothendieck_rigid, decide_lerf, decide_residually_finite, decide_vrc, Answer, Property,
    PropertyVerdict,
};

use crate::error::{Error, Result};
use crate::gog::{spanning_tree, GraphOfGroups, SpanningData};
use crate::lattice::{rat_inverse, IntMatrix, IntVector, Lattice, RatMatrix};

/// `10 * 2^n * n!`.
pub fn default_cap(n: usize) -> u64 {
    let factorial: u64 = (1..=n as u64).product();
    10 * (1u64 << n) * factorial
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyGenerator {
    /// Name of the non-tree edge whose stable letter this is.
    pub edge: String,
    pub matrix: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Trivial,
    Finite(u64),
    Infinite { reason: String },
    Inconclusive { cap: u64 },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Trivial => write!(f, "trivial"),
            Classification::Finite(k) => write!(f, "finite (order {k})"),
            Classification::Infinite { reason } => write!(f, "infinite ({reason})"),
            Classification::Inconclusive { cap } => {
                write!(f, "inconclusive (closure exceeded cap {cap})")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonodromyReport {
    pub generators: Vec<MonodromyGenerator>,
    pub classification: Classification,
    pub spanning: SpanningData,
    /// The full group, sorted, when the classification is `Finite`.
    pub elements: Option<Vec<RatMatrix>>,
}

/// Matrices of the non-tree stable letters in base-vertex coordinates:
/// for `e` from `u` to `w`, `P_w * omega_e * alpha_e^-1 * P_u^-1`.
/// Requires a validated graph.
pub fn monodromy_generators(g: &GraphOfGroups) -> Vec<MonodromyGenerator> {
    generators_with(g, &spanning_tree(g))
}

fn generators_with(g: &GraphOfGroups, span: &SpanningData) -> Vec<MonodromyGenerator> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !span.is_tree_edge(*i))
        .map(|(_, e)| {
            let alpha_inv = rat_inverse(&e.alpha).expect("validated inclusion");
            let pu_inv = span.path[e.from].inverse().expect("path matrices are invertible");
            let local = &e.omega.to_rat() * &alpha_inv;
            MonodromyGenerator {
                edge: e.name.clone(),
                matrix: &(&span.path[e.to] * &local) * &pu_inv,
            }
        })
        .collect()
}

/// Decides trivial / finite / infinite, with breadth-first closure bounded
/// by `cap` elements. Requires a validated graph.
pub fn classify_monodromy(g: &GraphOfGroups, cap: u64) -> MonodromyReport {
    let spanning = spanning_tree(g);
    let generators = generators_with(g, &spanning);
    let matrices: Vec<RatMatrix> = generators
        .iter()
        .map(|m| m.matrix.clone())
        .filter(|m| !m.is_identity())
        .collect();
    let (classification, elements) = classify_matrices(g.rank(), &matrices, cap);
    MonodromyReport {
        generators,
        classification,
        spanning,
        elements,
    }
}

fn classify_matrices(n: usize, matrices: &[RatMatrix], cap: u64) -> (Classification, Option<Vec<RatMatrix>>) {
    if matrices.is_empty() {
        return (Classification::Trivial, None);
    }
    for (i, m) in matrices.iter().enumerate() {
        if let Some(reason) = cyclotomic::infinite_order_reason(m) {
            return (
                Classification::Infinite {
                    reason: format!("generator {}: {reason}", i + 1),
                },
                None,
            );
        }
    }
    let mut seen = BTreeSet::from([RatMatrix::identity(n)]);
    let mut queue = VecDeque::from([RatMatrix::identity(n)]);
    while let Some(x) = queue.pop_front() {
        for m in matrices {
            let y = &x * m;
            if seen.contains(&y) {
                continue;
            }
            // every element of a finite group has finite order
            if let Some(reason) = cyclotomic::infinite_order_reason(&y) {
                return (
                    Classification::Infinite {
                        reason: format!("product of generators {y}: {reason}"),
                    },
                    None,
                );
            }
            seen.insert(y.clone());
            if seen.len() as u64 > cap {
                return (Classification::Inconclusive { cap }, None);
            }
            queue.push_back(y);
        }
    }
    (
        Classification::Finite(seen.len() as u64),
        Some(seen.into_iter().collect()),
    )
}

/// `Z^n ∩ B Q`-lattice: the integer points of the lattice spanned by the
/// columns of the rational matrix `b`.
fn integer_points(b: &RatMatrix) -> Lattice {
    let n = b.rows();
    let (d, scaled) = b.clear_denominators();
    let lattice = Lattice::from_generators(&scaled)
        .intersection(&Lattice::from_generators(&IntMatrix::identity(n).scale(&d)))
        .expect("same ambient rank");
    let gens: Vec<IntVector> = lattice
        .generators()
        .into_iter()
        .map(|v| v.into_iter().map(|x| x / &d).collect())
        .collect();
    Lattice::from_vectors(n, &gens)
}

/// Central `Z^n` witnessing trivial monodromy, in base coordinates: the
/// integer points common to every edge-group image.
pub fn central_witness(g: &GraphOfGroups) -> Result<Lattice> {
    let span = spanning_tree(g);
    let generators = generators_with(g, &span);
    if let Some(m) = generators.iter().find(|m| !m.matrix.is_identity()) {
        return Err(Error::PreconditionViolated(format!(
            "monodromy is nontrivial (stable letter of `{}`)",
            m.edge
        )));
    }
    let n = g.rank();
    let mut witness = Lattice::full(n);
    for e in g.edges() {
        for (vertex, inclusion) in [(e.from, &e.alpha), (e.to, &e.omega)] {
            let image = &span.path[vertex] * &inclusion.to_rat();
            witness = witness.intersection(&integer_points(&image))?;
        }
    }
    if !witness.is_full_rank() {
        return Err(Error::Internal("central witness is not of full rank".into()));
    }
    for m in &generators {
        for v in witness.generators() {
            let vq: Vec<_> = v
                .iter()
                .map(|x| num_rational::BigRational::from_integer(x.clone()))
                .collect();
            if m.matrix.mul_vec(&vq) != vq {
                return Err(Error::Internal("central witness is not fixed".into()));
            }
        }
    }
    Ok(witness)
}

#[derive(Serialize)]
struct GeneratorJson {
    edge: String,
    matrix: serde_json::Value,
}

impl MonodromyReport {
    pub fn to_json(&self) -> serde_json::Value {
        let (kind, order, detail) = match &self.classification {
            Classification::Trivial => ("trivial", None, None),
            Classification::Finite(k) => ("finite", Some(*k), None),
            Classification::Infinite { reason } => ("infinite", None, Some(reason.clone())),
            Classification::Inconclusive { cap } => ("inconclusive", Some(*cap), None),
        };
        let gens: Vec<GeneratorJson> = self
            .generators
            .iter()
            .map(|m| GeneratorJson {
                edge: m.edge.clone(),
                matrix: crate::json::rat_matrix(&m.matrix),
            })
            .collect();
        serde_json::json!({
            "classification": kind,
            "order": if kind == "finite" { order } else { None },
            "cap": if kind == "inconclusive" { order } else { None },
            "reason": detail,
            "generators": gens,
            "base_vertex": self.spanning.base,
            "tree_edges": self.spanning.tree_edges,
        })
    }
}

impl fmt::Display for MonodromyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "classification: {}", self.classification)?;
        if self.generators.is_empty() {
            writeln!(f, "generators: none (every edge lies in the spanning tree)")?;
        }
        for m in &self.generators {
            writeln!(f, "generator {}: {}", m.edge, m.matrix)?;
        }
        Ok(())
    }
}
