use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{spanning_tree, GraphOfGroups};

/// Generator index with an integer exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: BigInt,
}

/// `lhs = rhs`; an empty side is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub lhs: Vec<Syllable>,
    pub rhs: Vec<Syllable>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// `v.a1 .. v.an` for every vertex, then `e.t` for every edge.
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    generators: &'a [String],
    relators: Vec<String>,
}

impl Presentation {
    fn spell(&self, word: &[Syllable]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|s| {
                let name = &self.generators[s.generator];
                if s.exponent.is_one() {
                    name.clone()
                } else {
                    format!("{name}^{}", s.exponent)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| format!("{} = {}", self.spell(&r.lhs), self.spell(&r.rhs)))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            generators: &self.generators,
            relators: self.relator_strings(),
        })
        .expect("plain strings serialize")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.join(" "))?;
        for r in self.relator_strings() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn syl(generator: usize, exponent: impl Into<BigInt>) -> Syllable {
    Syllable {
        generator,
        exponent: exponent.into(),
    }
}

/// Vertex-group word for the vector `v`, skipping zero exponents.
fn vertex_word(first_generator: usize, v: &[BigInt]) -> Vec<Syllable> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| syl(first_generator + i, x.clone()))
        .collect()
}

/// Presentation of the fundamental group. Requires a validated graph.
pub fn presentation(g: &GraphOfGroups) -> Presentation {
    let n = g.rank();
    let mut generators = Vec::new();
    for v in g.vertices() {
        generators.extend((1..=n).map(|i| format!("{v}.a{i}")));
    }
    let stable_base = generators.len();
    generators.extend(g.edges().iter().map(|e| format!("{}.t", e.name)));

    let mut relators = Vec::new();
    for vi in 0..g.vertices().len() {
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (vi * n + i, vi * n + j);
                relators.push(Relator {
                    lhs: vec![syl(a, 1), syl(b, 1), syl(a, -1), syl(b, -1)],
                    rhs: vec![],
                });
            }
        }
    }
    for (ei, e) in g.edges().iter().enumerate() {
        let t = stable_base + ei;
        for j in 0..n {
            let mut lhs = vec![syl(t, 1)];
            lhs.extend(vertex_word(e.from * n, &e.alpha.col(j)));
            lhs.push(syl(t, -1));
            relators.push(Relator {
                lhs,
                rhs: vertex_word(e.to * n, &e.omega.col(j)),
            });
        }
    }
    let tree = spanning_tree(g);
    for &ei in &tree.tree_edges {
        relators.push(Relator {
            lhs: vec![syl(stable_base + ei, 1)],
            rhs: vec![],
        });
    }
    Presentation { generators, relators }
}
