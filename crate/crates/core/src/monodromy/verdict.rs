use std::fmt;

use serde::Serialize;

use super::{central_witness, classify_monodromy, monodromy_generators, Classification};
use crate::error::Result;
use crate::gog::GraphOfGroups;
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    #[serde(rename = "VRC")]
    Vrc,
    #[serde(rename = "LERF")]
    Lerf,
    ResiduallyFinite,
    GrothendieckRigid,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Vrc => "VRC",
            Property::Lerf => "LERF",
            Property::ResiduallyFinite => "ResiduallyFinite",
            Property::GrothendieckRigid => "GrothendieckRigid",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Answer {
    Yes,
    No,
    Unknown,
    NotApplicable,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
            Answer::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub answer: Answer,
    pub reason: String,
    pub witness: Option<Lattice>,
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.property, self.answer, self.reason)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  central witness: {w}")?;
        }
        Ok(())
    }
}

const VRC_THM: &str = "Thm: VRC iff trivial monodromy";
const LERF_PROP: &str = "Prop: central Z^n acting trivially iff trivial monodromy iff LERF";
const RF_CRITERION: &str = "RF criterion: strictly ascending HNN extension of Z^n or virtually Z^n-by-free";
const GR_THM: &str = "Thm: every residually finite GBS_n group is Grothendieck rigid";

fn verdict(property: Property, answer: Answer, reason: String, witness: Option<Lattice>) -> PropertyVerdict {
    PropertyVerdict {
        property,
        answer,
        reason,
        witness,
    }
}

fn triviality_verdict(g: &GraphOfGroups, property: Property, cite: &str) -> Result<PropertyVerdict> {
    let trivial = monodromy_generators(g).iter().all(|m| m.matrix.is_identity());
    Ok(if trivial {
        verdict(
            property,
            Answer::Yes,
            format!("trivial monodromy ({cite})"),
            Some(central_witness(g)?),
        )
    } else {
        verdict(property, Answer::No, format!("nontrivial monodromy ({cite})"), None)
    })
}

/// Yes exactly when the monodromy is trivial; the witness is the central
/// lattice. Requires a validated graph.
pub fn decide_vrc(g: &GraphOfGroups) -> Result<PropertyVerdict> {
    triviality_verdict(g, Property::Vrc, VRC_THM)
}

/// Same criterion as [`decide_vrc`].
pub fn decide_lerf(g: &GraphOfGroups) -> Result<PropertyVerdict> {
    triviality_verdict(g, Property::Lerf, LERF_PROP)
}

/// Residual finiteness from the strictly-ascending / virtually
/// `Z^n`-by-free dichotomy. The finite-monodromy branch is an imported
/// assumption and says so in its reason.
pub fn decide_residually_finite(g: &GraphOfGroups, cap: u64) -> PropertyVerdict {
    let p = Property::ResiduallyFinite;
    if g.collapse_unimodular_edges().is_strictly_ascending_loop() {
        return verdict(
            p,
            Answer::Yes,
            format!("strictly ascending HNN extension of Z^n ({RF_CRITERION})"),
            None,
        );
    }
    match classify_monodromy(g, cap).classification {
        Classification::Trivial => verdict(
            p,
            Answer::Yes,
            format!("trivial monodromy, so virtually Z^n x F_r ({RF_CRITERION})"),
            None,
        ),
        Classification::Finite(k) => verdict(
            p,
            Answer::Yes,
            format!(
                "finite monodromy of order {k}; imported assumption: finite monodromy \
                 implies virtually Z^n-by-free ({RF_CRITERION})"
            ),
            None,
        ),
        Classification::Infinite { .. } => verdict(
            p,
            Answer::No,
            format!("infinite monodromy and not a strictly ascending HNN extension ({RF_CRITERION})"),
            None,
        ),
        Classification::Inconclusive { cap } => verdict(
            p,
            Answer::Unknown,
            format!("monodromy classification inconclusive at cap {cap}"),
            None,
        ),
    }
}

pub fn decide_grothendieck_rigid(g: &GraphOfGroups, cap: u64) -> PropertyVerdict {
    rigidity_from(&decide_residually_finite(g, cap))
}

fn rigidity_from(rf: &PropertyVerdict) -> PropertyVerdict {
    let p = Property::GrothendieckRigid;
    match rf.answer {
        Answer::Yes => verdict(p, Answer::Yes, format!("residually finite ({GR_THM})"), None),
        Answer::No => verdict(
            p,
            Answer::NotApplicable,
            "not residually finite; Grothendieck rigidity is only defined for residually finite groups".into(),
            None,
        ),
        _ => verdict(p, Answer::Unknown, "residual finiteness undecided".into(), None),
    }
}

/// VRC, LERF, residual finiteness and Grothendieck rigidity, in that order.
pub fn decide_all(g: &GraphOfGroups, cap: u64) -> Result<Vec<PropertyVerdict>> {
    let rf = decide_residually_finite(g, cap);
    let gr = rigidity_from(&rf);
    Ok(vec![decide_vrc(g)?, decide_lerf(g)?, rf, gr])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::{identity_loop, leary_minasyan, Edge};
    use crate::lattice::IntMatrix;
    use crate::monodromy::default_cap;

    fn answers(g: &GraphOfGroups) -> Vec<Answer> {
        decide_all(g, default_cap(g.rank()))
            .unwrap()
            .into_iter()
            .map(|v| v.answer)
            .collect()
    }

    #[test]
    fn verdict_table() {
        use Answer::*;
        let bs12 = GraphOfGroups::ascending_hnn(IntMatrix::from_rows(&[[2]]));
        assert_eq!(answers(&bs12), vec![No, No, Yes, Yes]);
        assert_eq!(answers(&identity_loop(2)), vec![Yes, Yes, Yes, Yes]);
        assert_eq!(answers(&leary_minasyan()), vec![No, No, No, NotApplicable]);
        let rot = GraphOfGroups::ascending_hnn(IntMatrix::from_rows(&[[0, -1], [1, 0]]));
        assert_eq!(answers(&rot), vec![No, No, Yes, Yes]);
    }

    #[test]
    fn json_shape() {
        let v = decide_vrc(&leary_minasyan()).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"property":"VRC","answer":"no","reason":"nontrivial monodromy (Thm: VRC iff trivial monodromy)","witness":null}"#
        );
        let rf = decide_residually_finite(&leary_minasyan(), 80);
        assert_eq!(serde_json::to_value(rf).unwrap()["property"], "ResiduallyFinite");
        let gr = decide_grothendieck_rigid(&leary_minasyan(), 80);
        assert_eq!(serde_json::to_value(gr).unwrap()["answer"], "not-applicable");
    }

    #[test]
    fn yes_carries_witness() {
        let v = decide_vrc(&identity_loop(3)).unwrap();
        assert_eq!(v.witness, Some(Lattice::full(3)));
        assert!(v.reason.contains("VRC iff trivial monodromy"));
    }

    #[test]
    fn strictly_ascending_after_collapse() {
        let g = GraphOfGroups::new(
            1,
            vec!["a".into(), "b".into()],
            vec![
                Edge {
                    name: "e".into(),
                    from: 0,
                    to: 1,
                    alpha: IntMatrix::identity(1),
                    omega: IntMatrix::from_rows(&[[5]]),
                },
                Edge {
                    name: "t".into(),
                    from: 1,
                    to: 1,
                    alpha: IntMatrix::identity(1),
                    omega: IntMatrix::from_rows(&[[2]]),
                },
            ],
        );
        assert_eq!(decide_residually_finite(&g, 20).answer, Answer::Yes);
    }

    #[test]
    fn inconclusive_propagates() {
        let g = GraphOfGroups::ascending_hnn(IntMatrix::from_rows(&[[1, -1], [1, 0]]));
        assert_eq!(decide_residually_finite(&g, 3).answer, Answer::Unknown);
        assert_eq!(decide_grothendieck_rigid(&g, 3).answer, Answer::Unknown);
    }
}
