use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{
    build_level_quotient, build_semidirect_quotient, default_primes, height_quotient, is_prime, level_base_order,
    subgroup_image, FiniteSemidirect, FqElement,
};
use crate::error::{Error, Result};
use crate::hnn::{analyze_subgroup, AscHnn, SubgroupSpec, Word};
use crate::json;
use crate::lattice::{IntMatrix, Lattice, LatticeIndex};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// The finite quotient a certificate lives in, with enough data to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientSpec {
    Height {
        k: u64,
    },
    Level {
        p: u64,
        level: u32,
        m_l: IntMatrix,
        r_l: u64,
    },
    Semidirect {
        lattice: Lattice,
        invariants: Vec<BigInt>,
        action: IntMatrix,
        m: u64,
    },
}

impl QuotientSpec {
    pub fn build(&self, g: &AscHnn) -> Result<FiniteSemidirect> {
        match self {
            QuotientSpec::Height { k } => height_quotient(g, *k),
            QuotientSpec::Level { p, level, m_l, r_l } => {
                let q = build_level_quotient(g, *p, *level)?;
                if &q.m_l != m_l || q.r_l != *r_l {
                    return Err(Error::QuotientMismatch);
                }
                Ok(q.group().clone())
            }
            QuotientSpec::Semidirect {
                lattice,
                invariants,
                action,
                m,
            } => {
                let q = build_semidirect_quotient(g, lattice)?;
                if &q.structure.invariants != invariants || &q.action != action || q.m != *m {
                    return Err(Error::QuotientMismatch);
                }
                Ok(q.group().clone())
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            QuotientSpec::Height { k } => serde_json::json!({ "kind": "height", "k": k }),
            QuotientSpec::Level { p, level, m_l, r_l } => serde_json::json!({
                "kind": "level",
                "p": p,
                "l": level,
                "M_l": json::int_matrix(m_l),
                "r_l": r_l,
            }),
            QuotientSpec::Semidirect {
                lattice,
                invariants,
                action,
                m,
            } => serde_json::json!({
                "kind": "semidirect",
                "lattice": lattice.generators().iter().map(|v| json::int_vec(v)).collect::<Vec<_>>(),
                "invariants": json::int_vec(invariants),
                "action": json::int_matrix(action),
                "m": m,
            }),
        }
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSpec::Height { k } => write!(f, "height quotient Z/{k}"),
            QuotientSpec::Level { p, level, r_l, .. } => {
                write!(f, "level quotient G_{level} at p = {p} (r_l = {r_l})")
            }
            QuotientSpec::Semidirect { lattice, m, .. } => {
                write!(f, "(Z^n / L) x| Z/{m} with L = {lattice}")
            }
        }
    }
}

/// A finite quotient in which the subgroup has a proper image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub quotient: QuotientSpec,
    pub generator_images: Vec<FqElement>,
    pub image_order: u64,
    pub group_order: u64,
    pub reason: String,
}

impl Certificate {
    pub fn index(&self) -> u64 {
        self.group_order / self.image_order
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "quotient": self.quotient.to_json(),
            "generator_images": self.generator_images.iter().map(FqElement::to_json).collect::<Vec<_>>(),
            "image_order": self.image_order,
            "group_order": self.group_order,
            "index": self.index(),
            "reason": self.reason,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate: {}", self.quotient)?;
        let images: Vec<String> = self.generator_images.iter().map(ToString::to_string).collect();
        writeln!(f, "  generator images: {}", images.join(" "))?;
        writeln!(
            f,
            "  image order {} in group of order {} (index {})",
            self.image_order,
            self.group_order,
            self.index()
        )?;
        write!(f, "  {}", self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub primes: Vec<u64>,
    pub max_level: u32,
    pub word_budget: usize,
    pub enumeration_budget: u64,
}

impl SearchBudget {
    /// First five primes not dividing `det φ`, levels up to 3, words of
    /// length up to 6.
    pub fn default_for(g: &AscHnn) -> SearchBudget {
        SearchBudget {
            primes: default_primes(g, 5),
            max_level: 3,
            word_budget: 6,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "primes": self.primes,
            "max_level": self.max_level,
            "word_budget": self.word_budget,
            "enumeration_budget": self.enumeration_budget,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    /// Proves nothing. `skipped` lists quotients left out and why.
    NoneFound {
        budget: SearchBudget,
        skipped: Vec<String>,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NoneFound { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SearchOutcome::Found(c) => serde_json::json!({ "result": "certificate", "certificate": c.to_json() }),
            SearchOutcome::NoneFound { budget, skipped } => serde_json::json!({
                "result": "none-found",
                "budget": budget.to_json(),
                "skipped": skipped,
            }),
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchOutcome::Found(c) => write!(f, "{c}"),
            SearchOutcome::NoneFound { budget, skipped } => {
                let primes: Vec<String> = budget.primes.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "no certificate found (primes {}, max level {}, word budget {}); this proves nothing",
                    primes.join(","),
                    budget.max_level,
                    budget.word_budget
                )?;
                for s in skipped {
                    write!(f, "\n  skipped: {s}")?;
                }
                Ok(())
            }
        }
    }
}

fn height_gcd(g: &AscHnn, gens: &[Word]) -> u64 {
    gens.iter()
        .fold(0i64, |acc, w| num_integer::gcd(acc, g.height(w)))
        .unsigned_abs()
}

/// Certificate from the height map when the height image is not all of `Z`.
pub fn height_certificate(g: &AscHnn, gens: &[Word]) -> Option<Certificate> {
    let m = height_gcd(g, gens);
    let (k, reason) = match m {
        1 => return None,
        0 => (
            2,
            "every generator has height 0, so H lies in the kernel of G -> Z/2 (t -> 1, A -> 0)".to_string(),
        ),
        m => (
            m,
            format!("the height image of H is {m}Z, so H lies in the kernel of G -> Z/{m}"),
        ),
    };
    let group = height_quotient(g, k).expect("nonzero modulus");
    Some(Certificate {
        quotient: QuotientSpec::Height { k },
        generator_images: gens.iter().map(|w| group.project(w)).collect(),
        image_order: 1,
        group_order: k,
        reason,
    })
}

/// The `φ`-invariant closure of the `A ∩ K` lower bound when it has finite
/// index.
pub fn psi_lattice(g: &AscHnn, spec: &SubgroupSpec) -> Option<Lattice> {
    let mut l = spec.base_lower_bound.clone();
    loop {
        let next = l.sum(&l.image(g.phi())).expect("same ambient rank");
        if next == l {
            break;
        }
        l = next;
    }
    (l.index() != LatticeIndex::Infinite).then_some(l)
}

fn proper_image(group: &FiniteSemidirect, gens: &[Word], budget: u64) -> Result<Option<(Vec<FqElement>, u64, u64)>> {
    let images: Vec<FqElement> = gens.iter().map(|w| group.project(w)).collect();
    let img = subgroup_image(group, &images, budget)?;
    Ok(img.is_proper().then_some((images, img.order, img.group_order)))
}

/// Height quotient, then level quotients by `(p, l)`, then the `ψ`
/// quotient. The first proper image wins.
pub fn certificate_search(g: &AscHnn, gens: &[Word], budget: &SearchBudget) -> SearchOutcome {
    if let Some(c) = height_certificate(g, gens) {
        return SearchOutcome::Found(c);
    }
    let mut skipped = Vec::new();
    let mut primes = budget.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    let det = g.det();
    for &p in &primes {
        if !is_prime(p) {
            skipped.push(format!("p = {p}: not prime"));
            continue;
        }
        if (&det % BigInt::from(p)) == BigInt::from(0) {
            skipped.push(format!("p = {p}: divides det(phi) = {det}"));
            continue;
        }
        for level in 1..=budget.max_level {
            if level_base_order(p, level, g.rank()) > budget.enumeration_budget.into() {
                skipped.push(format!(
                    "p = {p}, l >= {level}: quotient exceeds the enumeration budget"
                ));
                break;
            }
            let q = match build_level_quotient(g, p, level) {
                Ok(q) => q,
                Err(e) => {
                    skipped.push(format!("p = {p}, l = {level}: {e}"));
                    break;
                }
            };
            match proper_image(q.group(), gens, budget.enumeration_budget) {
                Ok(Some((images, image_order, group_order))) => {
                    return SearchOutcome::Found(Certificate {
                        reason: format!(
                            "H has image of index {} in G_{level} = (Z/{}^{level})^{} x| Z/{}",
                            group_order / image_order,
                            p,
                            g.rank(),
                            q.r_l
                        ),
                        quotient: QuotientSpec::Level {
                            p,
                            level,
                            m_l: q.m_l.clone(),
                            r_l: q.r_l,
                        },
                        generator_images: images,
                        image_order,
                        group_order,
                    })
                }
                Ok(None) => {}
                Err(e) => {
                    skipped.push(format!("p = {p}, l = {level}: {e}"));
                    break;
                }
            }
        }
    }

    let spec = analyze_subgroup(g, gens, budget.word_budget);
    match psi_lattice(g, &spec) {
        None => skipped.push("psi quotient: closure of the A∩K lower bound has infinite index".into()),
        Some(l) => match build_semidirect_quotient(g, &l) {
            Err(e) => skipped.push(format!("psi quotient for L = {l}: {e}")),
            Ok(q) => match proper_image(q.group(), gens, budget.enumeration_budget) {
                Ok(Some((images, image_order, group_order))) => {
                    return SearchOutcome::Found(Certificate {
                        reason: format!(
                            "H has image of index {} in (Z^n / L) x| Z/{} with L = {l}",
                            group_order / image_order,
                            q.m
                        ),
                        quotient: QuotientSpec::Semidirect {
                            lattice: l,
                            invariants: q.structure.invariants.clone(),
                            action: q.action.clone(),
                            m: q.m,
                        },
                        generator_images: images,
                        image_order,
                        group_order,
                    })
                }
                Ok(None) => {}
                Err(e) => skipped.push(format!("psi quotient for L = {l}: {e}")),
            },
        },
    }
    SearchOutcome::NoneFound {
        budget: budget.clone(),
        skipped,
    }
}

/// Rebuilds the quotient, recomputes the image of `gens` and checks that it
/// matches the certificate and is proper.
pub fn verify_certificate(g: &AscHnn, gens: &[Word], cert: &Certificate, budget: u64) -> Result<bool> {
    let group = cert.quotient.build(g)?;
    let images: Vec<FqElement> = gens.iter().map(|w| group.project(w)).collect();
    if images != cert.generator_images {
        return Ok(false);
    }
    let img = subgroup_image(&group, &images, budget)?;
    Ok(img.order == cert.image_order
        && Some(img.group_order) == group.order().to_u64()
        && img.group_order == cert.group_order
        && img.is_proper())
}
