//! Finite quotients `Q ⋊ Z/r` of ascending HNN extensions and the search
//! for a quotient in which a subgroup has a proper image.
//!
//! A proper image in some finite quotient shows that the inclusion `H → G`
//! does not induce an isomorphism of profinite completions. No search result
//! ever claims the converse.

mod certificate;
mod group;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::hnn::{AscHnn, Word};
use crate::lattice::{
    induced_automorphism_order, matrix_order_mod, FiniteAbelianPresentation, IntMatrix, Lattice, LatticeIndex,
};

pub use certificate::{
    certificate_search, height_certificate, psi_lattice, verify_certificate, Certificate, QuotientSpec, SearchBudget,
    SearchOutcome, DEFAULT_ENUMERATION_BUDGET,
};
pub use group::{subgroup_image, FiniteSemidirect, FqElement, SubgroupImage};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `G_l = (Z/p^l)^n ⋊ <t̄>` with `t̄` acting by `φ mod p^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelQuotient {
    pub p: u64,
    pub level: u32,
    pub modulus: u64,
    /// `φ` reduced modulo `p^l`.
    pub m_l: IntMatrix,
    /// Order of `m_l`.
    pub r_l: u64,
    group: FiniteSemidirect,
}

impl LevelQuotient {
    pub fn group(&self) -> &FiniteSemidirect {
        &self.group
    }

    /// `p^{ln} · r_l`.
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

pub fn build_level_quotient(g: &AscHnn, p: u64, level: u32) -> Result<LevelQuotient> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if level == 0 {
        return Err(Error::InvalidLevel);
    }
    let det = g.det();
    if det.is_multiple_of(&BigInt::from(p)) {
        return Err(Error::PrimeDividesDeterminant {
            p,
            det: det.to_string(),
        });
    }
    let modulus = p
        .checked_pow(level)
        .ok_or_else(|| Error::PreconditionViolated(format!("{p}^{level} does not fit in 64 bits")))?;
    let m_l = g.phi().reduce_mod(&BigInt::from(modulus));
    let r_l = matrix_order_mod(&m_l, modulus)?;
    let n = g.rank();
    let group = FiniteSemidirect::new(vec![modulus; n], IntMatrix::identity(n), &m_l, r_l)?;
    Ok(LevelQuotient {
        p,
        level,
        modulus,
        m_l,
        r_l,
        group,
    })
}

pub fn fq_mul(quotient: &LevelQuotient, x: &FqElement, y: &FqElement) -> Result<FqElement> {
    quotient.group.mul(x, y)
}

pub fn project(quotient: &LevelQuotient, w: &Word) -> FqElement {
    quotient.group.project(w)
}

/// `ψ: G → (Z^n / L) ⋊ Z/m` for a `φ`-invariant finite-index `L` on which
/// `φ` induces an automorphism of order `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectQuotient {
    pub lattice: Lattice,
    pub structure: FiniteAbelianPresentation,
    /// Induced automorphism in quotient coordinates.
    pub action: IntMatrix,
    pub m: u64,
    group: FiniteSemidirect,
}

impl SemidirectQuotient {
    pub fn group(&self) -> &FiniteSemidirect {
        &self.group
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

pub fn build_semidirect_quotient(g: &AscHnn, lattice: &Lattice) -> Result<SemidirectQuotient> {
    if lattice.ambient_rank() != g.rank() {
        return Err(Error::RankMismatch {
            expected: g.rank(),
            found: lattice.ambient_rank(),
        });
    }
    if !lattice.is_invariant_under(g.phi()) {
        return Err(Error::NotInvariant);
    }
    if lattice.index() == LatticeIndex::Infinite {
        return Err(Error::InfiniteIndex);
    }
    let m = induced_automorphism_order(g.phi(), lattice)?;
    let structure = lattice.quotient_structure();
    let moduli = structure
        .invariants
        .iter()
        .map(|d| {
            u64::try_from(d).map_err(|_| Error::PreconditionViolated(format!("invariant {d} does not fit in 64 bits")))
        })
        .collect::<Result<Vec<_>>>()?;
    let action = structure.induced_action(g.phi());
    let group = FiniteSemidirect::new(moduli, structure.projection.clone(), &action, m)?;
    Ok(SemidirectQuotient {
        lattice: lattice.clone(),
        structure,
        action,
        m,
        group,
    })
}

/// `G → Z/k`, `t ↦ 1`, `A ↦ 0`.
pub fn height_quotient(g: &AscHnn, k: u64) -> Result<FiniteSemidirect> {
    FiniteSemidirect::new(vec![], IntMatrix::zeros(0, g.rank()), &IntMatrix::zeros(0, 0), k)
}

/// First `count` primes not dividing `det φ`.
pub fn default_primes(g: &AscHnn, count: usize) -> Vec<u64> {
    let det = g.det();
    (2u64..)
        .filter(|&p| is_prime(p) && !det.is_multiple_of(&BigInt::from(p)))
        .take(count)
        .collect()
}

/// `p^{ln}`, for budget comparisons before building a quotient.
pub(crate) fn level_base_order(p: u64, level: u32, n: usize) -> BigUint {
    Pow::pow(&BigUint::from(p), level as usize * n)
}
