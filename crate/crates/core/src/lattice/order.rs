use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow};

use super::matrix::IntMatrix;
use super::{Lattice, LatticeIndex};
use crate::error::{Error, Result};

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `|GL(n, Z/m)|`.
pub fn gl_order(n: usize, modulus: u64) -> BigUint {
    let mut total = BigUint::one();
    for (p, e) in factorize(modulus) {
        let p = BigUint::from(p);
        let pn = Pow::pow(&p, n as u32);
        // |GL(n, Z/p^e)| = p^((e-1) n^2) * prod_{i<n} (p^n - p^i)
        total *= Pow::pow(&p, (e as usize - 1) * n * n) as BigUint;
        for i in 0..n {
            total *= &pn - Pow::pow(&p, i as u32);
        }
    }
    total
}

/// Least `r >= 1` with `m^r ≡ I (mod modulus)`, by iterated powering capped
/// at `|GL(n, Z/modulus)|`.
pub fn matrix_order_mod(m: &IntMatrix, modulus: u64) -> Result<u64> {
    assert!(m.is_square(), "order of a non-square matrix");
    assert!(modulus > 0, "modulus must be positive");
    if !m.det().gcd(&BigInt::from(modulus)).is_one() {
        return Err(Error::NotInvertibleMod { modulus });
    }
    let md = BigInt::from(modulus);
    let base = m.reduce_mod(&md);
    let identity = IntMatrix::identity(m.rows()).reduce_mod(&md);
    let cap = gl_order(m.rows(), modulus);
    let mut power = base.clone();
    let mut r: u64 = 1;
    while power != identity {
        power = (&power * &base).reduce_mod(&md);
        r += 1;
        if BigUint::from(r) > cap {
            return Err(Error::Internal(format!(
                "matrix order mod {modulus} exceeded |GL| = {cap}"
            )));
        }
    }
    Ok(r)
}

/// Order of the automorphism of `Z^n / L` induced by `phi`.
pub fn induced_automorphism_order(phi: &IntMatrix, lattice: &Lattice) -> Result<u64> {
    if !lattice.is_invariant_under(phi) {
        return Err(Error::NotInvariant);
    }
    let LatticeIndex::Finite(index) = lattice.index() else {
        return Err(Error::InfiniteIndex);
    };
    // bijective on a finite group iff surjective: phi(Z^n) + L = Z^n
    let n = lattice.ambient_rank();
    let image = Lattice::from_generators(phi).sum(lattice)?;
    if image != Lattice::full(n) {
        return Err(Error::NotAutomorphism);
    }
    let quotient = lattice.quotient_structure();
    let t = quotient.invariants.len();
    if t == 0 {
        return Ok(1);
    }
    let action = quotient.induced_action(phi);
    let reduce = |m: IntMatrix| {
        let mut m = m;
        for i in 0..t {
            for j in 0..t {
                m[(i, j)] = m[(i, j)].mod_floor(&quotient.invariants[i]);
            }
        }
        m
    };
    // an automorphism is determined by the images of t generators
    let cap: BigInt = Pow::pow(&index, t as u32);
    let identity = IntMatrix::identity(t);
    let mut power = action.clone();
    let mut m: u64 = 1;
    while power != identity {
        power = reduce(&action * &power);
        m += 1;
        if BigInt::from(m) > cap {
            return Err(Error::Internal("induced automorphism order exceeded bound".into()));
        }
    }
    Ok(m)
}
