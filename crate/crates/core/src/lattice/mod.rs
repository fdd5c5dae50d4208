//! Exact integer lattice algebra in Z^n.
//!
//! A [`Lattice`] is stored as the nonzero columns of its column Hermite
//! normal form, so two lattices are equal exactly when their bases are.

mod matrix;
mod normal_form;
mod order;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use matrix::{rat_inverse, IntMatrix, IntVector, RatMatrix};
pub use normal_form::{hnf, snf, Hermite, Smith};
pub use order::{gl_order, induced_automorphism_order, matrix_order_mod};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    ambient: usize,
    /// `ambient x rank`, canonical column HNF.
    basis: IntMatrix,
    pivots: Vec<usize>,
}

/// Index of a sublattice in Z^n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(k) => write!(f, "{k}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl Lattice {
    /// Lattice spanned by the columns of `generators` (`ambient` rows).
    pub fn from_generators(generators: &IntMatrix) -> Lattice {
        let herm = hnf(generators);
        Lattice {
            ambient: generators.rows(),
            basis: herm.basis(),
            pivots: herm.pivots,
        }
    }

    pub fn from_vectors(ambient: usize, vectors: &[IntVector]) -> Lattice {
        Lattice::from_generators(&IntMatrix::from_columns(ambient, vectors))
    }

    pub fn full(n: usize) -> Lattice {
        Lattice::from_generators(&IntMatrix::identity(n))
    }

    pub fn zero(n: usize) -> Lattice {
        Lattice::from_generators(&IntMatrix::zeros(n, 0))
    }

    /// `k * Z^n`.
    pub fn scaled(n: usize, k: i64) -> Lattice {
        Lattice::from_generators(&IntMatrix::scalar(n, k))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    /// Canonical basis, one column per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn generators(&self) -> Vec<IntVector> {
        self.basis.columns()
    }

    /// Membership by back-substitution along the echelon pivots.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector dimension mismatch");
        let mut rest = v.to_vec();
        let mut row = 0;
        for (k, &p) in self.pivots.iter().enumerate() {
            if rest[row..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = rest[p].div_rem(&self.basis[(p, k)]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (i, x) in rest.iter_mut().enumerate().skip(p) {
                    *x -= &q * &self.basis[(i, k)];
                }
            }
            row = p + 1;
        }
        rest[row..].iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::RankMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        Ok(Lattice::from_generators(&self.basis.hstack(&other.basis)))
    }

    /// Set-theoretic intersection. The kernel of `[B1 | B2]` is read off the
    /// transform of its Hermite form; its `B1`-part maps onto `L1 ∩ L2`.
    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        let k1 = self.rank();
        let stacked = self.basis.hstack(&other.basis);
        let herm = hnf(&stacked);
        let kernel: Vec<IntVector> = (herm.rank()..stacked.cols())
            .map(|j| {
                let x: IntVector = (0..k1).map(|i| herm.u[(i, j)].clone()).collect();
                self.basis.mul_vec(&x)
            })
            .collect();
        Ok(Lattice::from_vectors(self.ambient, &kernel))
    }

    pub fn index(&self) -> LatticeIndex {
        if !self.is_full_rank() {
            return LatticeIndex::Infinite;
        }
        // full rank: pivots sit on the diagonal of a lower-triangular basis
        LatticeIndex::Finite((0..self.ambient).map(|i| self.basis[(i, i)].clone()).product())
    }

    /// Image under a square integer matrix.
    pub fn image(&self, m: &IntMatrix) -> Lattice {
        assert_eq!(m.cols(), self.ambient);
        Lattice::from_generators(&(m * &self.basis))
    }

    pub fn is_invariant_under(&self, phi: &IntMatrix) -> bool {
        assert!(phi.is_square() && phi.rows() == self.ambient, "phi must be n x n");
        self.generators().iter().all(|b| self.contains(&phi.mul_vec(b)))
    }

    /// Canonical coset representative of `v` modulo a full-rank lattice:
    /// coordinate `i` ends in `[0, basis[i][i])`.
    pub fn reduce(&self, v: &[BigInt]) -> Result<IntVector> {
        if !self.is_full_rank() {
            return Err(Error::InfiniteIndex);
        }
        let mut rest = v.to_vec();
        for k in 0..self.ambient {
            let q = rest[k].div_floor(&self.basis[(k, k)]);
            if !q.is_zero() {
                for (i, x) in rest.iter_mut().enumerate().skip(k) {
                    *x -= &q * &self.basis[(i, k)];
                }
            }
        }
        Ok(rest)
    }

    /// Structure of `Z^n / L` through the Smith form of the basis.
    pub fn quotient_structure(&self) -> FiniteAbelianPresentation {
        let n = self.ambient;
        let k = self.rank();
        let smith = snf(&self.basis);
        let u_inv = rat_inverse(&smith.u)
            .ok()
            .and_then(|m| m.to_integer())
            .expect("Smith transform is unimodular");
        let mut invariants = Vec::new();
        let mut coords = Vec::new();
        for i in 0..k {
            let d = smith.d[(i, i)].clone();
            if !d.is_one() {
                invariants.push(d);
                coords.push(i);
            }
        }
        coords.extend(k..n);
        let projection =
            IntMatrix::from_columns(n, &coords.iter().map(|&i| smith.u.row(i)).collect::<Vec<_>>()).transpose();
        let lift = IntMatrix::from_columns(n, &coords.iter().map(|&i| u_inv.col(i)).collect::<Vec<_>>());
        FiniteAbelianPresentation {
            free_rank: n - k,
            invariants,
            projection,
            lift,
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (j, g) in self.generators().iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "}} in Z^{}", self.ambient)
    }
}

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Lattice", 3)?;
        st.serialize_field("ambient_rank", &self.ambient)?;
        st.serialize_field(
            "generators",
            &self
                .generators()
                .iter()
                .map(|g| crate::json::int_vec(g))
                .collect::<Vec<_>>(),
        )?;
        st.serialize_field("index", &self.index().to_string())?;
        st.end()
    }
}

/// `Z^n / L ≅ Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | ... | d_k`, each `d_i >= 2`.
///
/// Quotient coordinates of `v` are `projection * v`: the first
/// `invariants.len()` entries are taken modulo the matching `d_i`, the last
/// `free_rank` entries are free. Column `i` of `lift` is a preimage of the
/// `i`-th quotient generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAbelianPresentation {
    pub free_rank: usize,
    pub invariants: Vec<BigInt>,
    pub projection: IntMatrix,
    pub lift: IntMatrix,
}

impl FiniteAbelianPresentation {
    /// Group order, `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariants.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariants.is_empty()
    }

    /// Reduced torsion coordinates of `v`; only meaningful for finite quotients.
    pub fn coordinates(&self, v: &[BigInt]) -> IntVector {
        let raw = self.projection.mul_vec(v);
        raw.iter()
            .enumerate()
            .map(|(i, x)| match self.invariants.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    /// Matrix of the map induced by `phi` on torsion coordinates; row `i`
    /// is reduced modulo `d_i`. Requires a finite quotient and an invariant
    /// lattice (the caller checks).
    pub fn induced_action(&self, phi: &IntMatrix) -> IntMatrix {
        let t = self.invariants.len();
        let full = &(&self.projection * phi) * &self.lift;
        let mut out = IntMatrix::zeros(t, t);
        for i in 0..t {
            for j in 0..t {
                out[(i, j)] = full[(i, j)].mod_floor(&self.invariants[i]);
            }
        }
        out
    }
}
