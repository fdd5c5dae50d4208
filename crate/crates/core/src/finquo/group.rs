use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::hnn::{Letter, Word};
use crate::lattice::IntMatrix;

/// Element `(q, s)` of `Q ⋊ Z/r`, `q` reduced coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement {
    pub q: Vec<u64>,
    pub s: u64,
}

impl FqElement {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "q": self.q, "s": self.s })
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.q.iter().map(ToString::to_string).collect();
        write!(f, "([{}], {})", q.join(","), self.s)
    }
}

type Mat = Vec<Vec<u64>>;

/// `Q ⋊ Z/r` with `Q = ⊕ Z/moduli[i]`, the generator of `Z/r` acting by
/// `action`, together with the projection `Z^n → Q` that makes
/// `a ↦ (a, 0), t ↦ (0, 1)` a homomorphism from the HNN extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemidirect {
    moduli: Vec<u64>,
    projection: IntMatrix,
    action: Mat,
    t_order: u64,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn to_residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue below a u64 modulus")
}

impl FiniteSemidirect {
    /// `projection` is `k × n` and `action` is `k × k`, both taken modulo
    /// the row's modulus.
    pub fn new(moduli: Vec<u64>, projection: IntMatrix, action: &IntMatrix, t_order: u64) -> Result<Self> {
        let k = moduli.len();
        if projection.rows() != k || action.rows() != k || action.cols() != k {
            return Err(Error::RankMismatch {
                expected: k,
                found: action.rows(),
            });
        }
        if t_order == 0 || moduli.contains(&0) {
            return Err(Error::InfiniteIndex);
        }
        let action = (0..k)
            .map(|i| (0..k).map(|j| to_residue(&action[(i, j)], moduli[i])).collect())
            .collect();
        Ok(FiniteSemidirect {
            moduli,
            projection,
            action,
            t_order,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn t_order(&self) -> u64 {
        self.t_order
    }

    pub fn order(&self) -> BigUint {
        self.moduli.iter().map(|&m| BigUint::from(m)).product::<BigUint>() * self.t_order
    }

    pub fn identity(&self) -> FqElement {
        FqElement {
            q: vec![0; self.moduli.len()],
            s: 0,
        }
    }

    pub fn t(&self) -> FqElement {
        FqElement {
            q: vec![0; self.moduli.len()],
            s: 1 % self.t_order,
        }
    }

    pub fn t_inverse(&self) -> FqElement {
        FqElement {
            q: vec![0; self.moduli.len()],
            s: self.t_order - 1,
        }
    }

    fn apply(&self, m: &Mat, q: &[u64]) -> Vec<u64> {
        m.iter()
            .zip(&self.moduli)
            .map(|(row, &md)| {
                row.iter()
                    .zip(q)
                    .fold(0, |acc, (&a, &x)| addmod(acc, mulmod(a, x, md), md))
            })
            .collect()
    }

    fn compose(&self, a: &Mat, b: &Mat) -> Mat {
        let k = self.moduli.len();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        (0..k).fold(0, |acc, l| {
                            addmod(acc, mulmod(a[i][l], b[l][j], self.moduli[i]), self.moduli[i])
                        })
                    })
                    .collect()
            })
            .collect()
    }

    fn action_power(&self, mut e: u64) -> Mat {
        let k = self.moduli.len();
        let mut acc: Mat = (0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j) % self.moduli[i]).collect())
            .collect();
        let mut base = self.action.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.compose(&base, &base);
            }
        }
        acc
    }

    /// Action matrix of `t̄` as integers.
    pub fn action(&self) -> IntMatrix {
        let k = self.moduli.len();
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = BigInt::from(self.action[i][j]);
            }
        }
        m
    }

    fn is_member(&self, x: &FqElement) -> bool {
        x.q.len() == self.moduli.len() && x.q.iter().zip(&self.moduli).all(|(a, m)| a < m) && x.s < self.t_order
    }

    fn mul_with(&self, x: &FqElement, twist: &Mat, y: &FqElement) -> FqElement {
        let moved = self.apply(twist, &y.q);
        FqElement {
            q: x.q
                .iter()
                .zip(&moved)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| addmod(a, b, m))
                .collect(),
            s: addmod(x.s, y.s, self.t_order),
        }
    }

    /// `(q_x + A^{s_x} q_y, s_x + s_y)`.
    pub fn mul(&self, x: &FqElement, y: &FqElement) -> Result<FqElement> {
        if !self.is_member(x) || !self.is_member(y) {
            return Err(Error::QuotientMismatch);
        }
        Ok(self.mul_with(x, &self.action_power(x.s), y))
    }

    pub fn inverse(&self, x: &FqElement) -> Result<FqElement> {
        if !self.is_member(x) {
            return Err(Error::QuotientMismatch);
        }
        let s = (self.t_order - x.s) % self.t_order;
        let moved = self.apply(&self.action_power(s), &x.q);
        Ok(FqElement {
            q: moved.iter().zip(&self.moduli).map(|(&a, &m)| (m - a) % m).collect(),
            s,
        })
    }

    /// Image of the base-group element `v`.
    pub fn project_vector(&self, v: &[BigInt]) -> FqElement {
        let raw = self.projection.mul_vec(v);
        FqElement {
            q: raw.iter().zip(&self.moduli).map(|(x, &m)| to_residue(x, m)).collect(),
            s: 0,
        }
    }

    pub fn project(&self, w: &Word) -> FqElement {
        let t = self.t();
        let t_inv = self.t_inverse();
        w.letters().iter().fold(self.identity(), |acc, l| {
            let y = match l {
                Letter::Stable(true) => t.clone(),
                Letter::Stable(false) => t_inv.clone(),
                Letter::Base(v) => self.project_vector(v),
            };
            self.mul_with(&acc, &self.action_power(acc.s), &y)
        })
    }

    /// Mixed-radix code in `[0, order)`.
    pub fn encode(&self, x: &FqElement) -> u64 {
        x.q.iter().zip(&self.moduli).fold(x.s, |acc, (&a, &m)| acc * m + a)
    }

    pub fn decode(&self, mut code: u64) -> FqElement {
        let mut q = vec![0; self.moduli.len()];
        for (slot, &m) in q.iter_mut().zip(&self.moduli).rev() {
            *slot = code % m;
            code /= m;
        }
        FqElement { q, s: code }
    }
}

/// Subgroup generated by some elements of a [`FiniteSemidirect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupImage {
    pub order: u64,
    pub group_order: u64,
    /// Sorted element codes, see [`FiniteSemidirect::encode`].
    pub codes: Vec<u64>,
}

impl SubgroupImage {
    pub fn index(&self) -> u64 {
        self.group_order / self.order
    }

    pub fn is_proper(&self) -> bool {
        self.order < self.group_order
    }

    pub fn contains(&self, group: &FiniteSemidirect, x: &FqElement) -> bool {
        self.codes.binary_search(&group.encode(x)).is_ok()
    }
}

/// Closure of `gens` under multiplication; refuses groups larger than
/// `budget`.
pub fn subgroup_image(group: &FiniteSemidirect, gens: &[FqElement], budget: u64) -> Result<SubgroupImage> {
    let group_order = group
        .order()
        .to_u64()
        .filter(|&o| o <= budget)
        .ok_or(Error::BudgetExceeded { budget })?;
    for g in gens {
        if !group.is_member(g) {
            return Err(Error::QuotientMismatch);
        }
    }
    let twists: Vec<(FqElement, Mat)> = gens.iter().map(|g| (g.clone(), group.action_power(g.s))).collect();
    let mut seen = vec![false; group_order as usize];
    let start = group.identity();
    seen[group.encode(&start) as usize] = true;
    let mut codes = vec![group.encode(&start)];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for (g, twist) in &twists {
            let y = group.mul_with(g, twist, &x);
            let c = group.encode(&y);
            if !seen[c as usize] {
                seen[c as usize] = true;
                codes.push(c);
                queue.push_back(y);
            }
        }
    }
    codes.sort_unstable();
    Ok(SubgroupImage {
        order: codes.len() as u64,
        group_order,
        codes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z6_by_z2() -> FiniteSemidirect {
        // dihedral group of order 12
        FiniteSemidirect::new(vec![6], IntMatrix::identity(1), &IntMatrix::from_rows(&[[-1]]), 2).unwrap()
    }

    #[test]
    fn dihedral_law() {
        let g = z6_by_z2();
        let r = FqElement { q: vec![1], s: 0 };
        let f = g.t();
        let frf = g.mul(&g.mul(&f, &r).unwrap(), &g.inverse(&f).unwrap()).unwrap();
        assert_eq!(frf, FqElement { q: vec![5], s: 0 });
        assert_eq!(g.mul(&r, &g.inverse(&r).unwrap()).unwrap(), g.identity());
        assert_eq!(g.order(), BigUint::from(12u32));
    }

    #[test]
    fn codes_round_trip() {
        let g = z6_by_z2();
        for c in 0..12 {
            assert_eq!(g.encode(&g.decode(c)), c);
        }
    }

    #[test]
    fn closures() {
        let g = z6_by_z2();
        let all = subgroup_image(&g, &[FqElement { q: vec![1], s: 0 }, g.t()], 100).unwrap();
        assert_eq!(all.order, 12);
        let rot = subgroup_image(&g, &[FqElement { q: vec![2], s: 0 }], 100).unwrap();
        assert_eq!(rot.order, 3);
        assert_eq!(rot.index(), 4);
        assert_eq!(subgroup_image(&g, &[], 100).unwrap().order, 1);
        assert!(matches!(
            subgroup_image(&g, &[], 5),
            Err(Error::BudgetExceeded { budget: 5 })
        ));
    }

    #[test]
    fn mismatched_elements() {
        let g = z6_by_z2();
        let bad = FqElement { q: vec![7], s: 0 };
        assert!(matches!(g.mul(&bad, &g.t()), Err(Error::QuotientMismatch)));
        let wrong_len = FqElement { q: vec![], s: 0 };
        assert!(g.inverse(&wrong_len).is_err());
    }
}
