//! Oracles written independently of the library internals.
#![allow(dead_code)]

use gbsn::gog::{Edge, GraphOfGroups};
use gbsn::hnn::{Letter, NormalForm, Word};
use gbsn::lattice::{IntMatrix, Lattice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// Gauss-Jordan inverse of a small rational matrix.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Q::one() / a[c][c].clone();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn apply(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// The ascending HNN extension realised inside `Q^n ⋊ Z`, where `t` acts by
/// `φ`. The map `a ↦ (a, 0)`, `t ↦ (0, 1)` is injective, so two words are
/// equal in the group exactly when their images agree.
pub struct RationalModel {
    pub phi: Vec<Vec<Q>>,
    pub phi_inv: Vec<Vec<Q>>,
}

impl RationalModel {
    pub fn new(phi: &IntMatrix) -> RationalModel {
        let n = phi.rows();
        let phi: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| Q::from_integer(phi[(i, j)].clone())).collect())
            .collect();
        let phi_inv = inverse(&phi).expect("phi is invertible over Q");
        RationalModel { phi, phi_inv }
    }

    fn phi_pow(&self, v: &[Q], k: i64) -> Vec<Q> {
        let m = if k >= 0 { &self.phi } else { &self.phi_inv };
        (0..k.unsigned_abs()).fold(v.to_vec(), |acc, _| apply(m, &acc))
    }

    /// `(v, k)(w, l) = (v + φ^k w, k + l)`.
    pub fn mul(&self, x: &(Vec<Q>, i64), y: &(Vec<Q>, i64)) -> (Vec<Q>, i64) {
        let moved = self.phi_pow(&y.0, x.1);
        (x.0.iter().zip(&moved).map(|(a, b)| a + b).collect(), x.1 + y.1)
    }

    pub fn eval(&self, w: &Word) -> (Vec<Q>, i64) {
        let n = self.phi.len();
        w.letters().iter().fold((vec![Q::zero(); n], 0), |acc, l| {
            let y = match l {
                Letter::Stable(up) => (vec![Q::zero(); n], if *up { 1 } else { -1 }),
                Letter::Base(v) => (v.iter().map(|x| Q::from_integer(x.clone())).collect(), 0),
            };
            self.mul(&acc, &y)
        })
    }

    pub fn eval_normal_form(&self, nf: &NormalForm) -> (Vec<Q>, i64) {
        let a: Vec<Q> = nf.base.iter().map(|x| Q::from_integer(x.clone())).collect();
        (self.phi_pow(&a, -(nf.down as i64)), nf.up as i64 - nf.down as i64)
    }

    pub fn in_phi_image(&self, a: &[BigInt]) -> bool {
        let a: Vec<Q> = a.iter().map(|x| Q::from_integer(x.clone())).collect();
        self.phi_pow(&a, -1).iter().all(|x| x.is_integer())
    }

    /// `normalize` output represents the word and satisfies the reducedness
    /// condition.
    pub fn check(&self, w: &Word, nf: &NormalForm) -> bool {
        let reduced = nf.down == 0 || nf.up == 0 || !self.in_phi_image(&nf.base);
        reduced && self.eval(w) == self.eval_normal_form(nf)
    }
}

/// Random small integer matrix with `lo <= |det| <= hi`.
pub fn random_phi<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-3..=3)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows);
        let d = m.det().abs();
        if d >= BigInt::from(lo) && d <= BigInt::from(hi) {
            return m;
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect()
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::from_letters((0..len).map(|_| {
        if rng.random_bool(0.5) {
            Letter::Stable(rng.random_bool(0.5))
        } else {
            Letter::Base(random_vector(rng, n, 3))
        }
    }))
}

/// `t a t^-1 φ(a)^-1` for a random `a`.
pub fn random_relator<R: Rng>(rng: &mut R, phi: &IntMatrix) -> Word {
    let a = random_vector(rng, phi.rows(), 3);
    let phi_a: Vec<BigInt> = phi.mul_vec(&a).iter().map(|x| -x).collect();
    Word::from_letters([
        Letter::Stable(true),
        Letter::Base(a),
        Letter::Stable(false),
        Letter::Base(phi_a),
    ])
}

/// Membership in a full-rank lattice through `adj(B) v ≡ 0 (mod det B)`.
pub struct CosetKey {
    adj: Vec<Vec<i128>>,
    det: i128,
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i128(&minor)
            })
            .sum(),
    }
}

impl CosetKey {
    /// `basis` columns are the generators.
    pub fn new(basis: &[Vec<i64>]) -> CosetKey {
        let n = basis.len();
        let b: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| basis[j][i] as i128).collect()).collect();
        let det = det_i128(&b);
        assert!(det != 0, "basis must be nonsingular");
        let adj = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let minor: Vec<Vec<i128>> = (0..n)
                            .filter(|&r| r != j)
                            .map(|r| (0..n).filter(|&c| c != i).map(|c| b[r][c]).collect())
                            .collect();
                        let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                        s * det_i128(&minor)
                    })
                    .collect()
            })
            .collect();
        CosetKey { adj, det }
    }

    pub fn index(&self) -> u64 {
        self.det.unsigned_abs() as u64
    }

    pub fn key(&self, v: &[i64]) -> Vec<i128> {
        let d = self.det.abs();
        self.adj
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .map(|(a, x)| a * *x as i128)
                    .sum::<i128>()
                    .rem_euclid(d)
            })
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.key(v).iter().all(|x| *x == 0)
    }
}

/// All cosets of `Z^n` modulo the intersection of the given lattices, found
/// by breadth-first search over `±e_i` steps; returns one representative per
/// coset.
pub fn enumerate_cosets(n: usize, keys: &[&CosetKey]) -> Vec<Vec<i64>> {
    use std::collections::{HashSet, VecDeque};
    let key_of = |v: &[i64]| keys.iter().map(|k| k.key(v)).collect::<Vec<_>>();
    let start = vec![0i64; n];
    let mut seen = HashSet::from([key_of(&start)]);
    let mut reps = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            for s in [1, -1] {
                let mut w = v.clone();
                w[i] += s;
                if seen.insert(key_of(&w)) {
                    reps.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
    }
    reps
}

/// Random nonsingular `n × n` basis (as columns) with `|det| <= max_index`.
pub fn random_basis<R: Rng>(rng: &mut R, n: usize, max_index: u64) -> Vec<Vec<i64>> {
    loop {
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-5..=5)).collect())
            .collect();
        let k = CosetKey::new_checked(&cols);
        if let Some(k) = k {
            if k.index() <= max_index {
                return cols;
            }
        }
    }
}

impl CosetKey {
    pub fn new_checked(basis: &[Vec<i64>]) -> Option<CosetKey> {
        let n = basis.len();
        let b: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| basis[j][i] as i128).collect()).collect();
        (det_i128(&b) != 0).then(|| CosetKey::new(basis))
    }
}

pub fn lattice_of(n: usize, cols: &[Vec<i64>]) -> Lattice {
    Lattice::from_vectors(n, &cols.iter().map(|c| ints(c)).collect::<Vec<_>>())
}

pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// `Π gcd(k, d_i)`, the number of elements killed by `k` in `⊕ Z/d_i`.
pub fn killed_by(k: u64, invariants: &[u64]) -> u64 {
    invariants.iter().map(|&d| num_integer::gcd(k, d)).product()
}

/// Least `r >= 1` with `m^r ≡ I (mod modulus)`, by plain repeated
/// multiplication of `i64` matrices.
pub fn brute_order_mod(m: &[Vec<i64>], modulus: i64) -> u64 {
    let n = m.len();
    let reduce = |x: i64| x.rem_euclid(modulus);
    let id: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| reduce((i == j) as i64)).collect())
        .collect();
    let base: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| reduce(x)).collect()).collect();
    let mut p = base.clone();
    let mut r = 1;
    while p != id {
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| reduce((0..n).map(|k| p[i][k] * base[k][j]).sum()))
                    .collect()
            })
            .collect();
        r += 1;
        assert!(r < 1_000_000, "no finite order");
    }
    r
}

/// Connected random graph: a spanning path on the vertices plus random
/// extra edges, inclusions drawn from identities, scalars and small
/// nonsingular matrices.
pub fn random_graph<R: Rng>(rng: &mut R) -> GraphOfGroups {
    let n = rng.random_range(1..=3);
    let nv = rng.random_range(1..=4);
    let ne = rng.random_range(nv - 1..=6.max(nv - 1));
    let matrix = |rng: &mut R| -> IntMatrix {
        match rng.random_range(0..4) {
            0 => IntMatrix::identity(n),
            1 => IntMatrix::scalar(n, rng.random_range(2..=3)),
            _ => random_phi(rng, n, 1, 6),
        }
    };
    let mut edges = Vec::new();
    for k in 0..ne {
        // the first nv - 1 edges form a spanning path
        let (from, to) = if k + 1 < nv {
            (k, k + 1)
        } else {
            (rng.random_range(0..nv), rng.random_range(0..nv))
        };
        let alpha = matrix(rng);
        let omega = if rng.random_bool(0.4) {
            alpha.clone()
        } else {
            matrix(rng)
        };
        edges.push(Edge {
            name: format!("e{k}"),
            from,
            to,
            alpha,
            omega,
        });
    }
    GraphOfGroups::new(n, (0..nv).map(|i| format!("v{i}")).collect(), edges)
}
