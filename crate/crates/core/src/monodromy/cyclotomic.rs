//! Integer polynomial helpers for the finite-order test.
//!
//! A rational matrix has finite order iff its characteristic polynomial is a
//! product of cyclotomic polynomials `Φ_k` and `M^L = I` for `L` the lcm of
//! those `k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::RatMatrix;

/// Coefficients in ascending order; the leading coefficient is nonzero.
pub type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Exact division by a monic polynomial; `None` when the remainder is nonzero.
fn div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Poly> {
    debug_assert!(den.last().is_some_and(One::is_one));
    if num.len() < den.len() {
        return None;
    }
    let mut rem = num.to_vec();
    let dq = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dq];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dq].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(quot))
}

/// Euler's totient.
fn totient(mut k: u64) -> u64 {
    let mut result = k;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

/// `Φ_k`, via `x^k - 1 = prod_{d | k} Φ_d`.
pub fn cyclotomic(k: u64) -> Poly {
    let mut p: Poly = vec![BigInt::zero(); k as usize + 1];
    p[0] = -BigInt::one();
    p[k as usize] = BigInt::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = div_exact(&p, &cyclotomic(d)).expect("Φ_d divides x^k - 1");
        }
    }
    p
}

/// Indices `k` (with multiplicity) of a factorization `f = prod Φ_k`, or
/// `None` if `f` is not such a product. `f` must be monic.
pub fn cyclotomic_factors(f: &[BigInt]) -> Option<Vec<u64>> {
    let degree = f.len() as u64 - 1;
    let mut rest = trim(f.to_vec());
    let mut found = Vec::new();
    // φ(k) >= sqrt(k / 2), so φ(k) <= degree forces k <= 2 degree^2
    let bound = (2 * degree * degree).max(2);
    for k in 1..=bound {
        if totient(k) > degree {
            continue;
        }
        let phi_k = cyclotomic(k);
        while let Some(q) = div_exact(&rest, &phi_k) {
            rest = q;
            found.push(k);
        }
        if rest.len() == 1 {
            break;
        }
    }
    (rest.len() == 1 && rest[0].is_one()).then_some(found)
}

/// Integer coefficients of a rational polynomial, if it has them.
pub fn integral(p: &[BigRational]) -> Option<Poly> {
    p.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

/// `Some(reason)` when `m` certainly has infinite order.
pub fn infinite_order_reason(m: &RatMatrix) -> Option<String> {
    let charpoly = m.charpoly();
    let Some(f) = integral(&charpoly) else {
        return Some(format!(
            "characteristic polynomial {} is not integral",
            format_poly_rat(&charpoly)
        ));
    };
    let Some(ks) = cyclotomic_factors(&f) else {
        return Some(format!(
            "characteristic polynomial {} has a non-cyclotomic factor",
            format_poly(&f)
        ));
    };
    let l = ks.iter().fold(1u64, |acc, &k| acc.lcm(&k));
    let mut power = RatMatrix::identity(m.rows());
    for _ in 0..l {
        power = &power * m;
    }
    (!power.is_identity())
        .then(|| format!("eigenvalues are roots of unity but M^{l} != I, so M is not of finite order"))
}

fn format_terms(coeffs: Vec<String>) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        parts.push(match i {
            0 => c.clone(),
            1 => format!("({c})x"),
            _ => format!("({c})x^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn format_poly(p: &[BigInt]) -> String {
    format_terms(p.iter().map(ToString::to_string).collect())
}

fn format_poly_rat(p: &[BigRational]) -> String {
    format_terms(p.iter().map(ToString::to_string).collect())
}
