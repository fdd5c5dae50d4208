//! Hermite and Smith normal forms over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Column Hermite normal form `h = m * u`.
///
/// The nonzero columns of `h` come first and are in column echelon form:
/// column `k` has its leading (topmost) nonzero entry in row `pivots[k]`,
/// pivot rows strictly increase, every pivot is positive and every entry to
/// the left of a pivot lies in `[0, pivot)`. The trailing `cols - rank`
/// columns are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero columns of `h`.
    pub fn basis(&self) -> IntMatrix {
        let cols: Vec<_> = (0..self.rank()).map(|j| self.h.col(j)).collect();
        IntMatrix::from_columns(self.h.rows(), &cols)
    }
}

pub fn hnf(m: &IntMatrix) -> Hermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, k)].is_zero() {
                h.swap_cols(k, j);
                u.swap_cols(k, j);
                continue;
            }
            let a = h[(i, k)].clone();
            let b = h[(i, j)].clone();
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            let nbg = -bg;
            // determinant x*ag + y*bg = 1, so the 2x2 step is unimodular
            h.combine_cols(k, j, [&e.x, &e.y, &nbg, &ag]);
            u.combine_cols(k, j, [&e.x, &e.y, &nbg, &ag]);
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            u.negate_col(k);
        }
        let pivot = h[(i, k)].clone();
        for j in 0..k {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(j, k, &nq);
                u.add_col_multiple(j, k, &nq);
            }
        }
        pivots.push(i);
        k += 1;
    }
    Hermite { h, u, pivots }
}

/// Smith normal form `d = u * m * v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// The nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn snf(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    d.add_row_multiple(i, t, &nq);
                    u.add_row_multiple(i, t, &nq);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    d.add_col_multiple(j, t, &nq);
                    v.add_col_multiple(j, t, &nq);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { d, u, v }
}
