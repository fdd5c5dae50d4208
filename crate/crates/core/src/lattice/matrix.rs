//! Dense exact matrices over Z and Q.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};

/// Integer column vector.
pub type IntVector = Vec<BigInt>;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry grid must be rectangular");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::scalar(n, 1)
    }

    pub fn scalar(n: usize, k: i64) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::from(k);
        }
        m
    }

    /// Builds a matrix from row slices. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix::new(self.rows, self.cols, self.data.iter().map(|x| x * k).collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        IntMatrix::from_columns(self.rows, &cols)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        )
    }

    /// Entrywise reduction into `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> IntMatrix {
        IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| x.mod_floor(modulus)).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces columns `a`, `b` by `(x*a + y*b, z*a + w*b)`.
    pub(crate) fn combine_cols(&mut self, a: usize, b: usize, coeffs: [&BigInt; 4]) {
        let [x, y, z, w] = coeffs;
        for i in 0..self.rows {
            let ca = self[(i, a)].clone();
            let cb = self[(i, b)].clone();
            self[(i, a)] = x * &ca + y * &cb;
            self[(i, b)] = z * &ca + w * &cb;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_literal(f, self.rows, self.cols, |i, j| self[(i, j)].to_string())
    }
}

fn write_literal(
    f: &mut fmt::Formatter<'_>,
    rows: usize,
    cols: usize,
    entry: impl Fn(usize, usize) -> String,
) -> fmt::Result {
    write!(f, "[")?;
    for i in 0..rows {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for j in 0..cols {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", entry(i, j))?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

impl FromStr for IntMatrix {
    type Err = ParseError;

    /// Parses `[[a,b],[c,d]]`. Whitespace is ignored; entries are integers.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |m: &str| ParseError::new(0, format!("bad matrix literal `{s}`: {m}"));
        let inner = compact
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(|| err("expected `[[...]]`"))?;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for row in inner.split("],[") {
            if row.contains('[') || row.contains(']') {
                return Err(err("unbalanced brackets"));
            }
            let entries = row
                .split(',')
                .map(|t| t.parse::<BigInt>().map_err(|_| err(&format!("bad integer `{t}`"))))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            rows.push(entries);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(err("rows have different lengths"));
        }
        let n = rows.len();
        Ok(IntMatrix::new(n, cols, rows.into_iter().flatten().collect()))
    }
}

/// Dense rational matrix with entries kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry grid must be rectangular");
        RatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    /// `(numerator / denominator) * m`.
    pub fn from_scaled(m: &IntMatrix, numerator: i64, denominator: i64) -> Self {
        let k = BigRational::new(numerator.into(), denominator.into());
        let mut r = m.to_rat();
        for x in r.data.iter_mut() {
            *x = &*x * &k;
        }
        r
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Least common multiple of the entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `Some` if every entry is an integer.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(IntMatrix::new(
                self.rows,
                self.cols,
                self.data.iter().map(|x| x.to_integer()).collect(),
            ))
        } else {
            None
        }
    }

    /// Returns `d` and the integer matrix `d * self`, `d` the common denominator.
    pub fn clear_denominators(&self) -> (BigInt, IntMatrix) {
        let d = self.common_denominator();
        let dq = BigRational::from_integer(d.clone());
        let m = IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| (x * &dq).to_integer()).collect(),
        );
        (d, m)
    }

    /// Gauss-Jordan inverse over Q.
    pub fn inverse(&self) -> Result<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].recip();
            a.scale_row(c, &piv);
            inv.scale_row(c, &piv);
            for r in 0..n {
                if r != c && !a[(r, c)].is_zero() {
                    let k = -a[(r, c)].clone();
                    a.add_row_multiple(r, c, &k);
                    inv.add_row_multiple(r, c, &k);
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            det *= a[(c, c)].clone();
            let piv = a[(c, c)].recip();
            for r in c + 1..n {
                if !a[(r, c)].is_zero() {
                    let k = -(&a[(r, c)] * &piv);
                    a.add_row_multiple(r, c, &k);
                }
            }
        }
        det
    }

    /// Coefficients `[c_0, ..., c_n]` (ascending, monic) of `det(xI - self)`,
    /// by the Faddeev-LeVerrier recurrence.
    pub fn charpoly(&self) -> Vec<BigRational> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = RatMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{n-k+1} I
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += coeffs[n - k + 1].clone();
            }
            m = next;
            let am = self * &m;
            coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
        }
        coeffs
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, k: &BigRational) {
        for j in 0..self.cols {
            let v = &self[(i, j)] * k;
            self[(i, j)] = v;
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigRational) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_literal(f, self.rows, self.cols, |i, j| self[(i, j)].to_string())
    }
}

/// Exact inverse of an integer matrix over Q.
pub fn rat_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    m.to_rat().inverse()
}
