//! JSON helpers: integers serialize as JSON numbers when they fit in `i64`
//! and as decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::lattice::{IntMatrix, RatMatrix};

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn int_vec(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| int_vec(&m.row(i))).collect())
}

/// Rational entries as `"p/q"` strings (integers stay numbers).
pub fn rat_matrix(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| {
                            let x = &m[(i, j)];
                            if x.is_integer() {
                                int(&x.to_integer())
                            } else {
                                Value::from(x.to_string())
                            }
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}
