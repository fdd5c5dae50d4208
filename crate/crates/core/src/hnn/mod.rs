//! Ascending HNN extensions `G = <A, t | t a t^-1 = φ(a)>` of `A = Z^n`.
//!
//! Elements are kept in the reduced form `t^-i · a · t^j` with
//! `i > 0 && j > 0 ⟹ a ∉ φ(Z^n)`, which is unique by Britton's lemma. The
//! kernel `N` of the height map is the direct limit of `φ^-l(A)`; its
//! elements are [`NElement`]s.

mod subgroup;
mod word;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::gog::GraphOfGroups;
use crate::json;
use crate::lattice::{rat_inverse, IntMatrix, IntVector, RatMatrix};

pub use subgroup::{analyze_subgroup, lemma22_check, Lemma22Report, SubgroupSpec, MAX_ENUMERATED};
pub use word::{spell_vector, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AscHnn {
    phi: IntMatrix,
    phi_inv: RatMatrix,
}

impl AscHnn {
    pub fn new(phi: IntMatrix) -> Result<AscHnn> {
        if !phi.is_square() || phi.rows() == 0 {
            return Err(Error::RankMismatch {
                expected: phi.rows(),
                found: phi.cols(),
            });
        }
        let phi_inv = rat_inverse(&phi)?;
        Ok(AscHnn { phi, phi_inv })
    }

    /// The HNN extension presented by a one-vertex, one-loop graph whose
    /// `alpha` is unimodular.
    pub fn from_graph(g: &GraphOfGroups) -> Result<AscHnn> {
        let phi = g.as_ascending_hnn().ok_or_else(|| {
            Error::PreconditionViolated("expected one vertex and one loop with unimodular alpha".into())
        })?;
        AscHnn::new(phi)
    }

    pub fn rank(&self) -> usize {
        self.phi.rows()
    }

    pub fn phi(&self) -> &IntMatrix {
        &self.phi
    }

    pub fn det(&self) -> BigInt {
        self.phi.det()
    }

    pub fn is_strictly_ascending(&self) -> bool {
        self.det().abs() > BigInt::from(1)
    }

    pub fn to_graph(&self) -> GraphOfGroups {
        GraphOfGroups::ascending_hnn(self.phi.clone())
    }

    /// `φ^k(v)`.
    pub fn apply(&self, v: &[BigInt], k: u64) -> IntVector {
        let mut v = v.to_vec();
        for _ in 0..k {
            v = self.phi.mul_vec(&v);
        }
        v
    }

    /// `φ^-1(v)` when it is integral.
    pub fn preimage(&self, v: &[BigInt]) -> Option<IntVector> {
        let q: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        self.phi_inv
            .mul_vec(&q)
            .into_iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn in_image(&self, v: &[BigInt]) -> bool {
        self.preimage(v).is_some()
    }

    pub fn identity(&self) -> NormalForm {
        NormalForm {
            down: 0,
            base: vec![BigInt::zero(); self.rank()],
            up: 0,
        }
    }

    fn canonical(&self, mut down: u64, mut base: IntVector, mut up: u64) -> NormalForm {
        while down > 0 && up > 0 {
            match self.preimage(&base) {
                Some(b) => {
                    base = b;
                    down -= 1;
                    up -= 1;
                }
                None => break,
            }
        }
        NormalForm { down, base, up }
    }

    pub fn normalize(&self, w: &Word) -> NormalForm {
        let n = self.rank();
        let t = self.t_form();
        let t_inv = self.invert(&t);
        w.letters().iter().fold(self.identity(), |acc, l| match l {
            Letter::Stable(true) => self.multiply(&acc, &t),
            Letter::Stable(false) => self.multiply(&acc, &t_inv),
            Letter::Base(v) => {
                debug_assert_eq!(v.len(), n);
                self.multiply(&acc, &self.base_form(v.clone()))
            }
        })
    }

    pub fn t_form(&self) -> NormalForm {
        NormalForm {
            up: 1,
            ..self.identity()
        }
    }

    pub fn base_form(&self, a: IntVector) -> NormalForm {
        NormalForm {
            down: 0,
            base: a,
            up: 0,
        }
    }

    pub fn multiply(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        if x.up >= y.down {
            let shift = x.up - y.down;
            let base = add(&x.base, &self.apply(&y.base, shift));
            self.canonical(x.down, base, shift + y.up)
        } else {
            let shift = y.down - x.up;
            let base = add(&self.apply(&x.base, shift), &y.base);
            self.canonical(x.down + shift, base, y.up)
        }
    }

    pub fn invert(&self, x: &NormalForm) -> NormalForm {
        NormalForm {
            down: x.up,
            base: x.base.iter().map(|v| -v).collect(),
            up: x.down,
        }
    }

    /// Exponent sum of `t`.
    pub fn height(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| match l {
                Letter::Stable(true) => 1,
                Letter::Stable(false) => -1,
                Letter::Base(_) => 0,
            })
            .sum()
    }

    pub fn to_n_element(&self, w: &Word) -> Result<NElement> {
        self.nf_to_n_element(&self.normalize(w))
    }

    pub fn nf_to_n_element(&self, x: &NormalForm) -> Result<NElement> {
        if x.height() != 0 {
            return Err(Error::NotInKernel(x.height()));
        }
        Ok(self.n_canonical(x.down, x.base.clone()))
    }

    fn n_canonical(&self, level: u64, value: IntVector) -> NElement {
        let nf = self.canonical(level, value, level);
        NElement {
            level: nf.down,
            value: nf.base,
        }
    }

    pub fn n_zero(&self) -> NElement {
        NElement {
            level: 0,
            value: vec![BigInt::zero(); self.rank()],
        }
    }

    pub fn n_add(&self, x: &NElement, y: &NElement) -> NElement {
        let level = x.level.max(y.level);
        let value = add(
            &self.apply(&x.value, level - x.level),
            &self.apply(&y.value, level - y.level),
        );
        self.n_canonical(level, value)
    }

    pub fn n_neg(&self, x: &NElement) -> NElement {
        NElement {
            level: x.level,
            value: x.value.iter().map(|v| -v).collect(),
        }
    }

    /// `t^k x t^-k`.
    pub fn n_conjugate_by_t(&self, x: &NElement, k: i64) -> NElement {
        let k_abs = k.unsigned_abs();
        if k >= 0 {
            let drop = k_abs.min(x.level);
            let value = self.apply(&x.value, k_abs - drop);
            self.n_canonical(x.level - drop, value)
        } else {
            self.n_canonical(x.level + k_abs, x.value.clone())
        }
    }

    pub fn n_to_normal_form(&self, x: &NElement) -> NormalForm {
        NormalForm {
            down: x.level,
            base: x.value.clone(),
            up: x.level,
        }
    }

    /// `t^-l a t^l`.
    pub fn n_to_word(&self, x: &NElement) -> Word {
        let l = x.level as i64;
        Word::t_pow(-l)
            .concat(&Word::base(x.value.clone()))
            .concat(&Word::t_pow(l))
    }
}

fn add(x: &[BigInt], y: &[BigInt]) -> IntVector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// `t^-down · base · t^up`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub down: u64,
    pub base: IntVector,
    pub up: u64,
}

impl NormalForm {
    pub fn height(&self) -> i64 {
        self.up as i64 - self.down as i64
    }

    pub fn is_identity(&self) -> bool {
        self.down == 0 && self.up == 0 && self.base.iter().all(Zero::is_zero)
    }

    pub fn to_word(&self) -> Word {
        Word::t_pow(-(self.down as i64))
            .concat(&Word::base(self.base.clone()))
            .concat(&Word::t_pow(self.up as i64))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "i": self.down,
            "a": json::int_vec(&self.base),
            "j": self.up,
            "word": self.to_word().to_string(),
        })
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.base.iter().map(ToString::to_string).collect();
        write!(f, "({}, [{}], {})", self.down, a.join(","), self.up)
    }
}

/// `φ^-level(value)`, canonical when `level == 0` or `value ∉ φ(Z^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NElement {
    pub level: u64,
    pub value: IntVector,
}

impl NElement {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "level": self.level, "value": json::int_vec(&self.value) })
    }
}

impl fmt::Display for NElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.value.iter().map(ToString::to_string).collect();
        write!(f, "({}, [{}])", self.level, a.join(","))
    }
}

/// Reads `hnn rank=N phi=...` or a graph file describing an ascending loop.
impl FromStr for AscHnn {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<AscHnn, ParseError> {
        let g: GraphOfGroups = s.parse()?;
        AscHnn::from_graph(&g).map_err(|e| ParseError::new(0, e.to_string()))
    }
}
