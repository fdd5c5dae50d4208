use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use super::{AscHnn, NElement, NormalForm, Word};
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{IntVector, Lattice};

/// Hard limit on distinct elements visited by [`analyze_subgroup`].
pub const MAX_ENUMERATED: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub generators: Vec<Word>,
    pub heights: Vec<i64>,
    /// The height image is `m Z`.
    pub m: u64,
    /// A height-one element built from at most two generators.
    pub t_h: Option<Word>,
    /// Spanned by the level-0 values of enumerated height-0 elements; a
    /// lower bound for `A ∩ K`.
    pub base_lower_bound: Lattice,
    /// Every enumerated height-0 element, in discovery order.
    pub kernel_elements: Vec<NElement>,
    pub budget: usize,
    pub enumerated: usize,
    pub truncated: bool,
}

impl SubgroupSpec {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "heights": self.heights,
            "m": self.m,
            "t_h": self.t_h.as_ref().map(ToString::to_string),
            "base_lower_bound": self.base_lower_bound.generators().iter().map(|v| json::int_vec(v)).collect::<Vec<_>>(),
            "budget": self.budget,
            "enumerated": self.enumerated,
            "truncated": self.truncated,
        })
    }
}

fn t_h_candidate(g: &AscHnn, gens: &[Word]) -> Option<Word> {
    let signed: Vec<Word> = gens.iter().flat_map(|w| [w.clone(), w.inverse()]).collect();
    if let Some(w) = signed.iter().find(|w| g.height(w) == 1) {
        return Some(w.clone());
    }
    signed
        .iter()
        .flat_map(|x| signed.iter().map(move |y| x.concat(y)))
        .find(|w| g.height(w) == 1)
}

/// Height image, a candidate `t_H` and a lower bound for `A ∩ K`, from all
/// products of at most `budget` generators and inverses.
pub fn analyze_subgroup(g: &AscHnn, gens: &[Word], budget: usize) -> SubgroupSpec {
    let heights: Vec<i64> = gens.iter().map(|w| g.height(w)).collect();
    let m = heights.iter().fold(0i64, |acc, h| acc.gcd(h)).unsigned_abs();
    let t_h = if m == 1 { t_h_candidate(g, gens) } else { None };

    let steps: Vec<NormalForm> = gens
        .iter()
        .flat_map(|w| {
            let x = g.normalize(w);
            [g.invert(&x), x]
        })
        .rev()
        .collect();
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let identity = g.identity();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    let mut level_zero: Vec<IntVector> = Vec::new();
    let mut kernel_elements = vec![g.n_zero()];
    let mut truncated = false;
    'layers: for _ in 0..budget {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &steps {
                let y = g.multiply(x, s);
                if seen.contains(&y) {
                    continue;
                }
                if seen.len() >= MAX_ENUMERATED {
                    truncated = true;
                    break 'layers;
                }
                if y.height() == 0 {
                    let e = g.nf_to_n_element(&y).expect("height zero");
                    if e.level == 0 {
                        level_zero.push(e.value.clone());
                    }
                    kernel_elements.push(e);
                }
                seen.insert(y.clone());
                next.push(y);
            }
        }
        frontier = next;
    }
    SubgroupSpec {
        generators: gens.to_vec(),
        heights,
        m,
        t_h,
        base_lower_bound: Lattice::from_vectors(g.rank(), &level_zero),
        kernel_elements,
        budget,
        enumerated: seen.len(),
        truncated,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma22Report {
    pub samples: usize,
    pub passed: bool,
    pub counterexample: Option<IntVector>,
}

/// Checks `t_H a t_H^-1 = φ(a)` on random `a` from the `A ∩ K` lower bound.
pub fn lemma22_check<R: Rng>(g: &AscHnn, spec: &SubgroupSpec, samples: usize, rng: &mut R) -> Result<Lemma22Report> {
    let t_h = match (&spec.t_h, spec.m) {
        (Some(t), 1) => g.normalize(t),
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "the t_H conjugation check needs height image Z and a t_H (m = {})",
                spec.m
            )))
        }
    };
    let t_h_inv = g.invert(&t_h);
    let basis = spec.base_lower_bound.generators();
    for _ in 0..samples {
        let mut a = vec![BigInt::zero(); g.rank()];
        for b in &basis {
            let c = BigInt::from(rng.random_range(-9i64..=9));
            for (x, y) in a.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        let lhs = g.multiply(&g.multiply(&t_h, &g.base_form(a.clone())), &t_h_inv);
        if lhs != g.base_form(g.apply(&a, 1)) {
            return Ok(Lemma22Report {
                samples,
                passed: false,
                counterexample: Some(a),
            });
        }
    }
    Ok(Lemma22Report {
        samples,
        passed: true,
        counterexample: None,
    })
}
