use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::lattice::IntVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `t` (`true`) or `t^-1` (`false`).
    Stable(bool),
    /// An element of the base group `A = Z^n`.
    Base(IntVector),
}

/// A word in `t^{±1}` and base-group syllables. Adjacent base syllables are
/// merged and zero syllables dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn t() -> Word {
        Word::from_letters([Letter::Stable(true)])
    }

    pub fn t_pow(k: i64) -> Word {
        Word::from_letters((0..k.unsigned_abs()).map(|_| Letter::Stable(k > 0)))
    }

    pub fn base(v: IntVector) -> Word {
        Word::from_letters([Letter::Base(v)])
    }

    /// `a_i^k` with 1-based `i`.
    pub fn generator(n: usize, i: usize, k: i64) -> Word {
        let mut v = vec![BigInt::zero(); n];
        v[i - 1] = BigInt::from(k);
        Word::base(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        match letter {
            Letter::Base(v) => {
                if let Some(Letter::Base(last)) = self.letters.last_mut() {
                    for (x, y) in last.iter_mut().zip(&v) {
                        *x += y;
                    }
                    if last.iter().all(Zero::is_zero) {
                        self.letters.pop();
                    }
                } else if !v.iter().all(Zero::is_zero) {
                    self.letters.push(Letter::Base(v));
                }
            }
            stable => self.letters.push(stable),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.clone());
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|l| match l {
            Letter::Stable(up) => Letter::Stable(!up),
            Letter::Base(v) => Letter::Base(v.iter().map(|x| -x).collect()),
        }))
    }

    /// Inserts `other` before position `at` (letter index).
    pub fn insert(&self, at: usize, other: &Word) -> Word {
        let (head, tail) = self.letters.split_at(at.min(self.letters.len()));
        Word::from_letters(head.iter().chain(&other.letters).chain(tail).cloned())
    }

    /// Parses whitespace-separated tokens such as `a1^3 t^-2 a2`. For rank
    /// at most 3 the letters `a`, `b`, `c` stand for `a1`, `a2`, `a3`; `1`
    /// is the identity.
    pub fn parse(text: &str, rank: usize) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((name, e)) => {
                    let e = e
                        .parse::<BigInt>()
                        .map_err(|_| ParseError::new(1, format!("bad exponent in `{tok}`")))?;
                    (name, e)
                }
                None => (tok, BigInt::one()),
            };
            if name == "t" {
                let k: i64 = i64::try_from(&exp)
                    .ok()
                    .filter(|k| k.unsigned_abs() <= 1 << 20)
                    .ok_or_else(|| ParseError::new(1, format!("t-exponent too large in `{tok}`")))?;
                for l in Word::t_pow(k).letters {
                    w.push(l);
                }
                continue;
            }
            let index = match name {
                "a" => Some(1),
                "b" => Some(2),
                "c" => Some(3),
                _ => name.strip_prefix('a').and_then(|i| i.parse::<usize>().ok()),
            }
            .filter(|&i| i >= 1 && i <= rank)
            .ok_or_else(|| ParseError::new(1, format!("unknown letter `{name}` for rank {rank}")))?;
            let mut v = vec![BigInt::zero(); rank];
            v[index - 1] = exp;
            w.push(Letter::Base(v));
        }
        Ok(w)
    }
}

/// Spells a base-group vector as `a1^x a2^y ...` (`a^x` in rank 1).
pub fn spell_vector(v: &[BigInt]) -> Vec<String> {
    let single = v.len() == 1;
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            let name = if single { "a".to_string() } else { format!("a{}", i + 1) };
            if x.is_one() {
                name
            } else {
                format!("{name}^{x}")
            }
        })
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            match &self.letters[i] {
                Letter::Base(v) => {
                    parts.extend(spell_vector(v));
                    i += 1;
                }
                Letter::Stable(up) => {
                    let run = self.letters[i..]
                        .iter()
                        .take_while(|l| **l == Letter::Stable(*up))
                        .count();
                    let k = if *up { run as i64 } else { -(run as i64) };
                    parts.push(if k == 1 { "t".into() } else { format!("t^{k}") });
                    i += run;
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
