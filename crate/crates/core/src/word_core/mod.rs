//! Rational-series presentations, collected normal forms and Cayley balls.
//!
//! A presentation on generators `x_1..x_m` lists, for every `i < j`, the
//! conjugates `x_j x_i x_j^-1` and `x_j^-1 x_i x_j` as words in `x_1..x_{j-1}`.
//! The subgroups `G_l = <x_1..x_l>` then form a subnormal series with
//! infinite cyclic factors, and every element has a unique normal form
//! `x_1^e_1 ... x_m^e_m`.

mod collect;
mod consistency;
mod presentation;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::report::ReportElement;

pub use consistency::{consistency_audit, ConsistencyFailure, ConsistencyReport, FailureKind};
pub use presentation::{parse_presentation, Direction, ParseError, ParseErrorKind, Presentation};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// One syllable `x_gen^exp` of a word; `gen` is zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: BigInt,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Word {
            letters: pairs
                .iter()
                .filter(|(_, e)| *e != 0)
                .map(|&(gen, e)| Letter {
                    gen,
                    exp: BigInt::from(e),
                })
                .collect(),
        }
    }

    pub fn push(&mut self, gen: usize, exp: BigInt) {
        if !exp.is_zero() {
            self.letters.push(Letter { gen, exp });
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    exp: -&l.exp,
                })
                .collect(),
        }
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Parse `k^e` tokens (one-based `k`, nonzero `e`). A bare `k` means `k^1`;
    /// the empty string or `id` is the identity.
    pub fn parse(text: &str) -> Result<Word, String> {
        let mut w = Word::new();
        for tok in text.split_whitespace() {
            if tok == "id" {
                continue;
            }
            let (g, e) = match tok.split_once('^') {
                Some((g, e)) => (g, e),
                None => (tok, "1"),
            };
            let gen: usize = g
                .parse()
                .map_err(|_| format!("bad generator index `{g}` in `{tok}`"))?;
            if gen == 0 {
                return Err(format!("generator indices start at 1, got `{tok}`"));
            }
            let exp: BigInt = e
                .parse()
                .map_err(|_| format!("bad exponent `{e}` in `{tok}`"))?;
            if exp.is_zero() {
                return Err(format!("zero exponent in `{tok}`"));
            }
            w.push(gen - 1, exp);
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        for (n, l) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}^{}", l.gen + 1, l.exp)?;
        }
        Ok(())
    }
}

/// Exponents of the normal form `x_1^e_1 ... x_m^e_m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<BigInt>);

impl ExponentVector {
    pub fn identity(m: usize) -> Self {
        ExponentVector(vec![BigInt::zero(); m])
    }

    pub fn unit(m: usize, gen: usize) -> Self {
        let mut v = Self::identity(m);
        v.0[gen] = BigInt::from(1);
        v
    }

    pub fn from_i64s(e: &[i64]) -> Self {
        ExponentVector(e.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Zero-based index of the highest nonzero exponent.
    pub fn top(&self) -> Option<usize> {
        self.0.iter().rposition(|e| !e.is_zero())
    }

    /// The normal-form word of this element.
    pub fn to_word(&self) -> Word {
        let mut w = Word::new();
        for (gen, e) in self.0.iter().enumerate() {
            w.push(gen, e.clone());
        }
        w
    }

    /// Word length of the normal form (sum of absolute exponents).
    pub fn syllable_weight(&self) -> BigInt {
        self.0.iter().map(|e| e.abs()).sum()
    }

    /// Parse `(1,-2,0)`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| format!("expected `(e1,...,em)`, got `{t}`"))?;
        let mut out = Vec::new();
        for part in inner.split(',') {
            let p = part.trim();
            if p.is_empty() {
                continue;
            }
            out.push(
                p.parse::<BigInt>()
                    .map_err(|_| format!("bad exponent `{p}`"))?,
            );
        }
        Ok(ExponentVector(out))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, e) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl ReportElement for ExponentVector {
    fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|e| Value::String(e.to_string())).collect())
    }
}

/// `g ∈ G_l`, i.e. every exponent above position `l` vanishes.
pub fn level_membership(g: &ExponentVector, level: usize) -> bool {
    g.0.iter().skip(level).all(Zero::is_zero)
}

/// Convenience wrapper over [`crate::group::ball`].
pub fn ball(
    p: &Presentation,
    radius: usize,
) -> Result<crate::group::Ball<ExponentVector>, crate::group::GroupError> {
    crate::group::ball(p, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_membership_examples() {
        let v = ExponentVector::from_i64s(&[3, 0, 0]);
        assert!(level_membership(&v, 1));
        assert!(!level_membership(&ExponentVector::from_i64s(&[0, 1, 0]), 1));
        for l in 0..=3 {
            assert_eq!(level_membership(&v, l), l >= 1);
        }
        assert!(level_membership(&ExponentVector::from_i64s(&[4, -2, 9]), 3));
    }

    #[test]
    fn word_parse_and_display() {
        let w = Word::parse("1^-1 2^3 3").unwrap();
        assert_eq!(w, Word::from_pairs(&[(0, -1), (1, 3), (2, 1)]));
        assert_eq!(w.to_string(), "1^-1 2^3 3^1");
        assert!(Word::parse("0^1").is_err());
        assert!(Word::parse("1^0").is_err());
        assert!(Word::parse("x^1").is_err());
        assert_eq!(Word::parse("").unwrap(), Word::new());
        assert_eq!(Word::parse("id").unwrap(), Word::new());
    }

    #[test]
    fn vector_parse_roundtrip() {
        let v = ExponentVector::parse("(1, -2,0)").unwrap();
        assert_eq!(v, ExponentVector::from_i64s(&[1, -2, 0]));
        assert_eq!(v.to_string(), "(1,-2,0)");
        assert_eq!(v.top(), Some(1));
        assert!(ExponentVector::parse("1,2").is_err());
    }
}
