//! Left-preorders as sign functions `G -> {+1, 0, -1}`.
//!
//! A left-preorder relative to a subgroup `C` is recorded by its sign
//! function: `+1` on the positive cone, `-1` on its inverse, `0` on `C`.
//! Cosets compare through `a^-1 b`.

mod cone;
mod jump;
mod mu_rho;
mod table;

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::group::{Group, GroupError};
use crate::word_core::ExponentVector;

pub use cone::{parse_cone_literal, ConeLiteral, SignVectorCone};
pub use jump::{induced_jump_preorder, jump_morphism, InducedJumpPreorder, JumpMorphism};
pub use mu_rho::{mu, restrict, rho, Mu, Restriction, UpperPart};
pub use table::TableEvaluator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreorderError {
    #[error("element {g} lies outside the evaluator's domain G_{level}")]
    OutsideDomain { g: String, level: usize },
    #[error("level mismatch: need {lower} < {split} < {upper}")]
    LevelMismatch {
        lower: usize,
        split: usize,
        upper: usize,
    },
    #[error("base level {level} must be below the generator count {m}")]
    BadBaseLevel { level: usize, m: usize },
    #[error("sign vector has {got} entries, expected {expected}")]
    BadSignCount { got: usize, expected: usize },
    #[error("jump index {index} outside {lower}..{upper}")]
    BadJump {
        index: usize,
        lower: usize,
        upper: usize,
    },
    #[error("bad cone literal: {0}")]
    Literal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(x: i8) -> Sign {
        match x.signum() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    /// `+`, `-` or `0`.
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s.trim() {
            "+" | "+1" | "1" => Some(Sign::Positive),
            "-" | "-1" => Some(Sign::Negative),
            "0" => Some(Sign::Zero),
            _ => None,
        }
    }

    pub const ALL: [Sign; 3] = [Sign::Positive, Sign::Zero, Sign::Negative];
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A sign function on group elements.
///
/// `in_base` declares the subgroup the preorder is relative to; audits check
/// that it coincides with the zero set. `in_domain` lets partial evaluators
/// (tables over a finite ball) opt out of elements they cannot evaluate.
pub trait PreorderEvaluator<E>: Sync {
    fn sign(&self, g: &E) -> Sign;

    fn in_base(&self, g: &E) -> bool;

    fn in_domain(&self, _g: &E) -> bool {
        true
    }
}

impl<E, T: PreorderEvaluator<E> + ?Sized> PreorderEvaluator<E> for &T {
    fn sign(&self, g: &E) -> Sign {
        (**self).sign(g)
    }
    fn in_base(&self, g: &E) -> bool {
        (**self).in_base(g)
    }
    fn in_domain(&self, g: &E) -> bool {
        (**self).in_domain(g)
    }
}

impl<E, T: PreorderEvaluator<E> + ?Sized + Send> PreorderEvaluator<E> for Box<T> {
    fn sign(&self, g: &E) -> Sign {
        (**self).sign(g)
    }
    fn in_base(&self, g: &E) -> bool {
        (**self).in_base(g)
    }
    fn in_domain(&self, g: &E) -> bool {
        (**self).in_domain(g)
    }
}

/// Evaluators on a presentation whose domain is `G_top` and whose base is `G_base`.
pub trait LevelEvaluator: PreorderEvaluator<ExponentVector> {
    fn base_level(&self) -> usize;
    fn top_level(&self) -> usize;
}

impl<T: LevelEvaluator + ?Sized> LevelEvaluator for &T {
    fn base_level(&self) -> usize {
        (**self).base_level()
    }
    fn top_level(&self) -> usize {
        (**self).top_level()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CosetOrder {
    Precedes,
    SameCoset,
    Succeeds,
}

impl CosetOrder {
    pub fn from_sign(s: Sign) -> CosetOrder {
        match s {
            Sign::Positive => CosetOrder::Precedes,
            Sign::Zero => CosetOrder::SameCoset,
            Sign::Negative => CosetOrder::Succeeds,
        }
    }

    pub fn as_ordering(self) -> std::cmp::Ordering {
        match self {
            CosetOrder::Precedes => std::cmp::Ordering::Less,
            CosetOrder::SameCoset => std::cmp::Ordering::Equal,
            CosetOrder::Succeeds => std::cmp::Ordering::Greater,
        }
    }
}

/// Compare `aC` with `bC` through the sign of `a^-1 b`.
pub fn coset_compare<G, F>(
    group: &G,
    phi: &F,
    a: &G::Elem,
    b: &G::Elem,
) -> Result<CosetOrder, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let ai = group.invert(a)?;
    let d = group.multiply(&ai, b)?;
    Ok(CosetOrder::from_sign(phi.sign(&d)))
}

/// Sign of the element through a cone literal; for a cone this is exactly
/// [`SignVectorCone::evaluate`].
pub fn cone_evaluate(c: &SignVectorCone, g: &ExponentVector) -> Sign {
    c.evaluate(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_algebra() {
        for s in Sign::ALL {
            assert_eq!(-(-s), s);
            assert_eq!(Sign::from_i8(s.as_i8()), s);
            assert_eq!(Sign::parse(s.symbol()), Some(s));
            assert_eq!(s * Sign::Positive, s);
            assert_eq!(s * Sign::Zero, Sign::Zero);
        }
        assert_eq!(Sign::of(&BigInt::from(-7)), Sign::Negative);
        assert_eq!(Sign::parse("x"), None);
    }
}
