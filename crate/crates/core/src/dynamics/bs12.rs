//! `BS(1,2) = ⟨a, t | t a t^-1 = a^2⟩` as affine maps `x ↦ 2^k x + b` of the dyadic line.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use super::{Dyadic, OrderedAction};
use crate::group::{Group, GroupError};
use crate::preorder_core::{PreorderEvaluator, Sign};
use crate::report::{int, ReportElement};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    pub k: i64,
    pub b: Dyadic,
}

impl AffineMap {
    pub fn new(k: i64, b: Dyadic) -> Self {
        AffineMap { k, b }
    }

    pub fn identity() -> Self {
        AffineMap::new(0, Dyadic::zero())
    }

    /// `x ↦ x + 1`
    pub fn a() -> Self {
        AffineMap::new(0, Dyadic::from_int(1))
    }

    /// `x ↦ 2x`
    pub fn t() -> Self {
        AffineMap::new(1, Dyadic::zero())
    }

    /// `self ∘ other`: `(k1, b1)(k2, b2) = (k1 + k2, 2^k1 b2 + b1)`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap::new(self.k + other.k, &other.b.mul_pow2(self.k) + &self.b)
    }

    pub fn inverse(&self) -> AffineMap {
        AffineMap::new(-self.k, -&self.b.mul_pow2(-self.k))
    }

    pub fn apply(&self, x: &Dyadic) -> Dyadic {
        &x.mul_pow2(self.k) + &self.b
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.b)
    }
}

impl ReportElement for AffineMap {
    fn to_json(&self) -> Value {
        json!({ "k": int(self.k), "b": self.b.to_json() })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Bs12;

impl Bs12 {
    /// Labels for the letters `a, a^-1, t, t^-1`.
    pub const LETTER_NAMES: [&'static str; 4] = ["a", "a^-1", "t", "t^-1"];
}

impl Group for Bs12 {
    type Elem = AffineMap;

    fn identity(&self) -> AffineMap {
        AffineMap::identity()
    }

    fn generators(&self) -> Vec<AffineMap> {
        vec![AffineMap::a(), AffineMap::t()]
    }

    fn multiply(&self, a: &AffineMap, b: &AffineMap) -> Result<AffineMap, GroupError> {
        Ok(a.compose(b))
    }

    fn invert(&self, a: &AffineMap) -> Result<AffineMap, GroupError> {
        Ok(a.inverse())
    }
}

/// The natural action on the dyadic line.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bs12Action;

impl OrderedAction for Bs12Action {
    type Elem = AffineMap;
    type Point = Dyadic;

    fn identity(&self) -> AffineMap {
        AffineMap::identity()
    }

    fn compose(&self, g: &AffineMap, h: &AffineMap) -> Result<AffineMap, GroupError> {
        Ok(g.compose(h))
    }

    fn apply(&self, g: &AffineMap, x: &Dyadic) -> Result<Dyadic, GroupError> {
        Ok(g.apply(x))
    }

    fn compare(&self, x: &Dyadic, y: &Dyadic) -> Result<Ordering, GroupError> {
        Ok(x.cmp(y))
    }
}

pub fn bs12_affine_action() -> Bs12Action {
    Bs12Action
}

/// `g ⪯ h ⟺ g(0) <= h(0)`: sign is `sgn(g(0))`, zero set is the stabilizer `{(k, 0)}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvalAtZero;

impl PreorderEvaluator<AffineMap> for EvalAtZero {
    fn sign(&self, g: &AffineMap) -> Sign {
        Sign::from_i8(g.b.signum())
    }

    fn in_base(&self, g: &AffineMap) -> bool {
        g.b.is_zero()
    }
}

pub fn bs12_eval_at_zero_preorder() -> EvalAtZero {
    EvalAtZero
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        Dyadic::parse(s).unwrap()
    }

    #[test]
    fn composition_matches_maps() {
        let (a, t) = (AffineMap::a(), AffineMap::t());
        assert_eq!(t.compose(&a), AffineMap::new(1, d("2")));
        assert_eq!(a.compose(&t), AffineMap::new(1, d("1")));
        // t a t^-1 = a^2
        assert_eq!(t.compose(&a).compose(&t.inverse()), a.compose(&a));
        for x in ["0", "3/4", "-5"] {
            assert_eq!(t.compose(&a).apply(&d(x)), t.apply(&a.apply(&d(x))));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let g = AffineMap::new(-3, d("1/4"));
        assert_eq!(g.compose(&g.inverse()), AffineMap::identity());
        assert_eq!(g.inverse().compose(&g), AffineMap::identity());
    }

    #[test]
    fn evaluation_at_zero() {
        let phi = EvalAtZero;
        assert_eq!(phi.sign(&AffineMap::a()), Sign::Positive);
        assert_eq!(phi.sign(&AffineMap::t()), Sign::Zero);
        assert!(phi.in_base(&AffineMap::t()));
        assert_eq!(phi.sign(&AffineMap::new(-3, d("1/4"))), Sign::Positive);
    }
}
