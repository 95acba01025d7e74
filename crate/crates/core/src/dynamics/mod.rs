//! Order-preserving actions and crossings.
//!
//! A crossing is a pair of maps `α, β` and points `u < w < v` where `β`
//! pushes `u` toward `v` and `α` pulls `v` toward `u`, both staying inside
//! `(u, v)`, yet each eventually jumps past `w`. Conradian preorders are
//! exactly those whose coset action has none.

mod bs12;
mod crossing;
mod dyadic;

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use thiserror::Error;

use crate::group::{Group, GroupError};
use crate::preorder_core::{coset_compare, PreorderEvaluator};
use crate::report::ReportElement;

pub use bs12::{bs12_affine_action, bs12_eval_at_zero_preorder, AffineMap, Bs12, Bs12Action, EvalAtZero};
pub use crossing::{
    crossing_from_violation, crossing_search, verify_crossing, word_elements, CrossingWitness, SearchConfig,
    SearchOutcome, Verification,
};
pub use dyadic::{dyadic_points, Dyadic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("n_check_bound {bound} is below max(N, M) = {needed}")]
    BadBound { bound: u64, needed: u64 },
    #[error("bounds must be at least {min}")]
    BoundTooSmall { min: u64 },
    #[error("not a conradian violation: {0}")]
    NotAViolation(String),
    #[error("constructed witness failed condition {condition}")]
    VerificationFailed { condition: u8, n: Option<u64> },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A group acting on a totally ordered set by order-preserving bijections.
pub trait OrderedAction: Sync {
    type Elem: Clone + Ord + Debug + Send + Sync + ReportElement;
    type Point: Clone + Debug + Send + Sync + ReportElement;

    fn identity(&self) -> Self::Elem;

    /// `g ∘ h`, so `apply(compose(g, h), x) = apply(g, apply(h, x))`.
    fn compose(&self, g: &Self::Elem, h: &Self::Elem) -> Result<Self::Elem, GroupError>;

    fn apply(&self, g: &Self::Elem, x: &Self::Point) -> Result<Self::Point, GroupError>;

    fn compare(&self, x: &Self::Point, y: &Self::Point) -> Result<Ordering, GroupError>;
}

/// Left multiplication on `G/C`, cosets named by representatives and
/// ordered through the preorder.
pub struct CosetAction<'a, G, F: ?Sized> {
    group: &'a G,
    phi: &'a F,
}

impl<'a, G, F: ?Sized> CosetAction<'a, G, F> {
    pub fn new(group: &'a G, phi: &'a F) -> Self {
        CosetAction { group, phi }
    }
}

impl<G, F> OrderedAction for CosetAction<'_, G, F>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    type Elem = G::Elem;
    type Point = G::Elem;

    fn identity(&self) -> G::Elem {
        self.group.identity()
    }

    fn compose(&self, g: &G::Elem, h: &G::Elem) -> Result<G::Elem, GroupError> {
        self.group.multiply(g, h)
    }

    fn apply(&self, g: &G::Elem, x: &G::Elem) -> Result<G::Elem, GroupError> {
        self.group.multiply(g, x)
    }

    fn compare(&self, x: &G::Elem, y: &G::Elem) -> Result<Ordering, GroupError> {
        Ok(coset_compare(self.group, self.phi, x, y)?.as_ordering())
    }
}

/// `ℤ` acting on itself by translation.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerTranslation;

impl OrderedAction for IntegerTranslation {
    type Elem = BigInt;
    type Point = BigInt;

    fn identity(&self) -> BigInt {
        BigInt::from(0)
    }

    fn compose(&self, g: &BigInt, h: &BigInt) -> Result<BigInt, GroupError> {
        Ok(g + h)
    }

    fn apply(&self, g: &BigInt, x: &BigInt) -> Result<BigInt, GroupError> {
        Ok(g + x)
    }

    fn compare(&self, x: &BigInt, y: &BigInt) -> Result<Ordering, GroupError> {
        Ok(x.cmp(y))
    }
}
