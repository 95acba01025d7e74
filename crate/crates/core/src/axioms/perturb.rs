use serde_json::{json, Value};
use thiserror::Error;

use super::audit::{full_audit, Clause, Counterexample};
use crate::group::{Ball, Group, GroupError};
use crate::preorder_core::{PreorderEvaluator, Sign};
use crate::report::{int, ReportElement};

/// `inner` everywhere except at one element, where the value is replaced.
#[derive(Debug, Clone)]
pub struct Perturbed<'a, E, F: ?Sized> {
    inner: &'a F,
    at: E,
    value: Sign,
}

impl<'a, E, F: ?Sized> Perturbed<'a, E, F> {
    pub fn new(inner: &'a F, at: E, value: Sign) -> Self {
        Perturbed { inner, at, value }
    }
}

impl<E: PartialEq + Sync, F: PreorderEvaluator<E> + ?Sized> PreorderEvaluator<E> for Perturbed<'_, E, F> {
    fn sign(&self, g: &E) -> Sign {
        if *g == self.at {
            self.value
        } else {
            self.inner.sign(g)
        }
    }

    fn in_base(&self, g: &E) -> bool {
        self.inner.in_base(g)
    }

    fn in_domain(&self, g: &E) -> bool {
        self.inner.in_domain(g)
    }
}

/// `+` and `-` swap; `0` becomes `+`.
pub fn default_flip(s: Sign) -> Sign {
    match s {
        Sign::Positive => Sign::Negative,
        Sign::Negative => Sign::Positive,
        Sign::Zero => Sign::Positive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerturbError {
    #[error("cannot perturb at the identity")]
    Identity,
    #[error("element is not in the audited ball")]
    OutsideBall,
    #[error("new value equals the old value {0}")]
    Unchanged(Sign),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Falsification<E> {
    pub g: E,
    pub original: Sign,
    pub perturbed: Sign,
    pub radius: usize,
    /// First failing clause in audit order, `None` if the ball is too small to notice.
    pub clause: Option<Clause>,
    pub counterexample: Option<Counterexample<E>>,
}

impl<E: ReportElement> Falsification<E> {
    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g.to_json(),
            "original": self.original.symbol(),
            "perturbed": self.perturbed.symbol(),
            "radius": int(self.radius),
            "falsified": self.clause.is_some(),
            "failed_clause": self.clause.map(|c| c.id()),
            "counterexample": self.counterexample.as_ref().map(Counterexample::to_json),
        })
    }
}

/// Change `phi` at one ball element and report the first audit clause that breaks.
pub fn perturb_falsify<G, F>(
    group: &G,
    phi: &F,
    ball: &Ball<G::Elem>,
    g: &G::Elem,
    value: Option<Sign>,
    n_max: u32,
) -> Result<Falsification<G::Elem>, PerturbError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    if *g == group.identity() {
        return Err(PerturbError::Identity);
    }
    if !ball.contains(g) {
        return Err(PerturbError::OutsideBall);
    }
    let original = phi.sign(g);
    let new = value.unwrap_or_else(|| default_flip(original));
    if new == original {
        return Err(PerturbError::Unchanged(original));
    }
    let perturbed = Perturbed::new(phi, g.clone(), new);
    let report = full_audit(group, &perturbed, ball, n_max)?;
    let failed = report.first_failure();
    Ok(Falsification {
        g: g.clone(),
        original,
        perturbed: new,
        radius: ball.radius,
        clause: failed.map(|c| c.clause),
        counterexample: failed.and_then(|c| c.counterexample.clone()),
    })
}
