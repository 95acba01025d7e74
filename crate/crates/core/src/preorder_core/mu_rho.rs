//! Gluing and splitting preorders along an intermediate level.
//!
//! For `G_l < G_k < G`, a preorder on `G_k` relative to `G_l` and a preorder
//! on `G` relative to `G_k` glue to a preorder on `G` relative to `G_l` whose
//! positive cone is the disjoint union of the two cones (`mu`). Conversely a
//! preorder with `G_k` convex splits into its restriction to `G_k` and the
//! part above `G_k` (`rho`).

use super::{LevelEvaluator, PreorderError, PreorderEvaluator, Sign};
use crate::word_core::{level_membership, ExponentVector};

#[derive(Debug, Clone)]
pub struct Mu<A, B> {
    lower: A,
    upper: B,
}

impl<A, B> Mu<A, B> {
    pub fn parts(&self) -> (&A, &B) {
        (&self.lower, &self.upper)
    }
}

impl<A: LevelEvaluator, B: LevelEvaluator> PreorderEvaluator<ExponentVector> for Mu<A, B> {
    fn sign(&self, g: &ExponentVector) -> Sign {
        match self.upper.sign(g) {
            Sign::Zero => self.lower.sign(g),
            s => s,
        }
    }

    fn in_base(&self, g: &ExponentVector) -> bool {
        self.lower.in_base(g)
    }

    fn in_domain(&self, g: &ExponentVector) -> bool {
        self.upper.in_domain(g) && (self.upper.sign(g) != Sign::Zero || self.lower.in_domain(g))
    }
}

impl<A: LevelEvaluator, B: LevelEvaluator> LevelEvaluator for Mu<A, B> {
    fn base_level(&self) -> usize {
        self.lower.base_level()
    }

    fn top_level(&self) -> usize {
        self.upper.top_level()
    }
}

/// Glue `lower` (on `G_k`, relative to `G_l`) with `upper` (on `G_top`, relative to `G_k`).
pub fn mu<A: LevelEvaluator, B: LevelEvaluator>(lower: A, upper: B) -> Result<Mu<A, B>, PreorderError> {
    let l = lower.base_level();
    let k = lower.top_level();
    let top = upper.top_level();
    if upper.base_level() != k || l >= k || k >= top {
        return Err(PreorderError::LevelMismatch {
            lower: l,
            split: k.max(upper.base_level()),
            upper: top,
        });
    }
    Ok(Mu { lower, upper })
}

/// A preorder viewed only on `G_k`.
#[derive(Debug, Clone)]
pub struct Restriction<F> {
    inner: F,
    level: usize,
}

impl<F: LevelEvaluator> Restriction<F> {
    pub fn checked_sign(&self, g: &ExponentVector) -> Result<Sign, PreorderError> {
        if level_membership(g, self.level) {
            Ok(self.inner.sign(g))
        } else {
            Err(PreorderError::OutsideDomain {
                g: g.to_string(),
                level: self.level,
            })
        }
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: LevelEvaluator> PreorderEvaluator<ExponentVector> for Restriction<F> {
    fn sign(&self, g: &ExponentVector) -> Sign {
        self.inner.sign(g)
    }

    fn in_base(&self, g: &ExponentVector) -> bool {
        self.inner.in_base(g)
    }

    fn in_domain(&self, g: &ExponentVector) -> bool {
        level_membership(g, self.level) && self.inner.in_domain(g)
    }
}

impl<F: LevelEvaluator> LevelEvaluator for Restriction<F> {
    fn base_level(&self) -> usize {
        self.inner.base_level()
    }

    fn top_level(&self) -> usize {
        self.level
    }
}

pub fn restrict<F: LevelEvaluator>(phi: F, k: usize) -> Result<Restriction<F>, PreorderError> {
    let l = phi.base_level();
    let top = phi.top_level();
    if l >= k || k > top {
        return Err(PreorderError::LevelMismatch {
            lower: l,
            split: k,
            upper: top + 1,
        });
    }
    Ok(Restriction { inner: phi, level: k })
}

/// The part of a preorder above `G_k`: zero on `G_k`, unchanged elsewhere.
#[derive(Debug, Clone)]
pub struct UpperPart<F> {
    inner: F,
    level: usize,
}

impl<F: LevelEvaluator> PreorderEvaluator<ExponentVector> for UpperPart<F> {
    fn sign(&self, g: &ExponentVector) -> Sign {
        if level_membership(g, self.level) {
            Sign::Zero
        } else {
            self.inner.sign(g)
        }
    }

    fn in_base(&self, g: &ExponentVector) -> bool {
        level_membership(g, self.level)
    }

    fn in_domain(&self, g: &ExponentVector) -> bool {
        self.inner.in_domain(g)
    }
}

impl<F: LevelEvaluator> LevelEvaluator for UpperPart<F> {
    fn base_level(&self) -> usize {
        self.level
    }

    fn top_level(&self) -> usize {
        self.inner.top_level()
    }
}

/// Split at `G_k`. Convexity of `G_k` is the caller's responsibility; a
/// non-convex split surfaces in the audits of the returned parts.
pub fn rho<F: LevelEvaluator>(
    phi: &F,
    k: usize,
) -> Result<(Restriction<&F>, UpperPart<&F>), PreorderError> {
    let l = phi.base_level();
    let top = phi.top_level();
    if l >= k || k >= top {
        return Err(PreorderError::LevelMismatch {
            lower: l,
            split: k,
            upper: top,
        });
    }
    Ok((
        Restriction {
            inner: phi,
            level: k,
        },
        UpperPart {
            inner: phi,
            level: k,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder_core::SignVectorCone;
    use Sign::{Negative as N, Positive as P};

    #[test]
    fn level_checks() {
        let c = SignVectorCone::new(3, 0, vec![P, N, P]).unwrap();
        assert!(rho(&c, 0).is_err());
        assert!(rho(&c, 3).is_err());
        let (lo, hi) = rho(&c, 2).unwrap();
        assert_eq!((lo.base_level(), lo.top_level()), (0, 2));
        assert_eq!((hi.base_level(), hi.top_level()), (2, 3));
        assert!(mu(lo.clone(), hi.clone()).is_ok());
        // Wrong way round.
        assert!(mu(hi, lo).is_err());
        assert!(restrict(&c, 0).is_err());
        assert!(restrict(&c, 3).is_ok());
    }

    #[test]
    fn restriction_refuses_outside_elements() {
        let c = SignVectorCone::new(3, 0, vec![P, P, N]).unwrap();
        let r = restrict(&c, 2).unwrap();
        let inside = ExponentVector::from_i64s(&[1, -1, 0]);
        let outside = ExponentVector::from_i64s(&[0, 0, 1]);
        assert_eq!(r.checked_sign(&inside).unwrap(), N);
        assert!(matches!(
            r.checked_sign(&outside),
            Err(PreorderError::OutsideDomain { level: 2, .. })
        ));
        assert!(!r.in_domain(&outside));
    }
}
