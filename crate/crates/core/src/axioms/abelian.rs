use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::preorder_core::{PreorderEvaluator, Sign};
use crate::report::int;
use crate::word_core::{ExponentVector, Presentation};

/// Largest coefficient height the suite will enumerate to.
pub const MAX_SUITE_HEIGHT: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("presentation {0} is not free abelian of rank 2")]
    NotZ2(String),
    #[error("asked for {requested} functionals, only {available} exist up to height {height}")]
    Budget {
        requested: usize,
        available: usize,
        height: i64,
    },
}

/// `g ↦ sgn(p e_1 + q e_2)` on `ℤ²`, relative to the kernel line; with a
/// tie-break sign the kernel is ordered too and the preorder is total.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearFunctional {
    pub p: BigInt,
    pub q: BigInt,
    pub tie_break: Option<Sign>,
}

impl LinearFunctional {
    pub fn new(p: i64, q: i64) -> Self {
        LinearFunctional {
            p: p.into(),
            q: q.into(),
            tie_break: None,
        }
    }

    pub fn with_tie_break(mut self, s: Sign) -> Self {
        self.tie_break = Some(s);
        self
    }

    pub fn negated(&self) -> Self {
        LinearFunctional {
            p: -&self.p,
            q: -&self.q,
            tie_break: self.tie_break.map(|s| -s),
        }
    }

    pub fn value(&self, g: &ExponentVector) -> BigInt {
        &self.p * &g.0[0] + &self.q * &g.0[1]
    }

    /// Height `max(|p|, |q|)`: balls of this radius already tell suite members apart.
    pub fn height(&self) -> BigInt {
        self.p.abs().max(self.q.abs())
    }

    pub fn id(&self) -> String {
        match self.tie_break {
            None => format!("sgn({}e1{:+}e2)", self.p, self.q),
            Some(s) => format!("sgn({}e1{:+}e2),kernel={}", self.p, self.q, s.symbol()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id(),
            "p": int(&self.p),
            "q": int(&self.q),
            "tie_break": self.tie_break.map(|s| s.symbol()),
        })
    }

    fn kernel_sign(&self, g: &ExponentVector) -> Sign {
        // The kernel is spanned by (q, -p) / gcd; compare against that direction.
        let dir = if self.q.is_zero() {
            -&self.p
        } else {
            self.q.clone()
        };
        let coord = if self.q.is_zero() { &g.0[1] } else { &g.0[0] };
        Sign::of(coord) * Sign::of(&dir)
    }
}

impl PreorderEvaluator<ExponentVector> for LinearFunctional {
    fn sign(&self, g: &ExponentVector) -> Sign {
        let s = Sign::of(&self.value(g));
        match (s, self.tie_break) {
            (Sign::Zero, Some(t)) => t * self.kernel_sign(g),
            _ => s,
        }
    }

    fn in_base(&self, g: &ExponentVector) -> bool {
        match self.tie_break {
            None => self.value(g).is_zero(),
            Some(_) => g.is_identity(),
        }
    }

    fn in_domain(&self, g: &ExponentVector) -> bool {
        g.len() == 2
    }
}

/// Coprime `(p, q)` with `p, q >= 0`: `(1,0), (0,1), (1,1)`, then for each
/// height `h >= 2` the pairs `(j,h), (h,j)` for `j < h` coprime to `h`.
pub fn coprime_pairs(max_height: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0), (0, 1), (1, 1)];
    for h in 2..=max_height {
        for j in 1..h {
            if j.gcd(&h) == 1 {
                out.push((j, h));
                out.push((h, j));
            }
        }
    }
    out
}

fn is_z2(p: &Presentation) -> bool {
    p.rank() == 2 && p.is_abelian()
}

/// `k` pairwise distinct conradian preorders on `ℤ²`, one per coprime pair.
pub fn abelian_witness_suite(p: &Presentation, k: usize) -> Result<Vec<LinearFunctional>, SuiteError> {
    if !is_z2(p) {
        return Err(SuiteError::NotZ2(p.name().to_string()));
    }
    let pairs = coprime_pairs(MAX_SUITE_HEIGHT);
    if k > pairs.len() {
        return Err(SuiteError::Budget {
            requested: k,
            available: pairs.len(),
            height: MAX_SUITE_HEIGHT,
        });
    }
    Ok(pairs
        .into_iter()
        .take(k)
        .map(|(a, b)| LinearFunctional::new(a, b))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_order() {
        let pairs = coprime_pairs(3);
        assert_eq!(
            pairs,
            vec![(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]
        );
    }

    #[test]
    fn kernel_of_diagonal() {
        let f = LinearFunctional::new(1, 1);
        let g = ExponentVector::from_i64s(&[1, -1]);
        assert_eq!(f.sign(&g), Sign::Zero);
        assert!(f.in_base(&g));
        assert!(!g.is_identity());
    }

    #[test]
    fn tie_break_orders_the_kernel() {
        let f = LinearFunctional::new(1, 1).with_tie_break(Sign::Positive);
        let g = ExponentVector::from_i64s(&[1, -1]);
        assert_eq!(f.sign(&g), Sign::Positive);
        assert_eq!(f.sign(&ExponentVector::from_i64s(&[-1, 1])), Sign::Negative);
        assert!(!f.in_base(&g));
        let h = LinearFunctional::new(1, 0).with_tie_break(Sign::Negative);
        // kernel direction is (0,-1), so (0,2) lies on the negative side of it
        assert_eq!(h.sign(&ExponentVector::from_i64s(&[0, 2])), Sign::Positive);
    }

    #[test]
    fn rejects_non_abelian() {
        let k = crate::corpus::load("klein");
        assert!(matches!(abelian_witness_suite(&k, 3), Err(SuiteError::NotZ2(_))));
    }
}
