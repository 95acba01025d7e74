//! Collection from the left.
//!
//! Letters are multiplied one at a time onto an already collected prefix.
//! When a letter `x_k^e` meets a prefix whose top generator is `x_j` with
//! `j > k`, it is conjugated past `x_j^r` (landing in `G_{j-1}`) and the
//! result is collected recursively below level `j`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::presentation::Direction;
use super::{ExponentVector, Presentation, Word};
use crate::group::{Group, GroupError};

pub(crate) struct Steps {
    used: u64,
    budget: u64,
}

impl Steps {
    pub(crate) fn new(budget: u64) -> Self {
        Steps { used: 0, budget }
    }

    fn tick(&mut self) -> Result<(), GroupError> {
        self.used += 1;
        if self.used > self.budget {
            Err(GroupError::StepBudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

fn top(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|e| !e.is_zero())
}

impl Presentation {
    /// `r <- r * x_k^e`
    fn mul_gen_pow(
        &self,
        r: &mut [BigInt],
        k: usize,
        e: &BigInt,
        steps: &mut Steps,
    ) -> Result<(), GroupError> {
        steps.tick()?;
        if e.is_zero() {
            return Ok(());
        }
        match top(r) {
            Some(j) if j > k => {
                if self.trivial[j][k] {
                    // x_k commutes with x_j; push it further down.
                    let rj = std::mem::take(&mut r[j]);
                    let res = self.mul_gen_pow(r, k, e, steps);
                    r[j] = rj;
                    return res;
                }
                let rj = std::mem::take(&mut r[j]);
                let mut c = vec![BigInt::zero(); r.len()];
                c[k] = e.clone();
                let c = self.conjugate_by_power(j, &rj, c, steps)?;
                self.mul_vec_into(r, &c, steps)?;
                r[j] = rj;
                Ok(())
            }
            _ => {
                r[k] += e;
                Ok(())
            }
        }
    }

    /// `r <- r * c`
    fn mul_vec_into(
        &self,
        r: &mut [BigInt],
        c: &[BigInt],
        steps: &mut Steps,
    ) -> Result<(), GroupError> {
        for (k, e) in c.iter().enumerate() {
            if !e.is_zero() {
                self.mul_gen_pow(r, k, e, steps)?;
            }
        }
        Ok(())
    }

    fn invert_vec(&self, v: &[BigInt], steps: &mut Steps) -> Result<Vec<BigInt>, GroupError> {
        let mut r = vec![BigInt::zero(); v.len()];
        for (k, e) in v.iter().enumerate().rev() {
            if !e.is_zero() {
                self.mul_gen_pow(&mut r, k, &-e, steps)?;
            }
        }
        Ok(r)
    }

    fn pow_vec(
        &self,
        v: &[BigInt],
        n: &BigInt,
        steps: &mut Steps,
    ) -> Result<Vec<BigInt>, GroupError> {
        // A single-syllable vector is its own fast path.
        if let Some(t) = top(v) {
            if v[..t].iter().all(Zero::is_zero) {
                let mut out = vec![BigInt::zero(); v.len()];
                out[t] = &v[t] * n;
                return Ok(out);
            }
        } else {
            return Ok(v.to_vec());
        }
        let mut base = if n.is_negative() {
            self.invert_vec(v, steps)?
        } else {
            v.to_vec()
        };
        let mag = n.magnitude();
        let bits = mag.bits();
        let mut acc = vec![BigInt::zero(); v.len()];
        for bit in 0..bits {
            if mag.bit(bit) {
                self.mul_vec_into(&mut acc, &base, steps)?;
            }
            if bit + 1 < bits {
                let b2 = base.clone();
                self.mul_vec_into(&mut base, &b2, steps)?;
            }
        }
        Ok(acc)
    }

    /// Image of `v ∈ G_j` (zero-based `j`: generators below `j`) under
    /// conjugation by `x_j^{±1}`.
    fn conjugate_once(
        &self,
        j: usize,
        dir: Direction,
        v: &[BigInt],
        steps: &mut Steps,
    ) -> Result<Vec<BigInt>, GroupError> {
        let mut w = vec![BigInt::zero(); v.len()];
        for (i, e) in v.iter().enumerate().take(j) {
            if e.is_zero() {
                continue;
            }
            if self.trivial[j][i] {
                self.mul_gen_pow(&mut w, i, e, steps)?;
                continue;
            }
            let img = &self.images[j][i][dir.slot()].0;
            let p = self.pow_vec(img, e, steps)?;
            self.mul_vec_into(&mut w, &p, steps)?;
        }
        Ok(w)
    }

    /// `x_j^r v x_j^-r` for `v` below level `j`.
    fn conjugate_by_power(
        &self,
        j: usize,
        r: &BigInt,
        mut v: Vec<BigInt>,
        steps: &mut Steps,
    ) -> Result<Vec<BigInt>, GroupError> {
        let dir = if r.is_negative() {
            Direction::Neg
        } else {
            Direction::Pos
        };
        let mut n = r.magnitude().clone();
        while !n.is_zero() {
            v = self.conjugate_once(j, dir, &v, steps)?;
            n -= 1u32;
        }
        Ok(v)
    }

    /// Normal form of a word.
    pub fn collect(&self, w: &Word) -> Result<ExponentVector, GroupError> {
        let mut steps = Steps::new(self.step_budget);
        let mut r = vec![BigInt::zero(); self.m];
        for l in &w.letters {
            self.mul_gen_pow(&mut r, l.gen, &l.exp, &mut steps)?;
        }
        Ok(ExponentVector(r))
    }

    /// Multiply a collected element on the right by a word.
    pub fn multiply_word(
        &self,
        a: &ExponentVector,
        w: &Word,
    ) -> Result<ExponentVector, GroupError> {
        let mut steps = Steps::new(self.step_budget);
        let mut r = a.0.clone();
        for l in &w.letters {
            self.mul_gen_pow(&mut r, l.gen, &l.exp, &mut steps)?;
        }
        Ok(ExponentVector(r))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(
        &self,
        a: &ExponentVector,
        b: &ExponentVector,
    ) -> Result<ExponentVector, GroupError> {
        let ai = self.invert(a)?;
        let bi = self.invert(b)?;
        let x = self.multiply(&ai, &bi)?;
        let x = self.multiply(&x, a)?;
        self.multiply(&x, b)
    }

    /// `g a g^-1`.
    pub fn conjugate(
        &self,
        g: &ExponentVector,
        a: &ExponentVector,
    ) -> Result<ExponentVector, GroupError> {
        let gi = self.invert(g)?;
        let x = self.multiply(g, a)?;
        self.multiply(&x, &gi)
    }
}

impl Group for Presentation {
    type Elem = ExponentVector;

    fn identity(&self) -> ExponentVector {
        ExponentVector::identity(self.m)
    }

    fn generators(&self) -> Vec<ExponentVector> {
        (0..self.m).map(|k| ExponentVector::unit(self.m, k)).collect()
    }

    fn multiply(
        &self,
        a: &ExponentVector,
        b: &ExponentVector,
    ) -> Result<ExponentVector, GroupError> {
        let mut steps = Steps::new(self.step_budget);
        let mut r = a.0.clone();
        self.mul_vec_into(&mut r, &b.0, &mut steps)?;
        Ok(ExponentVector(r))
    }

    fn invert(&self, a: &ExponentVector) -> Result<ExponentVector, GroupError> {
        let mut steps = Steps::new(self.step_budget);
        Ok(ExponentVector(self.invert_vec(&a.0, &mut steps)?))
    }

    fn power(&self, a: &ExponentVector, n: i64) -> Result<ExponentVector, GroupError> {
        let mut steps = Steps::new(self.step_budget);
        Ok(ExponentVector(self.pow_vec(
            &a.0,
            &BigInt::from(n),
            &mut steps,
        )?))
    }
}

