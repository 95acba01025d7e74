use num_bigint::BigInt;

use super::{LevelEvaluator, PreorderError, PreorderEvaluator, Sign, SignVectorCone};
use crate::word_core::{level_membership, ExponentVector};

/// Order-preserving embedding of the jump `G_{i+1}/G_i` into the integers:
/// `g ↦ eps_{i+1} · e_{i+1}(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JumpMorphism {
    index: usize,
    sign: Sign,
}

impl JumpMorphism {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn evaluate(&self, g: &ExponentVector) -> Result<BigInt, PreorderError> {
        if !level_membership(g, self.index + 1) {
            return Err(PreorderError::OutsideDomain {
                g: g.to_string(),
                level: self.index + 1,
            });
        }
        let e = &g.0[self.index];
        Ok(match self.sign {
            Sign::Negative => -e,
            _ => e.clone(),
        })
    }
}

fn check_jump(c: &SignVectorCone, i: usize) -> Result<(), PreorderError> {
    if i < c.level() || i >= c.rank() {
        return Err(PreorderError::BadJump {
            index: i,
            lower: c.level(),
            upper: c.rank(),
        });
    }
    Ok(())
}

pub fn jump_morphism(c: &SignVectorCone, i: usize) -> Result<JumpMorphism, PreorderError> {
    check_jump(c, i)?;
    Ok(JumpMorphism {
        index: i,
        sign: c.direction(i),
    })
}

/// The preorder a cone induces on `G_{i+1}` relative to `G_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InducedJumpPreorder {
    index: usize,
    sign: Sign,
}

impl InducedJumpPreorder {
    pub fn checked_sign(&self, g: &ExponentVector) -> Result<Sign, PreorderError> {
        if !level_membership(g, self.index + 1) {
            return Err(PreorderError::OutsideDomain {
                g: g.to_string(),
                level: self.index + 1,
            });
        }
        Ok(self.sign(g))
    }
}

impl PreorderEvaluator<ExponentVector> for InducedJumpPreorder {
    fn sign(&self, g: &ExponentVector) -> Sign {
        self.sign * Sign::of(&g.0[self.index])
    }

    fn in_base(&self, g: &ExponentVector) -> bool {
        level_membership(g, self.index)
    }

    fn in_domain(&self, g: &ExponentVector) -> bool {
        level_membership(g, self.index + 1)
    }
}

impl LevelEvaluator for InducedJumpPreorder {
    fn base_level(&self) -> usize {
        self.index
    }

    fn top_level(&self) -> usize {
        self.index + 1
    }
}

pub fn induced_jump_preorder(
    c: &SignVectorCone,
    i: usize,
) -> Result<InducedJumpPreorder, PreorderError> {
    check_jump(c, i)?;
    Ok(InducedJumpPreorder {
        index: i,
        sign: c.direction(i),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Negative as N, Positive as P};

    #[test]
    fn tau_examples() {
        let c = SignVectorCone::new(2, 0, vec![P, P]).unwrap();
        let tau = jump_morphism(&c, 0).unwrap();
        for e1 in -5..=5 {
            let g = ExponentVector::from_i64s(&[e1, 0]);
            assert_eq!(tau.evaluate(&g).unwrap(), BigInt::from(e1));
        }
        assert!(tau.evaluate(&ExponentVector::from_i64s(&[0, 1])).is_err());
        let flipped = jump_morphism(&c.flipped(0), 0).unwrap();
        let g = ExponentVector::from_i64s(&[4, 0]);
        assert_eq!(flipped.evaluate(&g).unwrap(), -tau.evaluate(&g).unwrap());
    }

    #[test]
    fn induced_on_top_jump() {
        let c = SignVectorCone::new(2, 0, vec![N, P]).unwrap();
        let ind = induced_jump_preorder(&c, 1).unwrap();
        for e1 in -2..=2 {
            for e2 in [-3i64, -1, 1, 2] {
                let g = ExponentVector::from_i64s(&[e1, e2]);
                assert_eq!(ind.sign(&g), Sign::from_i8(e2.signum() as i8));
            }
        }
        assert!(induced_jump_preorder(&c, 2).is_err());
        let rel = SignVectorCone::new(3, 1, vec![P, P]).unwrap();
        assert!(induced_jump_preorder(&rel, 0).is_err());
        assert!(ind.checked_sign(&ExponentVector::from_i64s(&[1, 1])).is_ok());
    }
}
