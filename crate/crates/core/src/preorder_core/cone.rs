use std::fmt;

use serde_json::{json, Value};

use super::{LevelEvaluator, PreorderError, PreorderEvaluator, Sign};
use crate::report::int;
use crate::word_core::{level_membership, ExponentVector};

/// A conradian left-preorder relative to `G_l`, one direction per factor.
///
/// The sign of `g ∉ G_l` is `eps_k * sgn(e_k)` at the top nonzero coordinate
/// `k`; `G_l` itself is the zero set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVectorCone {
    m: usize,
    level: usize,
    eps: Vec<Sign>,
}

impl SignVectorCone {
    pub fn new(m: usize, level: usize, eps: Vec<Sign>) -> Result<Self, PreorderError> {
        if level >= m {
            return Err(PreorderError::BadBaseLevel { level, m });
        }
        if eps.len() != m - level {
            return Err(PreorderError::BadSignCount {
                got: eps.len(),
                expected: m - level,
            });
        }
        if eps.contains(&Sign::Zero) {
            return Err(PreorderError::Literal(
                "directions must be + or -".into(),
            ));
        }
        Ok(SignVectorCone { m, level, eps })
    }

    pub fn from_literal(m: usize, lit: &ConeLiteral) -> Result<Self, PreorderError> {
        let level = lit
            .level
            .ok_or_else(|| PreorderError::Literal("missing `l=`".into()))?;
        Self::new(m, level, lit.eps.clone())
    }

    /// All `2^(m-l)` cones at one level, `+` before `-`, first factor slowest.
    pub fn all_at_level(m: usize, level: usize) -> Result<Vec<Self>, PreorderError> {
        if level >= m {
            return Err(PreorderError::BadBaseLevel { level, m });
        }
        let n = m - level;
        let count = 1usize
            .checked_shl(n as u32)
            .filter(|_| n < usize::BITS as usize)
            .ok_or(PreorderError::BadBaseLevel { level, m })?;
        Ok((0..count)
            .map(|code| {
                let eps = (0..n)
                    .map(|i| {
                        if (code >> (n - 1 - i)) & 1 == 0 {
                            Sign::Positive
                        } else {
                            Sign::Negative
                        }
                    })
                    .collect();
                SignVectorCone { m, level, eps }
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn eps(&self) -> &[Sign] {
        &self.eps
    }

    /// Direction of generator `x_{k+1}` (zero-based `k >= l`).
    pub fn direction(&self, k: usize) -> Sign {
        self.eps[k - self.level]
    }

    pub fn evaluate(&self, g: &ExponentVector) -> Sign {
        match g.top() {
            Some(k) if k >= self.level => self.eps[k - self.level] * Sign::of(&g.0[k]),
            _ => Sign::Zero,
        }
    }

    /// The same preorder with one direction reversed.
    pub fn flipped(&self, k: usize) -> SignVectorCone {
        let mut c = self.clone();
        c.eps[k - self.level] = -c.eps[k - self.level];
        c
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id(),
            "level": int(self.level),
            "eps": self.eps.iter().map(|s| s.symbol()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SignVectorCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={},eps=[", self.level)?;
        for (n, s) in self.eps.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

impl PreorderEvaluator<ExponentVector> for SignVectorCone {
    fn sign(&self, g: &ExponentVector) -> Sign {
        self.evaluate(g)
    }

    fn in_base(&self, g: &ExponentVector) -> bool {
        level_membership(g, self.level)
    }
}

impl LevelEvaluator for SignVectorCone {
    fn base_level(&self) -> usize {
        self.level
    }

    fn top_level(&self) -> usize {
        self.m
    }
}

/// Parsed `l=<int>, eps=[+,-,...]`; the level may be omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeLiteral {
    pub level: Option<usize>,
    pub eps: Vec<Sign>,
}

pub fn parse_cone_literal(text: &str) -> Result<ConeLiteral, PreorderError> {
    let bad = |m: &str| PreorderError::Literal(format!("{m} in `{text}`"));
    let t = text.trim();
    let (head, eps_part) = match t.find("eps") {
        Some(pos) => (&t[..pos], &t[pos..]),
        None => return Err(bad("missing `eps=[...]`")),
    };
    let head = head.trim().trim_end_matches(',').trim();
    let level = if head.is_empty() {
        None
    } else {
        let v = head
            .strip_prefix("l")
            .map(str::trim_start)
            .and_then(|s| s.strip_prefix('='))
            .ok_or_else(|| bad("expected `l=<int>`"))?;
        Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| bad("bad level"))?,
        )
    };
    let body = eps_part["eps".len()..]
        .trim_start()
        .strip_prefix('=')
        .map(str::trim)
        .and_then(|s| s.strip_prefix('['))
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("expected `eps=[...]`"))?;
    let mut eps = Vec::new();
    for part in body.split(',') {
        if part.trim().is_empty() {
            continue;
        }
        match Sign::parse(part) {
            Some(Sign::Zero) | None => return Err(bad("directions must be + or -")),
            Some(s) => eps.push(s),
        }
    }
    if eps.is_empty() {
        return Err(bad("empty sign vector"));
    }
    Ok(ConeLiteral { level, eps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Negative as N, Positive as P};

    fn v(e: &[i64]) -> ExponentVector {
        ExponentVector::from_i64s(e)
    }

    #[test]
    fn evaluate_examples() {
        let c = SignVectorCone::new(2, 0, vec![P, P]).unwrap();
        assert_eq!(c.evaluate(&v(&[-3, 0])), N);
        assert_eq!(c.evaluate(&v(&[5, -2])), N);
        assert_eq!(c.evaluate(&v(&[0, 0])), Sign::Zero);
        let rel = SignVectorCone::new(2, 1, vec![P]).unwrap();
        assert_eq!(rel.evaluate(&v(&[7, 0])), Sign::Zero);
        assert_eq!(rel.evaluate(&v(&[7, -1])), N);
        let mixed = SignVectorCone::new(3, 0, vec![P, N, P]).unwrap();
        assert_eq!(mixed.evaluate(&v(&[9, 1, 0])), N);
        assert_eq!(mixed.flipped(1).evaluate(&v(&[9, 1, 0])), P);
    }

    #[test]
    fn rejects_trivial_and_malformed() {
        assert!(matches!(
            SignVectorCone::new(2, 2, vec![]),
            Err(PreorderError::BadBaseLevel { .. })
        ));
        assert!(matches!(
            SignVectorCone::new(2, 0, vec![P]),
            Err(PreorderError::BadSignCount { .. })
        ));
        assert!(SignVectorCone::new(1, 0, vec![Sign::Zero]).is_err());
    }

    #[test]
    fn level_enumeration_order() {
        let all = SignVectorCone::all_at_level(3, 1).unwrap();
        let ids: Vec<String> = all.iter().map(|c| c.id()).collect();
        assert_eq!(
            ids,
            ["l=1,eps=[+,+]", "l=1,eps=[+,-]", "l=1,eps=[-,+]", "l=1,eps=[-,-]"]
        );
        assert_eq!(SignVectorCone::all_at_level(4, 0).unwrap().len(), 16);
    }

    #[test]
    fn literal_parsing() {
        let lit = parse_cone_literal("l=0, eps=[+,-,+]").unwrap();
        assert_eq!(lit.level, Some(0));
        assert_eq!(lit.eps, vec![P, N, P]);
        let lit = parse_cone_literal("eps=[+]").unwrap();
        assert_eq!(lit.level, None);
        let c = SignVectorCone::from_literal(3, &parse_cone_literal("l=1,eps=[-,+]").unwrap())
            .unwrap();
        assert_eq!(c.to_string(), "l=1,eps=[-,+]");
        assert_eq!(parse_cone_literal(&c.to_string()).unwrap().eps, vec![N, P]);
        assert!(parse_cone_literal("l=x,eps=[+]").is_err());
        assert!(parse_cone_literal("l=0,eps=[+,0]").is_err());
        assert!(parse_cone_literal("l=0").is_err());
        assert!(parse_cone_literal("eps=[]").is_err());
    }
}
