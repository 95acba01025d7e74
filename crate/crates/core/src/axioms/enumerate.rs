use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::group::{ball, GroupError};
use crate::preorder_core::{PreorderError, Sign, SignVectorCone};
use crate::report::{count_check, int};
use crate::series_analysis::Certificate;
use crate::word_core::Presentation;

/// Refuse to materialize more cones than this in one list.
pub const MAX_LISTED_FACTORS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("certificate for {presentation} holds from level {from_level}, not level {level}")]
    NotCovered {
        presentation: String,
        level: usize,
        from_level: usize,
    },
    #[error("level {level} must be below the generator count {m}")]
    BadLevel { level: usize, m: usize },
    #[error("{factors} factors above the base is too many cones to list")]
    TooMany { factors: usize },
    #[error(transparent)]
    Preorder(#[from] PreorderError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Relative(usize),
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub presentation: String,
    pub m: usize,
    pub scope: Scope,
    /// Cones tagged by base level, lowest level first.
    pub cones: Vec<SignVectorCone>,
    pub expected: BigUint,
    /// Number of distinct sign patterns on the radius-1 ball.
    pub distinct_radius1: usize,
}

impl EnumerationResult {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn matches(&self) -> bool {
        BigUint::from(self.cones.len()) == self.expected && self.distinct_radius1 == self.cones.len()
    }

    pub fn to_json(&self) -> Value {
        let (scope, level) = match self.scope {
            Scope::Relative(l) => ("relative", Some(int(l))),
            Scope::All => ("all", None),
        };
        json!({
            "presentation": self.presentation,
            "scope": scope,
            "level": level,
            "count": count_check(&self.expected, self.cones.len()),
            "distinct_on_radius_1": int(self.distinct_radius1),
            "match": self.matches(),
            "cones": self.cones.iter().map(SignVectorCone::to_json).collect::<Vec<_>>(),
        })
    }
}

fn check_cover(p: &Presentation, level: usize, cert: &Certificate) -> Result<(), EnumerationError> {
    if level >= p.rank() {
        return Err(EnumerationError::BadLevel { level, m: p.rank() });
    }
    if !cert.covers(p, level) {
        return Err(EnumerationError::NotCovered {
            presentation: p.name().to_string(),
            level,
            from_level: cert.from_level(),
        });
    }
    if p.rank() - level > MAX_LISTED_FACTORS {
        return Err(EnumerationError::TooMany {
            factors: p.rank() - level,
        });
    }
    Ok(())
}

fn distinct_on_radius1(p: &Presentation, cones: &[SignVectorCone]) -> Result<usize, GroupError> {
    let b = ball(p, 1)?;
    let sigs: BTreeSet<Vec<Sign>> = cones
        .iter()
        .map(|c| b.iter().map(|g| c.evaluate(g)).collect())
        .collect();
    Ok(sigs.len())
}

/// The `2^(m-l)` conradian preorders relative to `G_l`.
pub fn enumerate_relative(
    p: &Presentation,
    level: usize,
    cert: &Certificate,
) -> Result<EnumerationResult, EnumerationError> {
    check_cover(p, level, cert)?;
    let cones = SignVectorCone::all_at_level(p.rank(), level)?;
    Ok(EnumerationResult {
        presentation: p.name().to_string(),
        m: p.rank(),
        scope: Scope::Relative(level),
        distinct_radius1: distinct_on_radius1(p, &cones)?,
        cones,
        expected: BigUint::one() << (p.rank() - level),
    })
}

/// All conradian preorders: the union over base levels `0..m`, `2^(m+1) - 2` in total.
pub fn enumerate_all(p: &Presentation, cert: &Certificate) -> Result<EnumerationResult, EnumerationError> {
    check_cover(p, 0, cert)?;
    let mut cones = Vec::new();
    for l in 0..p.rank() {
        cones.extend(SignVectorCone::all_at_level(p.rank(), l)?);
    }
    Ok(EnumerationResult {
        presentation: p.name().to_string(),
        m: p.rank(),
        scope: Scope::All,
        distinct_radius1: distinct_on_radius1(p, &cones)?,
        cones,
        expected: (BigUint::one() << (p.rank() + 1)) - BigUint::from(2u32),
    })
}
