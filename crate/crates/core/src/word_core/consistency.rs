use serde_json::{json, Value};

use super::presentation::Direction;
use super::{ExponentVector, Presentation, Word};
use crate::group::{ball, GroupError};
use crate::report::{int, ReportElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// `conj` and `conjinv` are not mutually inverse on a generator.
    Inverse,
    /// Collecting `g · lhs` and `g · rhs` of a relation disagree.
    Relation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyFailure {
    pub kind: FailureKind,
    pub g: ExponentVector,
    /// Zero-based `(j, i)`.
    pub j: usize,
    pub i: usize,
    pub dir: Direction,
    pub lhs: ExponentVector,
    pub rhs: ExponentVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub radius: usize,
    pub checks: u64,
    pub failures: Vec<ConsistencyFailure>,
}

impl ConsistencyReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| {
                json!({
                    "kind": match f.kind { FailureKind::Inverse => "inverse", FailureKind::Relation => "relation" },
                    "g": f.g.to_json(),
                    "relation": format!("{} {} {}", f.dir.keyword(), f.j + 1, f.i + 1),
                    "lhs": f.lhs.to_json(),
                    "rhs": f.rhs.to_json(),
                })
            })
            .collect();
        json!({
            "radius": int(self.radius),
            "checks": int(self.checks),
            "pass": self.pass(),
            "failures": failures,
        })
    }
}

/// Ball-scale consistency of the relation table.
///
/// Checks that `conj`/`conjinv` invert each other on every generator, and that
/// for every ball element `g` and relation `x_j^s x_i x_j^-s = w`, collecting
/// `g x_j^s x_i x_j^-s` and `g w` letter by letter gives the same normal form.
pub fn consistency_audit(p: &Presentation, radius: usize) -> Result<ConsistencyReport, GroupError> {
    let m = p.rank();
    let mut failures = Vec::new();
    let mut checks = 0u64;

    for j in 0..m {
        for i in 0..j {
            let xi = p.unit(i);
            for dir in [Direction::Pos, Direction::Neg] {
                // x_j^-s (x_j^s x_i x_j^-s) x_j^s == x_i
                let s = dir.left_exp();
                let w = Word::from_pairs(&[(j, -s)])
                    .concat(p.relation(j, i, dir))
                    .concat(&Word::from_pairs(&[(j, s)]));
                let back = p.collect(&w)?;
                checks += 1;
                if back != xi {
                    failures.push(ConsistencyFailure {
                        kind: FailureKind::Inverse,
                        g: xi.clone(),
                        j,
                        i,
                        dir,
                        lhs: back,
                        rhs: xi.clone(),
                    });
                }
            }
        }
    }

    let b = ball(p, radius)?;
    for g in b.iter() {
        let prefix = g.to_word();
        for j in 0..m {
            for i in 0..j {
                for dir in [Direction::Pos, Direction::Neg] {
                    let s = dir.left_exp();
                    let lhs_word = prefix.concat(&Word::from_pairs(&[(j, s), (i, 1), (j, -s)]));
                    let rhs_word = prefix.concat(p.relation(j, i, dir));
                    let lhs = p.collect(&lhs_word)?;
                    let rhs = p.collect(&rhs_word)?;
                    checks += 1;
                    if lhs != rhs {
                        failures.push(ConsistencyFailure {
                            kind: FailureKind::Relation,
                            g: g.clone(),
                            j,
                            i,
                            dir,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    Ok(ConsistencyReport {
        radius,
        checks,
        failures,
    })
}
