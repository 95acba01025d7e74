//! Audits of the stored series: subnormality, torsion probe, abelian jumps.
//!
//! Normality and abelianness are decided exactly on generators by
//! collection. Ball radius only bounds the search for witness pairs.

use serde_json::{json, Value};

use crate::group::{ball, Group, GroupError};
use crate::report::{int, ReportElement};
use crate::word_core::{level_membership, ExponentVector, Presentation};

pub const DEFAULT_TORSION_PROBE: i64 = 16;

/// Result of checking `x_{i+1}^{±1} g x_{i+1}^{∓1} ∈ G_i` on ball members of `G_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelNormality {
    pub level: usize,
    pub checked: u64,
    /// `(g, s, x_{i+1}^s g x_{i+1}^-s)` for every conjugate that left `G_i`.
    pub failures: Vec<(ExponentVector, i64, ExponentVector)>,
}

impl LevelNormality {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn subnormality_audit(p: &Presentation, radius: usize) -> Result<Vec<LevelNormality>, GroupError> {
    let b = ball(p, radius)?;
    let mut out = Vec::with_capacity(p.rank());
    for i in 0..p.rank() {
        let x = p.unit(i);
        let mut checked = 0;
        let mut failures = Vec::new();
        for g in b.iter().filter(|g| level_membership(g, i)) {
            for s in [1i64, -1] {
                let xs = p.power(&x, s)?;
                let c = p.conjugate(&xs, g)?;
                checked += 1;
                if !level_membership(&c, i) {
                    failures.push((g.clone(), s, c));
                }
            }
        }
        out.push(LevelNormality {
            level: i,
            checked,
            failures,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub label: String,
    pub element: ExponentVector,
    /// Whether `element ∈ G_i` for the report's level `i`.
    pub in_base: bool,
}

/// One level `i` of the series: the step `G_i ◁ G_{i+1}` and, when
/// `i + 2 <= m`, whether `G_i ◁ G_{i+1} ◁ G_{i+2}` is an abelian jump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpReport {
    pub index: usize,
    pub normal_in_next: bool,
    pub quotient_infinite_cyclic_witness: bool,
    /// Smallest `k` with `x_{i+1}^k ∈ G_i`, if the probe found one.
    pub torsion_suspect: Option<i64>,
    pub abelian_jump: Option<bool>,
    pub evidence: Vec<Evidence>,
    /// `(a, b)` with `a ∈ G_{i+1}\G_i`, `b ∈ G_{i+2}\G_{i+1}` and `b^-1 a b G_i ≠ a G_i`.
    pub witness: Option<(ExponentVector, ExponentVector)>,
}

impl JumpReport {
    pub fn to_json(&self) -> Value {
        json!({
            "level": int(self.index),
            "normal_in_next": self.normal_in_next,
            "quotient_infinite_cyclic_witness": self.quotient_infinite_cyclic_witness,
            "torsion_suspect": self.torsion_suspect.map(int),
            "abelian_jump": self.abelian_jump,
            "evidence": self.evidence.iter().map(|e| json!({
                "label": e.label,
                "element": e.element.to_json(),
                "in_base": e.in_base,
            })).collect::<Vec<_>>(),
            "witness": match &self.witness {
                Some((a, b)) => json!([a.to_json(), b.to_json()]),
                None => json!([]),
            },
        })
    }
}

/// `b^-1 a b G_i ≠ a G_i`, i.e. `[a, b] ∉ G_i`.
pub fn separates_cosets(
    p: &Presentation,
    a: &ExponentVector,
    b: &ExponentVector,
    level: usize,
) -> Result<bool, GroupError> {
    Ok(!level_membership(&p.commutator(a, b)?, level))
}

fn is_witness(
    p: &Presentation,
    a: &ExponentVector,
    b: &ExponentVector,
    i: usize,
) -> Result<bool, GroupError> {
    Ok(level_membership(a, i + 1)
        && !level_membership(a, i)
        && level_membership(b, i + 2)
        && !level_membership(b, i + 1)
        && separates_cosets(p, a, b, i)?)
}

pub fn abelian_jump_scan(p: &Presentation, radius: usize) -> Result<Vec<JumpReport>, GroupError> {
    let m = p.rank();
    let mut window = None;
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let x1 = p.unit(i);
        let mut evidence = Vec::new();

        let mut normal_in_next = true;
        for j in 0..i {
            for s in [1i64, -1] {
                let c = p.conjugate(&p.power(&x1, s)?, &p.unit(j))?;
                let inside = level_membership(&c, i);
                normal_in_next &= inside;
                if !inside {
                    evidence.push(Evidence {
                        label: format!("x{}^{} x{} x{}^{}", i + 1, s, j + 1, i + 1, -s),
                        element: c,
                        in_base: false,
                    });
                }
            }
        }

        let mut torsion_suspect = None;
        for k in 1..=DEFAULT_TORSION_PROBE {
            if level_membership(&p.power(&x1, k)?, i) {
                torsion_suspect = Some(k);
                break;
            }
        }

        let mut abelian_jump = None;
        let mut witness = None;
        if i + 2 <= m {
            let x2 = p.unit(i + 1);
            let comm = p.commutator(&x1, &x2)?;
            let comm_inside = level_membership(&comm, i);
            evidence.push(Evidence {
                label: format!("[x{}, x{}]", i + 1, i + 2),
                element: comm,
                in_base: comm_inside,
            });
            let mut normal_failure = None;
            for j in 0..i {
                for s in [1i64, -1] {
                    let c = p.conjugate(&p.power(&x2, s)?, &p.unit(j))?;
                    let inside = level_membership(&c, i);
                    if !inside && normal_failure.is_none() {
                        normal_failure = Some((j, s));
                    }
                    if !inside {
                        evidence.push(Evidence {
                            label: format!("x{}^{} x{} x{}^{}", i + 2, s, j + 1, i + 2, -s),
                            element: c,
                            in_base: false,
                        });
                    }
                }
            }
            let jump = comm_inside && normal_failure.is_none();
            abelian_jump = Some(jump);
            if !jump {
                let mut candidate = None;
                if !comm_inside {
                    candidate = Some((x1.clone(), x2.clone()));
                } else if let Some((j, s)) = normal_failure {
                    // x_{i+2}^s x_j x_{i+2}^-s leaves G_i: conjugate it back down.
                    let bhat = p.power(&x2, -s)?;
                    let a = p.conjugate(&p.invert(&bhat)?, &p.unit(j))?;
                    candidate = Some((a, p.invert(&bhat)?));
                }
                if let Some((a, b)) = candidate {
                    if is_witness(p, &a, &b, i)? {
                        witness = Some((a, b));
                    }
                }
                if witness.is_none() {
                    if window.is_none() {
                        window = Some(ball(p, radius)?);
                    }
                    let bl = window.as_ref().expect("ball computed above");
                    'search: for a in bl.iter() {
                        for b in bl.iter() {
                            if is_witness(p, a, b, i)? {
                                witness = Some((a.clone(), b.clone()));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }

        out.push(JumpReport {
            index: i,
            normal_in_next,
            quotient_infinite_cyclic_witness: torsion_suspect.is_none(),
            torsion_suspect,
            abelian_jump,
            evidence,
            witness,
        });
    }
    Ok(out)
}

/// Proof-carrying token: the series has no abelian jump at any index `>= from_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    presentation: String,
    m: usize,
    from_level: usize,
}

impl Certificate {
    pub fn from_level(&self) -> usize {
        self.from_level
    }

    pub fn covers(&self, p: &Presentation, level: usize) -> bool {
        self.presentation == p.name() && self.m == p.rank() && level >= self.from_level
    }

    pub fn to_json(&self) -> Value {
        json!({
            "presentation": self.presentation,
            "from_level": int(self.from_level),
            // below a certificate from level 0 the smallest convex subgroup is G_0
            "c_min": if self.from_level == 0 { json!("G_0") } else { Value::Null },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    pub presentation: String,
    pub jump_indices: Vec<usize>,
    pub reason: String,
}

impl Refusal {
    pub fn to_json(&self) -> Value {
        json!({
            "presentation": self.presentation,
            "abelian_jumps": self.jump_indices.iter().map(|&i| int(i)).collect::<Vec<_>>(),
            "reason": self.reason,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified(Certificate),
    Refused(Refusal),
}

impl Certification {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Refused(_) => None,
        }
    }
}

const WITNESS_RADIUS: usize = 2;

/// Certificate for the whole series (relative to `G_0 = {1}`).
pub fn certify_no_abelian_jumps(p: &Presentation) -> Result<Certification, GroupError> {
    certify_from_level(p, 0)
}

/// Certificate for the part of the series above `G_level`.
pub fn certify_from_level(p: &Presentation, level: usize) -> Result<Certification, GroupError> {
    let scan = abelian_jump_scan(p, WITNESS_RADIUS)?;
    let jumps: Vec<usize> = scan
        .iter()
        .filter(|r| r.index >= level && r.abelian_jump == Some(true))
        .map(|r| r.index)
        .collect();
    if jumps.is_empty() {
        return Ok(Certification::Certified(Certificate {
            presentation: p.name().to_string(),
            m: p.rank(),
            from_level: level,
        }));
    }
    let list = jumps
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let quotients = jumps
        .iter()
        .map(|i| format!("G_{}/G_{}", i + 2, i))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Certification::Refused(Refusal {
        presentation: p.name().to_string(),
        reason: format!(
            "abelian jump at level {list}: {quotients} free abelian of rank 2, so the conradian \
             preorders relative to that base form an infinite space with no isolated points and \
             no finite list is complete"
        ),
        jump_indices: jumps,
    }))
}

/// Largest level `l` such that the series above `G_l` certifies, scanning
/// downward from the top. `None` only for an empty presentation.
pub fn lowest_certified_level(p: &Presentation) -> Result<Option<usize>, GroupError> {
    let scan = abelian_jump_scan(p, WITNESS_RADIUS)?;
    let highest_jump = scan
        .iter()
        .filter(|r| r.abelian_jump == Some(true))
        .map(|r| r.index)
        .max();
    Ok(match highest_jump {
        None => Some(0),
        Some(i) if i < p.rank() => Some(i + 1),
        Some(_) => None,
    })
}
