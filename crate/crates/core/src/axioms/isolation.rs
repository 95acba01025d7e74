use serde_json::{json, Value};

use super::abelian::{abelian_witness_suite, LinearFunctional, SuiteError};
use crate::group::{Ball, Group, GroupError};
use crate::preorder_core::{PreorderEvaluator, Sign, SignVectorCone};
use crate::report::{int, ReportElement};
use crate::series_analysis::{certify_from_level, Certification};
use crate::word_core::{ExponentVector, Presentation};

/// Subsets up to this size are searched exhaustively before falling back to greedy.
pub const EXACT_SUBSET_MAX: usize = 3;
const EXACT_CANDIDATE_MAX: usize = 96;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isolation<E> {
    /// Agreeing with the target on these elements singles it out in the family.
    IsolatedBy { elements: Vec<E>, minimal: bool },
    /// Members that agree with the target on the whole ball.
    NotSeparatedAtRadius { radius: usize, remaining: Vec<usize> },
}

impl<E: ReportElement> Isolation<E> {
    pub fn to_json(&self) -> Value {
        match self {
            Isolation::IsolatedBy { elements, minimal } => json!({
                "isolated": true,
                "separating_set": elements.iter().map(ReportElement::to_json).collect::<Vec<_>>(),
                "size": int(elements.len()),
                "minimal": minimal,
            }),
            Isolation::NotSeparatedAtRadius { radius, remaining } => json!({
                "isolated": false,
                "radius": int(*radius),
                "unseparated_members": remaining.iter().map(|&i| int(i)).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Generators first, then their inverses, then the rest of the ball in order.
fn candidates<G: Group>(group: &G, ball: &Ball<G::Elem>) -> Result<Vec<G::Elem>, GroupError> {
    let id = group.identity();
    let gens = group.generators();
    let mut out: Vec<G::Elem> = Vec::new();
    let inv: Vec<G::Elem> = gens.iter().map(|g| group.invert(g)).collect::<Result<_, _>>()?;
    for g in gens.into_iter().chain(inv).chain(ball.iter().cloned()) {
        if g != id && ball.contains(&g) && !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A smallest set of ball elements on which no other family member agrees
/// with `family[target]`.
pub fn isolation_check<G, F>(
    group: &G,
    target: usize,
    family: &[F],
    ball: &Ball<G::Elem>,
) -> Result<Isolation<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem>,
{
    assert!(target < family.len(), "target must be a member of the family");
    let cands = candidates(group, ball)?;
    let sig = |f: &F| -> Vec<Sign> { cands.iter().map(|g| f.sign(g)).collect() };
    let t = sig(&family[target]);
    let others: Vec<(usize, Vec<Sign>)> = family
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != target)
        .map(|(i, f)| (i, sig(f)))
        .collect();
    // differs[o] = candidate positions where member o disagrees with the target
    let differs: Vec<Vec<bool>> = others
        .iter()
        .map(|(_, s)| s.iter().zip(&t).map(|(a, b)| a != b).collect())
        .collect();
    let stuck: Vec<usize> = others
        .iter()
        .zip(&differs)
        .filter(|(_, d)| !d.iter().any(|&x| x))
        .map(|((i, _), _)| *i)
        .collect();
    if !stuck.is_empty() {
        return Ok(Isolation::NotSeparatedAtRadius {
            radius: ball.radius,
            remaining: stuck,
        });
    }
    let separates = |set: &[usize]| differs.iter().all(|d| set.iter().any(|&c| d[c]));
    let n = cands.len();
    if n <= EXACT_CANDIDATE_MAX {
        for size in 0..=EXACT_SUBSET_MAX.min(n) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                if separates(&idx) {
                    return Ok(Isolation::IsolatedBy {
                        elements: idx.iter().map(|&c| cands[c].clone()).collect(),
                        minimal: true,
                    });
                }
                if size == 0 || !next_combination(&mut idx, n) {
                    break;
                }
            }
        }
    }
    // greedy cover of the remaining members
    let mut open: Vec<usize> = (0..differs.len()).collect();
    let mut chosen = Vec::new();
    while !open.is_empty() {
        let best = (0..n)
            .max_by_key(|&c| (open.iter().filter(|&&o| differs[o][c]).count(), std::cmp::Reverse(c)))
            .expect("nonempty candidate list");
        chosen.push(best);
        open.retain(|&o| !differs[o][best]);
    }
    Ok(Isolation::IsolatedBy {
        elements: chosen.iter().map(|&c| cands[c].clone()).collect(),
        minimal: false,
    })
}

/// A preorder in the ambient family used to test isolation in the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyMember {
    Cone(SignVectorCone),
    Functional(LinearFunctional),
}

impl FamilyMember {
    pub fn id(&self) -> String {
        match self {
            FamilyMember::Cone(c) => c.id(),
            FamilyMember::Functional(f) => f.id(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FamilyMember::Cone(c) => c.to_json(),
            FamilyMember::Functional(f) => f.to_json(),
        }
    }
}

impl PreorderEvaluator<ExponentVector> for FamilyMember {
    fn sign(&self, g: &ExponentVector) -> Sign {
        match self {
            FamilyMember::Cone(c) => c.sign(g),
            FamilyMember::Functional(f) => f.sign(g),
        }
    }

    fn in_base(&self, g: &ExponentVector) -> bool {
        match self {
            FamilyMember::Cone(c) => c.in_base(g),
            FamilyMember::Functional(f) => f.in_base(g),
        }
    }

    fn in_domain(&self, g: &ExponentVector) -> bool {
        match self {
            FamilyMember::Cone(c) => c.in_domain(g),
            FamilyMember::Functional(f) => f.in_domain(g),
        }
    }
}

pub const AMBIENT_SUITE_SIZE: usize = 5;

/// Every listable conradian preorder around the series: the cones at each
/// certified level, plus on `ℤ²` the witness-suite functionals and their
/// negations (those whose kernel is `G_1` duplicate the level-1 cones and are dropped).
pub fn ambient_family(p: &Presentation) -> Result<Vec<FamilyMember>, GroupError> {
    let mut out = Vec::new();
    for l in 0..p.rank() {
        if let Certification::Certified(_) = certify_from_level(p, l)? {
            let cones = SignVectorCone::all_at_level(p.rank(), l)
                .expect("level below rank");
            out.extend(cones.into_iter().map(FamilyMember::Cone));
        }
    }
    match abelian_witness_suite(p, AMBIENT_SUITE_SIZE) {
        Ok(suite) => {
            for f in suite {
                if num_traits::Zero::is_zero(&f.p) {
                    continue;
                }
                let neg = f.negated();
                out.push(FamilyMember::Functional(f));
                out.push(FamilyMember::Functional(neg));
            }
        }
        Err(SuiteError::NotZ2(_)) => {}
        Err(e @ SuiteError::Budget { .. }) => unreachable!("{e}"),
    }
    Ok(out)
}
