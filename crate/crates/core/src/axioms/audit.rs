use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::group::{Ball, Group, GroupError};
use crate::preorder_core::{PreorderEvaluator, Sign};
use crate::report::{int, ReportElement};

pub const DEFAULT_N_MAX: u32 = 8;
const PERSISTENT_KEEP: usize = 8;

/// The audited clauses, in the order they are always checked and reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    ZeroSet,
    Inverse,
    Subsemigroup,
    Conradian,
    Properness,
}

impl Clause {
    pub const ALL: [Clause; 5] = [
        Clause::ZeroSet,
        Clause::Inverse,
        Clause::Subsemigroup,
        Clause::Conradian,
        Clause::Properness,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Clause::ZeroSet => "zero-set",
            Clause::Inverse => "inverse-symmetry",
            Clause::Subsemigroup => "subsemigroup",
            Clause::Conradian => "conradian-n2",
            Clause::Properness => "properness",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample<E> {
    pub elements: Vec<(&'static str, E)>,
    pub signs: Vec<(&'static str, Sign)>,
    pub note: String,
}

impl<E: ReportElement> Counterexample<E> {
    pub fn to_json(&self) -> Value {
        let mut elements = serde_json::Map::new();
        for (k, e) in &self.elements {
            elements.insert((*k).to_string(), e.to_json());
        }
        let mut signs = serde_json::Map::new();
        for (k, s) in &self.signs {
            signs.insert((*k).to_string(), json!(s.symbol()));
        }
        json!({ "elements": elements, "signs": signs, "note": self.note })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseResult<E> {
    pub clause: Clause,
    pub checked: u64,
    /// Instances dropped because some product left the evaluator's domain.
    pub skipped: u64,
    pub failures: u64,
    pub counterexample: Option<Counterexample<E>>,
}

impl<E> ClauseResult<E> {
    fn empty(clause: Clause) -> Self {
        ClauseResult {
            clause,
            checked: 0,
            skipped: 0,
            failures: 0,
            counterexample: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    fn absorb(&mut self, other: ClauseResult<E>) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }

    fn fail(&mut self, ce: impl FnOnce() -> Counterexample<E>) {
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(ce());
        }
    }
}

impl<E: ReportElement> ClauseResult<E> {
    pub fn to_json(&self) -> Value {
        json!({
            "clause": self.clause.id(),
            "pass": self.pass(),
            "checked": int(self.checked),
            "skipped": int(self.skipped),
            "failures": int(self.failures),
            "counterexample": self.counterexample.as_ref().map(Counterexample::to_json),
        })
    }
}

/// Secondary output of the conradian audit: for each positive pair, the
/// least `n` with `a^-1 b a^n` positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConradianStats<E> {
    pub n_max: u32,
    pub min_n_histogram: BTreeMap<u32, u64>,
    pub persistent_violations: Vec<(E, E)>,
    pub persistent_count: u64,
}

impl<E> ConradianStats<E> {
    pub fn max_min_n(&self) -> Option<u32> {
        self.min_n_histogram.keys().next_back().copied()
    }
}

impl<E: ReportElement> ConradianStats<E> {
    pub fn to_json(&self) -> Value {
        json!({
            "n_max": int(self.n_max),
            "min_n_histogram": self.min_n_histogram.iter()
                .map(|(n, c)| (n.to_string(), int(c)))
                .collect::<serde_json::Map<_, _>>(),
            "max_min_n": self.max_min_n().map(int),
            "persistent_count": int(self.persistent_count),
            "persistent_violations": self.persistent_violations.iter()
                .map(|(a, b)| json!([a.to_json(), b.to_json()]))
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport<E> {
    pub radius: usize,
    pub ball_size: usize,
    pub clauses: Vec<ClauseResult<E>>,
    pub conradian: Option<ConradianStats<E>>,
}

impl<E> AuditReport<E> {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(ClauseResult::pass)
    }

    pub fn clause(&self, c: Clause) -> Option<&ClauseResult<E>> {
        self.clauses.iter().find(|r| r.clause == c)
    }

    pub fn first_failure(&self) -> Option<&ClauseResult<E>> {
        self.clauses.iter().find(|r| !r.pass())
    }

    pub fn skipped(&self) -> u64 {
        self.clauses.iter().map(|c| c.skipped).sum()
    }
}

impl<E: ReportElement> AuditReport<E> {
    pub fn to_json(&self) -> Value {
        let checked: u64 = self.clauses.iter().map(|c| c.checked).sum();
        json!({
            "radius": int(self.radius),
            "ball_size": int(self.ball_size),
            "pass": self.pass(),
            "clauses": self.clauses.iter().map(ClauseResult::to_json).collect::<Vec<_>>(),
            "conradian_stats": self.conradian.as_ref().map(ConradianStats::to_json),
            "coverage": { "checked": int(checked), "skipped": int(self.skipped()) },
        })
    }
}

fn check_zero_set<E, F>(phi: &F, ball: &Ball<E>) -> ClauseResult<E>
where
    E: Clone + Ord,
    F: PreorderEvaluator<E> + ?Sized,
{
    let mut r = ClauseResult::empty(Clause::ZeroSet);
    for g in ball.iter() {
        if !phi.in_domain(g) {
            r.skipped += 1;
            continue;
        }
        r.checked += 1;
        let s = phi.sign(g);
        let base = phi.in_base(g);
        if (s == Sign::Zero) != base {
            r.fail(|| Counterexample {
                elements: vec![("g", g.clone())],
                signs: vec![("g", s)],
                note: if base {
                    "nonzero sign on a base element".into()
                } else {
                    "zero sign outside the base subgroup".into()
                },
            });
        }
    }
    r
}

fn check_inverse<G, F>(group: &G, phi: &F, ball: &Ball<G::Elem>) -> Result<ClauseResult<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let mut r = ClauseResult::empty(Clause::Inverse);
    for g in ball.iter() {
        let gi = group.invert(g)?;
        if !phi.in_domain(g) || !phi.in_domain(&gi) {
            r.skipped += 1;
            continue;
        }
        r.checked += 1;
        let (s, si) = (phi.sign(g), phi.sign(&gi));
        if si != -s {
            r.fail(|| Counterexample {
                elements: vec![("g", g.clone()), ("g_inv", gi.clone())],
                signs: vec![("g", s), ("g_inv", si)],
                note: "sign of the inverse is not the negated sign".into(),
            });
        }
    }
    Ok(r)
}

fn positives<E: Clone + Ord, F: PreorderEvaluator<E> + ?Sized>(phi: &F, ball: &Ball<E>) -> Vec<E> {
    ball.iter()
        .filter(|g| phi.in_domain(g) && phi.sign(g) == Sign::Positive)
        .cloned()
        .collect()
}

/// Runs `row` for every index in parallel and folds the rows in index order,
/// so the first counterexample is the same for any thread count.
fn fold_rows<E, T, R>(items: &[T], row: R, clause: Clause) -> Result<ClauseResult<E>, GroupError>
where
    E: Send,
    T: Sync,
    R: Fn(&T) -> Result<ClauseResult<E>, GroupError> + Sync + Send,
{
    let rows: Vec<Result<ClauseResult<E>, GroupError>> = items.par_iter().map(row).collect();
    let mut acc = ClauseResult::empty(clause);
    for r in rows {
        acc.absorb(r?);
    }
    Ok(acc)
}

fn check_subsemigroup<G, F>(group: &G, phi: &F, pos: &[G::Elem]) -> Result<ClauseResult<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    fold_rows(
        pos,
        |a| {
            let mut r = ClauseResult::empty(Clause::Subsemigroup);
            for b in pos {
                let ab = group.multiply(a, b)?;
                if !phi.in_domain(&ab) {
                    r.skipped += 1;
                    continue;
                }
                r.checked += 1;
                let s = phi.sign(&ab);
                if s != Sign::Positive {
                    r.fail(|| Counterexample {
                        elements: vec![("a", a.clone()), ("b", b.clone()), ("ab", ab.clone())],
                        signs: vec![("a", Sign::Positive), ("b", Sign::Positive), ("ab", s)],
                        note: "product of two positive elements is not positive".into(),
                    });
                }
            }
            Ok(r)
        },
        Clause::Subsemigroup,
    )
}

type ConradianOutcome<E> = (ClauseResult<E>, ConradianStats<E>);

struct ConradianRow<E> {
    result: ClauseResult<E>,
    histogram: BTreeMap<u32, u64>,
    persistent: Vec<(E, E)>,
}

fn check_conradian<G, F>(
    group: &G,
    phi: &F,
    pos: &[G::Elem],
    n_max: u32,
) -> Result<ConradianOutcome<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let n_max = n_max.max(2);
    let rows: Vec<Result<ConradianRow<G::Elem>, GroupError>> = pos
        .par_iter()
        .map(|a| {
            let mut row = ConradianRow {
                result: ClauseResult::empty(Clause::Conradian),
                histogram: BTreeMap::new(),
                persistent: Vec::new(),
            };
            let ai = group.invert(a)?;
            for b in pos {
                // y_n = a^-1 b a^n
                let mut y = group.multiply(&group.multiply(&ai, b)?, a)?;
                let mut min_n = None;
                let mut outside = false;
                for n in 1..=n_max {
                    if n > 1 {
                        y = group.multiply(&y, a)?;
                    }
                    if !phi.in_domain(&y) {
                        outside = true;
                        if n == 2 {
                            row.result.skipped += 1;
                        }
                        if n >= 2 {
                            break;
                        }
                        continue;
                    }
                    let s = phi.sign(&y);
                    if n == 2 {
                        row.result.checked += 1;
                        if s != Sign::Positive {
                            let y2 = y.clone();
                            row.result.fail(|| Counterexample {
                                elements: vec![("a", a.clone()), ("b", b.clone()), ("a^-1 b a^2", y2)],
                                signs: vec![("a", Sign::Positive), ("b", Sign::Positive), ("a^-1 b a^2", s)],
                                note: "a^-1 b a^2 is not positive for positive a, b".into(),
                            });
                        }
                    }
                    if s == Sign::Positive && min_n.is_none() {
                        min_n = Some(n);
                    }
                    if min_n.is_some() && n >= 2 {
                        break;
                    }
                }
                match min_n {
                    Some(n) => *row.histogram.entry(n).or_insert(0) += 1,
                    None if !outside => row.persistent.push((a.clone(), b.clone())),
                    None => {}
                }
            }
            Ok(row)
        })
        .collect();
    let mut result = ClauseResult::empty(Clause::Conradian);
    let mut stats = ConradianStats {
        n_max,
        min_n_histogram: BTreeMap::new(),
        persistent_violations: Vec::new(),
        persistent_count: 0,
    };
    for row in rows {
        let row = row?;
        result.absorb(row.result);
        for (n, c) in row.histogram {
            *stats.min_n_histogram.entry(n).or_insert(0) += c;
        }
        stats.persistent_count += row.persistent.len() as u64;
        for pair in row.persistent {
            if stats.persistent_violations.len() < PERSISTENT_KEEP {
                stats.persistent_violations.push(pair);
            }
        }
    }
    Ok((result, stats))
}

fn check_properness<G, F>(group: &G, phi: &F) -> ClauseResult<G::Elem>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let mut r = ClauseResult::empty(Clause::Properness);
    let gens = group.generators();
    r.checked = gens.len() as u64;
    let proper = gens
        .iter()
        .any(|g| phi.in_domain(g) && phi.sign(g) != Sign::Zero);
    if !proper {
        r.fail(|| Counterexample {
            elements: gens.iter().map(|g| ("generator", g.clone())).collect(),
            signs: vec![],
            note: "every generator has sign 0, so the preorder is trivial".into(),
        });
    }
    r
}

/// Zero-set, inverse, subsemigroup and properness clauses on the ball.
pub fn cone_axiom_audit<G, F>(group: &G, phi: &F, ball: &Ball<G::Elem>) -> Result<AuditReport<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let pos = positives(phi, ball);
    Ok(AuditReport {
        radius: ball.radius,
        ball_size: ball.len(),
        clauses: vec![
            check_zero_set(phi, ball),
            check_inverse(group, phi, ball)?,
            check_subsemigroup(group, phi, &pos)?,
            check_properness(group, phi),
        ],
        conradian: None,
    })
}

/// The `n = 2` conradian clause on all positive pairs of the ball.
pub fn conradian_audit<G, F>(
    group: &G,
    phi: &F,
    ball: &Ball<G::Elem>,
    n_max: u32,
) -> Result<AuditReport<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let pos = positives(phi, ball);
    let (c, stats) = check_conradian(group, phi, &pos, n_max)?;
    Ok(AuditReport {
        radius: ball.radius,
        ball_size: ball.len(),
        clauses: vec![c],
        conradian: Some(stats),
    })
}

/// All five clauses in their fixed order.
pub fn full_audit<G, F>(
    group: &G,
    phi: &F,
    ball: &Ball<G::Elem>,
    n_max: u32,
) -> Result<AuditReport<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    let pos = positives(phi, ball);
    let (c, stats) = check_conradian(group, phi, &pos, n_max)?;
    Ok(AuditReport {
        radius: ball.radius,
        ball_size: ball.len(),
        clauses: vec![
            check_zero_set(phi, ball),
            check_inverse(group, phi, ball)?,
            check_subsemigroup(group, phi, &pos)?,
            c,
            check_properness(group, phi),
        ],
        conradian: Some(stats),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityReport<E> {
    pub radius: usize,
    pub subgroup: String,
    pub pairs_compared: u64,
    pub skipped: u64,
    /// `(a, b, c)` with `a, c` in the subgroup, `a ⪯ b ⪯ c` and `b` outside it.
    pub counterexample: Option<(E, E, E)>,
}

impl<E> ConvexityReport<E> {
    pub fn pass(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl<E: ReportElement> ConvexityReport<E> {
    pub fn to_json(&self) -> Value {
        json!({
            "radius": int(self.radius),
            "subgroup": self.subgroup,
            "pass": self.pass(),
            "pairs_compared": int(self.pairs_compared),
            "skipped": int(self.skipped),
            "counterexample": self.counterexample.as_ref().map(|(a, b, c)| json!({
                "a": a.to_json(), "b": b.to_json(), "c": c.to_json(),
            })),
        })
    }
}

/// Is `{g ∈ ball : in_subgroup(g)}` convex for the preorder on the ball?
pub fn convexity_audit<G, F, H>(
    group: &G,
    phi: &F,
    ball: &Ball<G::Elem>,
    in_subgroup: H,
    label: &str,
) -> Result<ConvexityReport<G::Elem>, GroupError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
    H: Fn(&G::Elem) -> bool + Sync,
{
    let inside: Vec<&G::Elem> = ball.iter().filter(|g| in_subgroup(g)).collect();
    let inside_inv: Vec<G::Elem> = inside
        .iter()
        .map(|a| group.invert(a))
        .collect::<Result<_, _>>()?;
    let outside: Vec<&G::Elem> = ball.iter().filter(|g| !in_subgroup(g)).collect();

    type Row<E> = (u64, u64, Option<(E, E, E)>);
    let rows: Vec<Result<Row<G::Elem>, GroupError>> = outside
        .par_iter()
        .map(|b| {
            let (mut compared, mut skipped) = (0u64, 0u64);
            let bi = group.invert(b)?;
            let mut below = None;
            for (a, ai) in inside.iter().zip(&inside_inv) {
                let d = group.multiply(ai, b)?;
                if !phi.in_domain(&d) {
                    skipped += 1;
                    continue;
                }
                compared += 1;
                if phi.sign(&d) != Sign::Negative {
                    below = Some(*a);
                    break;
                }
            }
            let mut above = None;
            if below.is_some() {
                for c in &inside {
                    let d = group.multiply(&bi, c)?;
                    if !phi.in_domain(&d) {
                        skipped += 1;
                        continue;
                    }
                    compared += 1;
                    if phi.sign(&d) != Sign::Negative {
                        above = Some(*c);
                        break;
                    }
                }
            }
            let ce = match (below, above) {
                (Some(a), Some(c)) => Some((a.clone(), (*b).clone(), c.clone())),
                _ => None,
            };
            Ok((compared, skipped, ce))
        })
        .collect();
    let mut report = ConvexityReport {
        radius: ball.radius,
        subgroup: label.to_string(),
        pairs_compared: 0,
        skipped: 0,
        counterexample: None,
    };
    for row in rows {
        let (c, s, ce) = row?;
        report.pairs_compared += c;
        report.skipped += s;
        if report.counterexample.is_none() {
            report.counterexample = ce;
        }
    }
    Ok(report)
}
