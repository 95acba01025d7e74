use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{CosetAction, DynamicsError, OrderedAction};
use crate::group::{Group, GroupError};
use crate::preorder_core::{PreorderEvaluator, Sign};
use crate::report::{int, ReportElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingWitness<E, P> {
    pub alpha: E,
    pub beta: E,
    pub alpha_word: Option<String>,
    pub beta_word: Option<String>,
    pub u: P,
    pub v: P,
    pub w: P,
    pub n: u64,
    pub m: u64,
    pub n_check_bound: u64,
    /// Extra points `(y, y')` in `[u, v]` with `β(y) <= y` and `α(y') >= y'`.
    pub barriers: Option<(P, P)>,
    pub monotone_certificate: bool,
}

fn labelled<E: ReportElement>(e: &E, word: &Option<String>) -> Value {
    json!({ "word": word, "element": e.to_json() })
}

impl<E: ReportElement, P: ReportElement> CrossingWitness<E, P> {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": labelled(&self.alpha, &self.alpha_word),
            "beta": labelled(&self.beta, &self.beta_word),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "w": self.w.to_json(),
            "N": int(self.n),
            "M": int(self.m),
            "n_check_bound": int(self.n_check_bound),
            "monotone_certificate": self.monotone_certificate,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    /// With a monotone certificate condition 2 holds for every `n`, not just up to the bound.
    Verified { monotone_certificate: bool },
    Refuted { condition: u8, n: Option<u64> },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verification::Verified { monotone_certificate } => json!({
                "verified": true,
                "monotone_certificate": monotone_certificate,
            }),
            Verification::Refuted { condition, n } => json!({
                "verified": false,
                "condition": int(condition),
                "n": n.map(int),
            }),
        }
    }
}

fn lt<A: OrderedAction>(act: &A, x: &A::Point, y: &A::Point) -> Result<bool, GroupError> {
    Ok(act.compare(x, y)? == Ordering::Less)
}

fn le<A: OrderedAction>(act: &A, x: &A::Point, y: &A::Point) -> Result<bool, GroupError> {
    Ok(act.compare(x, y)? != Ordering::Greater)
}

fn orbit<A: OrderedAction>(act: &A, g: &A::Elem, x: &A::Point, n: u64) -> Result<Vec<A::Point>, GroupError> {
    let mut out = Vec::with_capacity(n as usize);
    let mut y = x.clone();
    for _ in 0..n {
        y = act.apply(g, &y)?;
        out.push(y.clone());
    }
    Ok(out)
}

/// Checks the three crossing conditions; condition 2 up to `n_check_bound`.
pub fn verify_crossing<A: OrderedAction>(
    act: &A,
    cand: &CrossingWitness<A::Elem, A::Point>,
) -> Result<Verification, DynamicsError> {
    let needed = cand.n.max(cand.m);
    if cand.n_check_bound < needed {
        return Err(DynamicsError::BadBound {
            bound: cand.n_check_bound,
            needed,
        });
    }
    let (u, v, w) = (&cand.u, &cand.v, &cand.w);
    if !(lt(act, u, w)? && lt(act, w, v)?) {
        return Ok(Verification::Refuted { condition: 1, n: None });
    }
    let bu = orbit(act, &cand.beta, u, cand.n_check_bound)?;
    let av = orbit(act, &cand.alpha, v, cand.n_check_bound)?;
    for (i, (b, a)) in bu.iter().zip(&av).enumerate() {
        if !(lt(act, b, v)? && lt(act, u, a)?) {
            return Ok(Verification::Refuted {
                condition: 2,
                n: Some(i as u64 + 1),
            });
        }
    }
    let a_n = orbit(act, &cand.alpha, v, cand.n)?;
    let b_m = orbit(act, &cand.beta, u, cand.m)?;
    let a_n = a_n.last().unwrap_or(v);
    let b_m = b_m.last().unwrap_or(u);
    if !(lt(act, a_n, w)? && lt(act, w, b_m)?) {
        return Ok(Verification::Refuted { condition: 3, n: None });
    }

    // β(y) <= y for some y in [u, v] traps every β^n(u) below v, and
    // symmetrically for α; u < v makes both bounds strict.
    let mut pool: Vec<&A::Point> = vec![u, v, w];
    pool.extend(bu.iter());
    pool.extend(av.iter());
    if let Some((y, y2)) = &cand.barriers {
        pool.push(y);
        pool.push(y2);
    }
    let mut beta_trap = false;
    let mut alpha_trap = false;
    for y in pool {
        if !(le(act, u, y)? && le(act, y, v)?) {
            continue;
        }
        beta_trap = beta_trap || le(act, &act.apply(&cand.beta, y)?, y)?;
        alpha_trap = alpha_trap || le(act, y, &act.apply(&cand.alpha, y)?)?;
        if beta_trap && alpha_trap {
            break;
        }
    }
    Ok(Verification::Verified {
        monotone_certificate: beta_trap && alpha_trap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub word_bound: usize,
    pub n_bound: u64,
    /// Accept only witnesses whose condition 2 is backed by a monotone certificate.
    pub require_certificate: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            word_bound: 3,
            n_bound: 4,
            require_certificate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<E, P> {
    Found(CrossingWitness<E, P>),
    NoneFound {
        elements: usize,
        points: usize,
        pairs: u64,
    },
}

impl<E: ReportElement, P: ReportElement> SearchOutcome<E, P> {
    pub fn to_json(&self) -> Value {
        match self {
            SearchOutcome::Found(w) => json!({ "found": true, "witness": w.to_json() }),
            SearchOutcome::NoneFound {
                elements,
                points,
                pairs,
            } => json!({
                "found": false,
                "searched": {
                    "elements": int(elements),
                    "distinct_points": int(points),
                    "pairs": int(pairs),
                },
            }),
        }
    }
}

/// Distinct non-identity products of at most `word_bound` letters, by word
/// length then lexicographically; each keeps the first word spelling it.
pub fn word_elements<A: OrderedAction>(
    act: &A,
    letters: &[(String, A::Elem)],
    word_bound: usize,
) -> Result<Vec<(String, A::Elem)>, GroupError> {
    let id = act.identity();
    let mut seen = BTreeSet::new();
    seen.insert(id.clone());
    let mut out = Vec::new();
    // words of the current length, with their products
    let mut layer: Vec<(Vec<usize>, A::Elem)> = vec![(vec![], id)];
    for _ in 0..word_bound {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for (word, g) in &layer {
            for (li, (_, l)) in letters.iter().enumerate() {
                let mut w = word.clone();
                w.push(li);
                next.push((w, act.compose(g, l)?));
            }
        }
        for (w, g) in &next {
            if seen.insert(g.clone()) {
                let label = w.iter().map(|&i| letters[i].0.as_str()).collect::<Vec<_>>().join(" ");
                out.push((label, g.clone()));
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Points up to the action's order: representatives in first-seen order,
/// plus the sorted list of those representatives.
struct Ranked<P> {
    points: Vec<P>,
    sorted: Vec<usize>,
    rank: Vec<usize>,
}

fn locate<A: OrderedAction>(
    act: &A,
    points: &[A::Point],
    sorted: &[usize],
    x: &A::Point,
) -> Result<Result<usize, usize>, GroupError> {
    let (mut lo, mut hi) = (0, sorted.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        match act.compare(&points[sorted[mid]], x)? {
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return Ok(Ok(mid)),
        }
    }
    Ok(Err(lo))
}

impl<P: Clone> Ranked<P> {
    fn new<A: OrderedAction<Point = P>>(act: &A, pts: &[P]) -> Result<Self, GroupError> {
        let mut points: Vec<P> = Vec::new();
        let mut sorted: Vec<usize> = Vec::new();
        for p in pts {
            if let Err(pos) = locate(act, &points, &sorted, p)? {
                points.push(p.clone());
                sorted.insert(pos, points.len() - 1);
            }
        }
        let mut rank = vec![0; points.len()];
        for (r, &i) in sorted.iter().enumerate() {
            rank[i] = r;
        }
        Ok(Ranked { points, sorted, rank })
    }

    /// Any point as an integer key: `2r + 1` at the `r`-th point, even between points.
    fn key<A: OrderedAction<Point = P>>(&self, act: &A, x: &P) -> Result<u64, GroupError> {
        Ok(match locate(act, &self.points, &self.sorted, x)? {
            Ok(r) => 2 * r as u64 + 1,
            Err(r) => 2 * r as u64,
        })
    }
}

type PairResult<A> = Result<Option<CrossingWitness<<A as OrderedAction>::Elem, <A as OrderedAction>::Point>>, DynamicsError>;

fn search_pair<A: OrderedAction>(
    act: &A,
    ranked: &Ranked<A::Point>,
    alpha: &(String, A::Elem),
    beta: &(String, A::Elem),
    cfg: &SearchConfig,
) -> PairResult<A> {
    let nb = cfg.n_bound as usize;
    let np = ranked.points.len();
    let own: Vec<u64> = ranked.rank.iter().map(|&r| 2 * r as u64 + 1).collect();
    let orbit_keys = |g: &A::Elem| -> Result<Vec<Vec<u64>>, GroupError> {
        ranked
            .points
            .iter()
            .map(|p| {
                orbit(act, g, p, cfg.n_bound)?
                    .iter()
                    .map(|y| ranked.key(act, y))
                    .collect()
            })
            .collect()
    };
    let ao = orbit_keys(&alpha.1)?;
    let bo = orbit_keys(&beta.1)?;

    // traps counted by rank, for interval queries
    let mut beta_trap = vec![0usize; np + 1];
    let mut alpha_trap = vec![0usize; np + 1];
    for d in 0..np {
        let r = ranked.rank[d];
        beta_trap[r + 1] = usize::from(bo[d][0] <= own[d]);
        alpha_trap[r + 1] = usize::from(ao[d][0] >= own[d]);
    }
    for r in 0..np {
        beta_trap[r + 1] += beta_trap[r];
        alpha_trap[r + 1] += alpha_trap[r];
    }
    let first_in = |trap: &[usize], lo: usize, hi: usize| -> Option<usize> {
        if trap[hi + 1] == trap[lo] {
            return None;
        }
        (lo..=hi).find(|&r| trap[r + 1] > trap[r])
    };

    for u in 0..np {
        for v in 0..np {
            if own[u] >= own[v] {
                continue;
            }
            let (ku, kv) = (own[u], own[v]);
            if !(0..nb).all(|i| bo[u][i] < kv && ku < ao[v][i]) {
                continue;
            }
            let (ru, rv) = (ranked.rank[u], ranked.rank[v]);
            let traps = match (first_in(&beta_trap, ru, rv), first_in(&alpha_trap, ru, rv)) {
                (Some(y), Some(y2)) => Some((y, y2)),
                _ => None,
            };
            if cfg.require_certificate && traps.is_none() {
                continue;
            }
            for (w, &kw) in own.iter().enumerate() {
                if !(ku < kw && kw < kv) {
                    continue;
                }
                let n = (0..nb).find(|&i| ao[v][i] < kw);
                let m = (0..nb).find(|&i| kw < bo[u][i]);
                let (Some(n), Some(m)) = (n, m) else {
                    continue;
                };
                let pt = |r: usize| ranked.points[ranked.sorted[r]].clone();
                let mut cand = CrossingWitness {
                    alpha: alpha.1.clone(),
                    beta: beta.1.clone(),
                    alpha_word: Some(alpha.0.clone()),
                    beta_word: Some(beta.0.clone()),
                    u: ranked.points[u].clone(),
                    v: ranked.points[v].clone(),
                    w: ranked.points[w].clone(),
                    n: n as u64 + 1,
                    m: m as u64 + 1,
                    n_check_bound: cfg.n_bound,
                    barriers: traps.map(|(y, y2)| (pt(y), pt(y2))),
                    monotone_certificate: false,
                };
                if let Verification::Verified { monotone_certificate } = verify_crossing(act, &cand)? {
                    if monotone_certificate || !cfg.require_certificate {
                        cand.monotone_certificate = monotone_certificate;
                        return Ok(Some(cand));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// First crossing in search order: `α` then `β` over [`word_elements`],
/// then `u, v, w` over the distinct points in the given order, with the
/// least `N, M <= n_bound`. The result does not depend on the thread count.
pub fn crossing_search<A: OrderedAction>(
    act: &A,
    letters: &[(String, A::Elem)],
    points: &[A::Point],
    cfg: &SearchConfig,
) -> Result<SearchOutcome<A::Elem, A::Point>, DynamicsError> {
    if cfg.word_bound < 1 || cfg.n_bound < 1 {
        return Err(DynamicsError::BoundTooSmall { min: 1 });
    }
    let elems = word_elements(act, letters, cfg.word_bound)?;
    let ranked = Ranked::new(act, points)?;
    let found = elems
        .par_iter()
        .map(|alpha| -> PairResult<A> {
            for beta in &elems {
                if let Some(w) = search_pair(act, &ranked, alpha, beta, cfg)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        Some(Ok(Some(w))) => Ok(SearchOutcome::Found(w)),
        Some(Err(e)) => Err(e),
        _ => Ok(SearchOutcome::NoneFound {
            elements: elems.len(),
            points: ranked.points.len(),
            pairs: (elems.len() * elems.len()) as u64,
        }),
    }
}

/// The crossing built from a bounded conradian violation: positive `a, b`
/// with `a^-1 b a^n` never positive for `n <= bound`. Roles are `α = b`,
/// `β = a`, `u = C`, `v = b^-1 a C`, `w = a^2 C`, `N = 1`, `M = 3`.
pub fn crossing_from_violation<G, F>(
    group: &G,
    phi: &F,
    a: &G::Elem,
    b: &G::Elem,
    bound: u64,
) -> Result<CrossingWitness<G::Elem, G::Elem>, DynamicsError>
where
    G: Group,
    F: PreorderEvaluator<G::Elem> + ?Sized,
{
    if bound < 4 {
        return Err(DynamicsError::BoundTooSmall { min: 4 });
    }
    if phi.sign(a) != Sign::Positive || phi.sign(b) != Sign::Positive {
        return Err(DynamicsError::NotAViolation("a and b must both be positive".into()));
    }
    let ai = group.invert(a)?;
    let mut y = group.multiply(&ai, b)?;
    for n in 1..=bound {
        y = group.multiply(&y, a)?;
        if phi.sign(&y) == Sign::Positive {
            return Err(DynamicsError::NotAViolation(format!("a^-1 b a^{n} is positive")));
        }
    }
    let bi = group.invert(b)?;
    let cand = CrossingWitness {
        alpha: b.clone(),
        beta: a.clone(),
        alpha_word: None,
        beta_word: None,
        u: group.identity(),
        v: group.multiply(&bi, a)?,
        w: group.multiply(a, a)?,
        n: 1,
        m: 3,
        n_check_bound: bound - 1,
        barriers: None,
        monotone_certificate: false,
    };
    let act = CosetAction::new(group, phi);
    match verify_crossing(&act, &cand)? {
        Verification::Verified { monotone_certificate } => Ok(CrossingWitness {
            monotone_certificate,
            ..cand
        }),
        Verification::Refuted { condition, n } => Err(DynamicsError::VerificationFailed { condition, n }),
    }
}
