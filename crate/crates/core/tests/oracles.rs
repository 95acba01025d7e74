//! Collection checked against faithful models built independently of the
//! presentation machinery.

use std::collections::{BTreeSet, VecDeque};

use conradian::corpus;
use conradian::{ball, ExponentVector, Group, Presentation, Word};
use proptest::prelude::*;

/// `x ↦ D x + c` on `ℤ^n` with `D` diagonal `±1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Affine {
    d: Vec<i64>,
    c: Vec<i64>,
}

impl Affine {
    fn id(n: usize) -> Self {
        Affine { d: vec![1; n], c: vec![0; n] }
    }

    fn then_after(&self, other: &Affine) -> Affine {
        // self ∘ other
        Affine {
            d: self.d.iter().zip(&other.d).map(|(a, b)| a * b).collect(),
            c: (0..self.c.len()).map(|i| self.d[i] * other.c[i] + self.c[i]).collect(),
        }
    }

    fn inverse(&self) -> Affine {
        Affine {
            d: self.d.clone(),
            c: (0..self.c.len()).map(|i| -self.d[i] * self.c[i]).collect(),
        }
    }
}

/// Generator `i` of `T_n` shifts coordinate `i` and reflects coordinate `i - 1`.
fn tn_generator(n: usize, i: usize) -> Affine {
    let mut g = Affine::id(n);
    g.c[i] = 1;
    if i > 0 {
        g.d[i - 1] = -1;
    }
    g
}

fn tn_word(n: usize, w: &[(usize, i64)]) -> Affine {
    let mut acc = Affine::id(n);
    for &(g, e) in w {
        let base = tn_generator(n, g);
        let step = if e < 0 { base.inverse() } else { base };
        for _ in 0..e.abs() {
            acc = acc.then_after(&step);
        }
    }
    acc
}

/// Upper unitriangular `[[1,a,c],[0,1,b],[0,0,1]]` as `(a, b, c)`.
type Uni = (i64, i64, i64);

fn uni_mul(x: Uni, y: Uni) -> Uni {
    (x.0 + y.0, x.1 + y.1, x.2 + y.2 + x.0 * y.1)
}

fn uni_pow(x: Uni, e: i64) -> Uni {
    let step = if e < 0 { (-x.0, -x.1, -x.2 + x.0 * x.1) } else { x };
    (0..e.abs()).fold((0, 0, 0), |acc, _| uni_mul(acc, step))
}

/// `x_1` central, `x_2 = X`, `x_3 = Y`.
fn heis_generator(i: usize) -> Uni {
    [(0, 0, 1), (1, 0, 0), (0, 1, 0)][i]
}

fn heis_word(w: &[(usize, i64)]) -> Uni {
    w.iter().fold((0, 0, 0), |acc, &(g, e)| uni_mul(acc, uni_pow(heis_generator(g), e)))
}

fn heis_normal_form(e: &ExponentVector) -> Uni {
    let v: Vec<i64> = e.0.iter().map(|x| x.try_into().unwrap()).collect();
    heis_word(&[(0, v[0]), (1, v[1]), (2, v[2])])
}

fn nf(e: &ExponentVector) -> Vec<(usize, i64)> {
    e.0.iter().enumerate().map(|(i, x)| (i, i64::try_from(x).unwrap())).collect()
}

fn word_strategy(m: usize, len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..m, -3i64..=3), 0..=len)
}

proptest! {
    #[test]
    fn tn_collection_matches_affine_model(n in 1usize..=4, w in word_strategy(4, 12)) {
        let w: Vec<(usize, i64)> = w.into_iter().map(|(g, e)| (g % n, e)).collect();
        let p = corpus::rivas_family(n);
        let e = p.collect(&Word::from_pairs(&w)).unwrap();
        prop_assert_eq!(tn_word(n, &nf(&e)), tn_word(n, &w));
    }

    #[test]
    fn klein_collection_matches_affine_model(w in word_strategy(2, 12)) {
        let p = corpus::load("klein");
        let e = p.collect(&Word::from_pairs(&w)).unwrap();
        prop_assert_eq!(tn_word(2, &nf(&e)), tn_word(2, &w));
    }

    #[test]
    fn heisenberg_collection_matches_matrices(w in word_strategy(3, 12)) {
        let p = corpus::load("heis");
        let e = p.collect(&Word::from_pairs(&w)).unwrap();
        prop_assert_eq!(heis_normal_form(&e), heis_word(&w));
    }

    #[test]
    fn affine_model_is_faithful_on_normal_forms(e in prop::collection::vec(-4i64..=4, 3)) {
        // the image of the origin reads back the exponents
        let g = tn_word(3, &[(0, e[0]), (1, e[1]), (2, e[2])]);
        prop_assert_eq!(g.c, e);
    }
}

#[test]
fn klein_relation_in_the_model() {
    // b a b^-1 = a^-1
    assert_eq!(tn_word(2, &[(1, 1), (0, 1), (1, -1)]), tn_word(2, &[(0, -1)]));
}

/// Breadth-first ball in the affine model, independent of collection.
fn oracle_ball_size(n: usize, radius: usize) -> usize {
    let letters: Vec<Affine> = (0..n)
        .flat_map(|i| [tn_generator(n, i), tn_generator(n, i).inverse()])
        .collect();
    let mut seen = BTreeSet::new();
    seen.insert(Affine::id(n));
    let mut frontier = VecDeque::from([(Affine::id(n), 0usize)]);
    while let Some((g, d)) = frontier.pop_front() {
        if d == radius {
            continue;
        }
        for l in &letters {
            let h = g.then_after(l);
            if seen.insert(h.clone()) {
                frontier.push_back((h, d + 1));
            }
        }
    }
    seen.len()
}

#[test]
fn klein_ball_of_radius_two_has_thirteen_elements() {
    let p = corpus::load("klein");
    assert_eq!(ball(&p, 2).unwrap().len(), 13);
    assert_eq!(oracle_ball_size(2, 2), 13);
}

#[test]
fn tn_ball_sizes_match_the_model() {
    for n in 2..=3 {
        for r in 0..=4 {
            let p = corpus::rivas_family(n);
            assert_eq!(ball(&p, r).unwrap().len(), oracle_ball_size(n, r), "T_{n} radius {r}");
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn free_abelian(m: usize) -> Presentation {
    conradian::word_core::parse_presentation(&format!("name z{m}\ngens {m}\n")).unwrap()
}

#[test]
fn free_abelian_balls_are_lattice_balls() {
    for m in 1..=3usize {
        let p = free_abelian(m);
        for r in 0..=5usize {
            let formula: u64 = (0..=m as u64)
                .map(|k| (1 << k) * binomial(m as u64, k) * binomial(r as u64, k))
                .sum();
            let b = ball(&p, r).unwrap();
            let direct = b
                .iter()
                .filter(|g| g.0.iter().map(|x| i64::try_from(x).unwrap().abs()).sum::<i64>() <= r as i64)
                .count();
            assert_eq!(b.len() as u64, formula, "m={m} r={r}");
            assert_eq!(direct, b.len());
        }
    }
}

#[test]
fn ball_is_generated_by_letters() {
    let p = corpus::load("heis");
    let b1 = ball(&p, 1).unwrap();
    let mut expected = vec![p.identity()];
    expected.extend(p.letters().unwrap());
    expected.sort();
    assert_eq!(b1.elements, expected);
}
