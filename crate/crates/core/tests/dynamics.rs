use std::cmp::Ordering;
use std::time::Instant;

use conradian::axioms::conradian_audit;
use conradian::dynamics::{
    bs12_affine_action, bs12_eval_at_zero_preorder, crossing_from_violation, crossing_search, dyadic_points,
    verify_crossing, AffineMap, Bs12, CosetAction, CrossingWitness, Dyadic, IntegerTranslation, OrderedAction,
    SearchConfig, SearchOutcome, Verification,
};
use conradian::{ball, corpus, Group, SignVectorCone};
use num_bigint::BigInt;

fn d(s: &str) -> Dyadic {
    Dyadic::parse(s).unwrap()
}

fn bs12_letters() -> Vec<(String, AffineMap)> {
    Bs12.letters()
        .unwrap()
        .into_iter()
        .zip(Bs12::LETTER_NAMES)
        .map(|(g, n)| (n.to_string(), g))
        .collect()
}

fn canonical() -> CrossingWitness<AffineMap, Dyadic> {
    CrossingWitness {
        alpha: AffineMap::t().inverse(),
        beta: AffineMap::a().compose(&AffineMap::t().inverse()),
        alpha_word: None,
        beta_word: None,
        u: d("0"),
        v: d("2"),
        w: d("1"),
        n: 2,
        m: 2,
        n_check_bound: 4,
        barriers: None,
        monotone_certificate: false,
    }
}

#[test]
fn canonical_bs12_witness_verifies_with_certificate() {
    let act = bs12_affine_action();
    let w = canonical();
    // α^2(2) = 1/2 < 1 < 3/2 = β^2(0)
    assert_eq!(w.alpha.apply(&w.alpha.apply(&w.v)), d("1/2"));
    assert_eq!(w.beta.apply(&w.beta.apply(&w.u)), d("3/2"));
    assert_eq!(
        verify_crossing(&act, &w).unwrap(),
        Verification::Verified { monotone_certificate: true }
    );
}

#[test]
fn refutations() {
    let act = bs12_affine_action();
    let mut w = canonical();
    w.w = d("3");
    assert_eq!(verify_crossing(&act, &w).unwrap(), Verification::Refuted { condition: 1, n: None });
    let mut w = canonical();
    w.alpha = AffineMap::identity();
    w.beta = AffineMap::identity();
    assert_eq!(verify_crossing(&act, &w).unwrap(), Verification::Refuted { condition: 3, n: None });
    let mut w = canonical();
    w.n_check_bound = 1;
    assert!(verify_crossing(&act, &w).is_err());
}

#[test]
fn bs12_search_finds_the_canonical_witness() {
    let act = bs12_affine_action();
    let cfg = SearchConfig { word_bound: 3, n_bound: 4, require_certificate: true };
    let start = Instant::now();
    let out = crossing_search(&act, &bs12_letters(), &dyadic_points(8, 3), &cfg).unwrap();
    let SearchOutcome::Found(w) = out else { panic!("no crossing found") };
    assert!(start.elapsed().as_secs() < 60);
    assert_eq!(w.alpha_word.as_deref(), Some("t^-1"));
    assert_eq!(w.beta_word.as_deref(), Some("a t^-1"));
    assert_eq!((w.u.clone(), w.v.clone(), w.w.clone()), (d("0"), d("2"), d("1")));
    assert_eq!((w.n, w.m), (2, 2));
    assert!(w.monotone_certificate);
    assert!(verify_crossing(&act, &w).unwrap().is_verified());
}

#[test]
fn translations_admit_no_crossing() {
    let act = IntegerTranslation;
    let letters = vec![("1".to_string(), BigInt::from(1)), ("-1".to_string(), BigInt::from(-1))];
    let points: Vec<BigInt> = (-6..=6).map(BigInt::from).collect();
    let out = crossing_search(&act, &letters, &points, &SearchConfig::default()).unwrap();
    assert!(matches!(out, SearchOutcome::NoneFound { .. }), "{out:?}");
}

#[test]
fn t2_cone_actions_admit_no_crossing() {
    let p = corpus::load("t2");
    let letters: Vec<(String, _)> = p
        .letters()
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(i, g)| (format!("x{}{}", i / 2 + 1, if i % 2 == 1 { "^-1" } else { "" }), g))
        .collect();
    let pts = ball(&p, 3).unwrap().elements;
    for l in 0..2 {
        for c in SignVectorCone::all_at_level(2, l).unwrap() {
            let act = CosetAction::new(&p, &c);
            let out = crossing_search(&act, &letters, &pts, &SearchConfig::default()).unwrap();
            assert!(matches!(out, SearchOutcome::NoneFound { .. }), "{c}: {out:?}");
        }
    }
}

#[test]
fn bs12_preorder_is_not_conradian_and_the_violation_gives_a_crossing() {
    let g = Bs12;
    let phi = bs12_eval_at_zero_preorder();
    let b = ball(&g, 3).unwrap();
    let report = conradian_audit(&g, &phi, &b, 4).unwrap();
    assert!(!report.pass());
    let stats = report.conradian.as_ref().unwrap();
    let (a, bb) = stats.persistent_violations.first().expect("a violation that persists to n = 4");
    let w = crossing_from_violation(&g, &phi, a, bb, 4).unwrap();
    assert_eq!((w.n, w.m, w.n_check_bound), (1, 3, 3));
    let act = CosetAction::new(&g, &phi);
    assert!(verify_crossing(&act, &w).unwrap().is_verified());
}

#[test]
fn explicit_violating_pair() {
    let g = Bs12;
    let phi = bs12_eval_at_zero_preorder();
    let a = AffineMap::new(-1, d("1"));
    let b = AffineMap::new(-2, d("1/4"));
    let w = crossing_from_violation(&g, &phi, &a, &b, 8).unwrap();
    assert_eq!(w.alpha, b);
    assert_eq!(w.beta, a);
    // a cone is conradian, so no pair can be offered
    let p = corpus::load("klein");
    let c = SignVectorCone::all_at_level(2, 0).unwrap().remove(0);
    let x = p.unit(0);
    assert!(crossing_from_violation(&p, &c, &x, &x, 4).is_err());
}

#[test]
fn actions_preserve_order_and_compose() {
    let act = bs12_affine_action();
    let elems = conradian::dynamics::word_elements(&act, &bs12_letters(), 3).unwrap();
    let pts = dyadic_points(4, 2);
    for (_, g) in &elems {
        for x in &pts {
            for y in &pts {
                if x < y {
                    assert_eq!(act.compare(&act.apply(g, x).unwrap(), &act.apply(g, y).unwrap()).unwrap(), Ordering::Less);
                }
            }
        }
        for (_, h) in elems.iter().take(12) {
            for x in &pts {
                let gh = act.compose(g, h).unwrap();
                assert_eq!(act.apply(&gh, x).unwrap(), act.apply(g, &act.apply(h, x).unwrap()).unwrap());
            }
        }
    }
    assert_eq!(act.apply(&act.identity(), &d("3/8")).unwrap(), d("3/8"));
}

#[test]
fn coset_action_preserves_order() {
    let p = corpus::load("t3");
    let b = ball(&p, 2).unwrap();
    for c in SignVectorCone::all_at_level(3, 1).unwrap() {
        let act = CosetAction::new(&p, &c);
        for g in p.letters().unwrap() {
            for x in b.iter() {
                for y in b.iter() {
                    let before = act.compare(x, y).unwrap();
                    let after = act.compare(&act.apply(&g, x).unwrap(), &act.apply(&g, y).unwrap()).unwrap();
                    assert_eq!(before, after);
                }
            }
        }
    }
}
