use conradian::group::Group;
use conradian::preorder_core::{
    coset_compare, induced_jump_preorder, jump_morphism, mu, restrict, rho, CosetOrder, LevelEvaluator,
    PreorderEvaluator,
};
use conradian::word_core::level_membership;
use conradian::{ball, corpus, ExponentVector, Sign, SignVectorCone};
use proptest::prelude::*;

fn all_cones(m: usize) -> Vec<SignVectorCone> {
    (0..m).flat_map(|l| SignVectorCone::all_at_level(m, l).unwrap()).collect()
}

#[test]
fn mu_after_rho_is_the_identity() {
    let p = corpus::load("t3");
    let b = ball(&p, 3).unwrap();
    for c in all_cones(3) {
        for k in (c.level() + 1)..3 {
            let (lo, hi) = rho(&c, k).unwrap();
            let glued = mu(lo, hi).unwrap();
            assert_eq!(glued.base_level(), c.level());
            for g in b.iter() {
                assert_eq!(glued.sign(g), c.sign(g), "{c} k={k} g={g}");
            }
        }
    }
}

#[test]
fn rho_after_mu_recovers_both_parts() {
    let p = corpus::load("t3");
    let b = ball(&p, 3).unwrap();
    for k in 1..3 {
        for l in 0..k {
            for lower_cone in SignVectorCone::all_at_level(3, l).unwrap() {
                for upper in SignVectorCone::all_at_level(3, k).unwrap() {
                    let lower = restrict(&lower_cone, k).unwrap();
                    let glued = mu(&lower, &upper).unwrap();
                    let (r1, r2) = rho(&glued, k).unwrap();
                    for g in b.iter() {
                        if level_membership(g, k) {
                            assert_eq!(r1.sign(g), lower.sign(g));
                            assert_eq!(r1.checked_sign(g).unwrap(), lower.sign(g));
                        } else {
                            assert!(r1.checked_sign(g).is_err());
                        }
                        assert_eq!(r2.sign(g), upper.sign(g));
                    }
                }
            }
        }
    }
}

#[test]
fn split_is_a_coordinate_split() {
    use Sign::{Negative as N, Positive as P};
    let p = corpus::load("t3");
    let c = SignVectorCone::new(3, 0, vec![P, N, P]).unwrap();
    let (lo, hi) = rho(&c, 2).unwrap();
    let expect_hi = SignVectorCone::new(3, 2, vec![P]).unwrap();
    for g in ball(&p, 3).unwrap().iter() {
        assert_eq!(hi.sign(g), expect_hi.sign(g));
        if level_membership(g, 2) {
            // top nonzero of (e1, e2) with directions (+, -)
            let want = if g.0[1] != 0.into() {
                -Sign::of(&g.0[1])
            } else {
                Sign::of(&g.0[0])
            };
            assert_eq!(lo.sign(g), want);
        }
    }
}

#[test]
fn restriction_agrees_with_the_lower_part() {
    let p = corpus::load("t3");
    let b = ball(&p, 3).unwrap();
    for c in SignVectorCone::all_at_level(3, 0).unwrap() {
        for k in 1..3 {
            let r = restrict(&c, k).unwrap();
            let (lo, _) = rho(&c, k).unwrap();
            for g in b.iter().filter(|g| level_membership(g, k)) {
                assert_eq!(r.sign(g), lo.sign(g));
            }
        }
    }
}

fn vec_strategy(m: usize) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(-6i64..=6, m).prop_map(|v| ExponentVector::from_i64s(&v))
}

proptest! {
    #[test]
    fn group_laws_hold(a in vec_strategy(3), b in vec_strategy(3), c in vec_strategy(3), heis in any::<bool>()) {
        let p = corpus::load(if heis { "heis" } else { "t3" });
        let ab_c = p.multiply(&p.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = p.multiply(&a, &p.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let ai = p.invert(&a).unwrap();
        prop_assert!(p.multiply(&a, &ai).unwrap().is_identity());
        prop_assert!(p.multiply(&ai, &a).unwrap().is_identity());
        prop_assert_eq!(p.invert(&ai).unwrap(), a.clone());
        prop_assert_eq!(p.multiply(&p.identity(), &a).unwrap(), a);
    }

    #[test]
    fn coset_order_is_left_invariant(a in vec_strategy(3), b in vec_strategy(3), g in vec_strategy(3), code in 0usize..14) {
        let p = corpus::load("t3");
        let c = &all_cones(3)[code];
        let before = coset_compare(&p, c, &a, &b).unwrap();
        let ga = p.multiply(&g, &a).unwrap();
        let gb = p.multiply(&g, &b).unwrap();
        prop_assert_eq!(coset_compare(&p, c, &ga, &gb).unwrap(), before);
        let back = coset_compare(&p, c, &b, &a).unwrap();
        let flipped = match before {
            CosetOrder::Precedes => CosetOrder::Succeeds,
            CosetOrder::Succeeds => CosetOrder::Precedes,
            CosetOrder::SameCoset => CosetOrder::SameCoset,
        };
        prop_assert_eq!(back, flipped);
    }

    #[test]
    fn jump_morphisms_are_additive(e in prop::collection::vec(-6i64..=6, 8), i in 0usize..3, code in 0usize..8) {
        let p = corpus::load("t3");
        let c = &SignVectorCone::all_at_level(3, 0).unwrap()[code];
        let tau = jump_morphism(c, i).unwrap();
        // elements of G_{i+1}
        let mut g = e[..3].to_vec();
        let mut h = e[3..6].to_vec();
        for k in i + 1..3 {
            g[k] = 0;
            h[k] = 0;
        }
        let (g, h) = (ExponentVector::from_i64s(&g), ExponentVector::from_i64s(&h));
        let gh = p.multiply(&g, &h).unwrap();
        prop_assert_eq!(tau.evaluate(&gh).unwrap(), tau.evaluate(&g).unwrap() + tau.evaluate(&h).unwrap());
        let induced = induced_jump_preorder(c, i).unwrap();
        prop_assert_eq!(induced.sign(&g), Sign::of(&tau.evaluate(&g).unwrap()));
        // outside G_{i+1} the morphism refuses
        if i + 1 < 3 {
            prop_assert!(tau.evaluate(&p.unit(i + 1)).is_err());
        }
    }

    #[test]
    fn cone_signs_are_odd(g in vec_strategy(4), code in 0usize..30) {
        let p = corpus::load("t4");
        let c = &all_cones(4)[code];
        let gi = p.invert(&g).unwrap();
        prop_assert_eq!(c.sign(&gi), -c.sign(&g));
        prop_assert_eq!(c.sign(&g) == Sign::Zero, level_membership(&g, c.level()));
    }
}
