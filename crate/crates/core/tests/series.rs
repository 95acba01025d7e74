use conradian::corpus;
use conradian::series_analysis::{
    abelian_jump_scan, certify_from_level, certify_no_abelian_jumps, lowest_certified_level, separates_cosets,
    subnormality_audit, Certification,
};
use conradian::word_core::level_membership;

fn jumps(name: &str) -> Vec<usize> {
    let p = corpus::load(name);
    abelian_jump_scan(&p, 2)
        .unwrap()
        .iter()
        .filter(|r| r.abelian_jump == Some(true))
        .map(|r| r.index)
        .collect()
}

#[test]
fn jump_indices_of_the_corpus() {
    assert_eq!(jumps("z"), Vec::<usize>::new());
    assert_eq!(jumps("z2"), vec![0]);
    assert_eq!(jumps("z2rel"), vec![0]);
    assert_eq!(jumps("klein"), Vec::<usize>::new());
    assert_eq!(jumps("heis"), vec![0, 1]);
    for t in ["t2", "t3", "t4"] {
        assert_eq!(jumps(t), Vec::<usize>::new(), "{t}");
    }
}

#[test]
fn rivas_family_certifies() {
    for n in 1..=6 {
        let p = corpus::rivas_family(n);
        assert!(matches!(certify_no_abelian_jumps(&p).unwrap(), Certification::Certified(_)));
    }
}

#[test]
fn refusals_name_every_jump() {
    let p = corpus::load("heis");
    let Certification::Refused(r) = certify_no_abelian_jumps(&p).unwrap() else {
        panic!("heisenberg must be refused")
    };
    assert_eq!(r.jump_indices, vec![0, 1]);
    assert!(r.reason.contains("level 0, 1"));
    assert!(!r.reason.is_empty());
    let Certification::Refused(r) = certify_from_level(&p, 1).unwrap() else { panic!() };
    assert_eq!(r.jump_indices, vec![1]);
    assert!(matches!(certify_from_level(&p, 2).unwrap(), Certification::Certified(_)));
    assert_eq!(lowest_certified_level(&p).unwrap(), Some(2));
}

#[test]
fn z2_is_certified_above_its_first_factor() {
    let p = corpus::load("z2");
    assert!(matches!(certify_no_abelian_jumps(&p).unwrap(), Certification::Refused(_)));
    let c = certify_from_level(&p, 1).unwrap();
    let cert = c.certificate().expect("certified from level 1");
    assert!(cert.covers(&p, 1));
    assert!(!cert.covers(&p, 0));
    assert!(!cert.covers(&corpus::load("klein"), 1));
    assert_eq!(lowest_certified_level(&p).unwrap(), Some(1));
}

#[test]
fn non_jumps_carry_verified_witnesses() {
    for name in ["klein", "t3", "t4"] {
        let p = corpus::load(name);
        for r in abelian_jump_scan(&p, 2).unwrap() {
            assert!(r.normal_in_next);
            assert!(r.quotient_infinite_cyclic_witness);
            if r.abelian_jump == Some(false) {
                let (a, b) = r.witness.clone().expect("witness");
                let i = r.index;
                assert!(level_membership(&a, i + 1) && !level_membership(&a, i));
                assert!(level_membership(&b, i + 2) && !level_membership(&b, i + 1));
                assert!(separates_cosets(&p, &a, &b, i).unwrap());
            }
        }
    }
}

#[test]
fn corpus_series_are_subnormal() {
    for (name, _) in corpus::ALL {
        let p = corpus::load(name);
        assert!(subnormality_audit(&p, 2).unwrap().iter().all(|l| l.pass()), "{name}");
    }
}

#[test]
fn scan_json_shape() {
    let p = corpus::load("heis");
    let v = abelian_jump_scan(&p, 2).unwrap()[0].to_json();
    assert_eq!(v["level"], "0");
    assert_eq!(v["abelian_jump"], true);
    assert_eq!(v["normal_in_next"], true);
    assert!(v["witness"].as_array().unwrap().is_empty());
}
