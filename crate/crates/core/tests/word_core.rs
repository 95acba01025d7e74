use conradian::word_core::{consistency_audit, parse_presentation, ParseErrorKind};
use conradian::{corpus, ExponentVector, GroupError, Word};

#[test]
fn corpus_is_consistent() {
    for (name, _) in corpus::ALL {
        let p = corpus::load(name);
        let r = consistency_audit(&p, 2).unwrap();
        assert!(r.pass(), "{name}: {:?}", r.failures.first());
        assert!(r.checks > 0 || p.rank() == 1);
    }
}

#[test]
fn mismatched_inverse_relation_is_reported() {
    // x2 x1 x2^-1 = x1^2 cannot hold in a group where x2^-1 x1 x2 = x1
    let p = parse_presentation("gens 2\nconj 2 1 -> 1^2\n").unwrap();
    let r = consistency_audit(&p, 1).unwrap();
    assert!(!r.pass());
}

#[test]
fn corpus_roundtrips_through_text() {
    for (name, _) in corpus::ALL {
        let p = corpus::load(name);
        let q = parse_presentation(&p.to_rsp()).unwrap();
        assert_eq!(q.to_rsp(), p.to_rsp(), "{name}");
        assert_eq!(q.name(), p.name());
    }
}

#[test]
fn worked_collections() {
    let k = corpus::load("klein");
    // x2 x1 = x1^-1 x2
    assert_eq!(k.collect(&Word::parse("2 1").unwrap()).unwrap(), ExponentVector::from_i64s(&[-1, 1]));
    let h = corpus::load("heis");
    // x3 x2 = x1^-1 x2 x3
    assert_eq!(h.collect(&Word::parse("3 2").unwrap()).unwrap(), ExponentVector::from_i64s(&[-1, 1, 1]));
    let t2 = corpus::load("t2");
    let c = t2.commutator(&t2.unit(0), &t2.unit(1)).unwrap();
    assert_eq!(c, ExponentVector::from_i64s(&[-2, 0]));
}

#[test]
fn budget_turns_runaway_collection_into_an_error() {
    let p = corpus::load("heis").with_step_budget(5);
    let w = Word::parse("3^40 2^40 3^-40 2^-40 3^7 2^9").unwrap();
    assert!(matches!(p.collect(&w), Err(GroupError::StepBudgetExceeded { budget: 5 })));
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_presentation("gens 2\nconj 2 1 -> 2^1\n").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(matches!(e.kind, ParseErrorKind::NotSubnormal { .. }));
    let e = parse_presentation("gens 2\nconj 1 2 -> 1\n").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange { .. }));
    assert!(parse_presentation("conj 2 1 -> 1\n").is_err());
}
