//! Whole-lemma properties of the case analysis.

use schurcheck::eliminator::{run_lemma, Config, LemmaId, Outcome};
use schurcheck::groups::parse_and_validate;
use schurcheck::orders::divides_exact;
use schurcheck::zsigmondy::{is_zsigmondy_exception, nondivisibility_witness};

#[test]
fn runs_are_reproducible_and_revalidated() {
    let cfg = Config::default();
    let strip = |mut r: Vec<schurcheck::eliminator::EliminationReport>| {
        r.iter_mut().for_each(|x| x.millis = 0);
        r
    };
    let first = strip(run_lemma(LemmaId::Unitary, &cfg).unwrap().reports);
    let second = strip(run_lemma(LemmaId::Unitary, &cfg).unwrap().reports);
    assert_eq!(first, second);
    for r in &first {
        assert!(r.failure.is_none(), "{}: {:?}", r.case_id, r.failure);
        if r.outcome.is_eliminated() {
            assert!(
                r.revalidated,
                "{} eliminated without a passing re-check",
                r.case_id
            );
            assert!(
                !r.chain.is_empty() && r.paper_ref().starts_with("Lemma 4.1"),
                "{}",
                r.case_id
            );
        }
    }
    assert!(first
        .iter()
        .any(|r| r.outcome == Outcome::EliminatedByOrderWitness));
}

/// Every concrete witness at a sampled instance is sound by exact division.
#[test]
fn instance_witnesses_are_sound() {
    for (l, h) in [
        ("E8(2^9)", "SL(9,2^30)"),
        ("E7(2^7)", "Sp(14,2^9)"),
        ("F4(3)", "SL(6,3^4)"),
        ("G2(5)", "SU(3,5^2)"),
        ("PSp(8,3)", "SL(5,3^2)"),
    ] {
        let (l, h) = (
            parse_and_validate(l).unwrap(),
            parse_and_validate(h).unwrap(),
        );
        if let Some(e) = nondivisibility_witness(&l, &h).unwrap() {
            assert!(!is_zsigmondy_exception(l.p, 1, e));
            assert!(!divides_exact(&l, &h), "{l} vs {h}");
        }
    }
}
