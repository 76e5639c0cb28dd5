//! Both measures against independent routes: the dual programs, the
//! closed forms, the Fourier–Motzkin bounds, and proper-jpd feasibility.

mod common;

use contexture::derive::{derive_delta_bounds, range_at, Shape, DELTA};
use contexture::exact::{q, Rational};
use contexture::measures::{delta_min_lp, gamma_min_formula, gamma_min_lp, has_proper_jpd};
use contexture::random::generate;
use contexture::scenario::{to_expectations, Probs, Scenario, ScenarioKind};

fn corr(c: Rational) -> Probs {
    let a = &(&Rational::one() + &c) * &q(1, 4);
    let b = &(&Rational::one() - &c) * &q(1, 4);
    Probs::new(a.clone(), b.clone(), b, a)
}

#[test]
fn landmarks() {
    let one = q(1, 1);
    let pr = Scenario::epr_bell([one.clone(), one.clone(), one.clone(), -&one].map(corr)).unwrap();
    assert_eq!(gamma_min_lp(&pr).unwrap().value, one);
    assert_eq!(delta_min_lp(&pr).unwrap().value, one);
    assert_eq!(common::dual_gamma(&pr), one);
    assert_eq!(common::dual_delta(&pr), one);

    let c = q(7, 10);
    let s = Scenario::epr_bell([c.clone(), c.clone(), c.clone(), -&c].map(corr)).unwrap();
    assert_eq!(gamma_min_lp(&s).unwrap().value, q(2, 5));
    assert_eq!(common::dual_delta(&s), q(2, 5));

    let lg = Scenario::leggett_garg([-&one, -&one, -&one].map(corr)).unwrap();
    assert_eq!(delta_min_lp(&lg).unwrap().value, one);
    assert_eq!(common::dual_gamma(&lg), one);
}

#[test]
fn primal_and_dual_programs_agree() {
    for (kind, seed, count) in [(ScenarioKind::LeggettGarg3, 21, 150), (ScenarioKind::EprBell4, 22, 60)] {
        for s in generate(kind, seed, 16, count) {
            let g = gamma_min_lp(&s).unwrap();
            let d = delta_min_lp(&s).unwrap();
            assert_eq!(g.value, common::dual_gamma(&s), "{}", s.to_json_string());
            assert_eq!(d.value, common::dual_delta(&s), "{}", s.to_json_string());
            assert_eq!(g.value, d.value);
            assert!(g.agree && d.agree);
            g.witness.verify(&s).unwrap();
            d.witness.verify(&s).unwrap();
        }
    }
}

#[test]
fn delta_min_is_the_lower_end_of_the_derived_range() {
    for (kind, seed, count) in [(ScenarioKind::LeggettGarg3, 31, 60), (ScenarioKind::EprBell4, 32, 60)] {
        let report = derive_delta_bounds(kind).unwrap();
        let shape = Shape::new(kind).unwrap();
        for s in generate(kind, seed, 8, count) {
            let point = shape.expectation_point(&to_expectations(&s).unwrap()).unwrap();
            let (lo, hi) = range_at(&report.derived, DELTA, &point).unwrap().expect("nonempty slice");
            assert_eq!(lo.unwrap(), delta_min_lp(&s).unwrap().value);
            assert!(hi.unwrap() >= gamma_min_formula(&s).unwrap());
        }
    }
}

#[test]
fn zero_gamma_iff_proper_joint() {
    let mut contextual = 0;
    for kind in [ScenarioKind::LeggettGarg3, ScenarioKind::EprBell4] {
        for s in generate(kind, 41, 4, 150) {
            let g = gamma_min_lp(&s).unwrap().value;
            contextual += usize::from(g.is_positive());
            assert_eq!(g.is_zero(), has_proper_jpd(&s).unwrap());
        }
    }
    assert!(contextual > 0, "sample should include contextual scenarios");
}
