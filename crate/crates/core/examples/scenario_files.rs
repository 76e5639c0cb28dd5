//! Scenario construction, the JSON file format and the no-signaling check.
//!
//! cargo run --example scenario_files

use std::collections::BTreeMap;

use contexture::exact::q;
use contexture::scenario::{check_no_signaling, from_expectations, to_expectations, ExpectationVector, Scenario, ScenarioKind};

fn main() {
    let mut e = ExpectationVector::default();
    for (ctx, c) in [("12", q(-1, 2)), ("13", q(-1, 2)), ("23", q(-1, 2))] {
        e.pair_correlations.insert(ctx.to_string(), c);
    }
    e.marginals = ["Q1", "Q2", "Q3"].iter().map(|p| (p.to_string(), q(0, 1))).collect::<BTreeMap<_, _>>();
    let s = from_expectations(ScenarioKind::LeggettGarg3, &e).unwrap();
    let text = s.to_json_string();
    println!("{text}");
    let back = Scenario::from_json_str(&text).unwrap();
    assert_eq!(to_expectations(&back).unwrap(), e);

    let signaling = include_str!("data/signaling.json");
    let s = Scenario::from_json_str(signaling).unwrap();
    for v in check_no_signaling(&s).violations {
        println!("{} changes by {} between contexts {} and {}", v.property, v.difference, v.context_a, v.context_b);
    }

    let broken = signaling.replacen("\"3/10\"", "\"3/0\"", 1);
    println!("{}", Scenario::from_json_str(&broken).unwrap_err());
}
