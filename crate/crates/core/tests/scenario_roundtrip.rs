//! Expectation parameterization and the JSON format on generated scenarios.

use contexture::random::generate;
use contexture::scenario::{from_expectations, to_expectations, Scenario, ScenarioKind};

#[test]
fn expectations_round_trip_on_1000_scenarios() {
    for (kind, seed) in [(ScenarioKind::LeggettGarg3, 11), (ScenarioKind::EprBell4, 12)] {
        for s in generate(kind, seed, 64, 500) {
            let e = to_expectations(&s).unwrap();
            assert_eq!(from_expectations(kind, &e).unwrap(), s);
        }
    }
}

#[test]
fn json_round_trip() {
    for s in generate(ScenarioKind::EprBell4, 5, 12, 100) {
        assert_eq!(Scenario::from_json_str(&s.to_json_string()).unwrap(), s);
    }
}
