//! Random no-signaling scenarios: the negative-probability measure and the
//! coupling measure coincide, and both match the closed form.
//!
//! cargo run --release --example main_theorem_fuzz -- [count] [seed]

use std::time::Instant;

use contexture::measures::{delta_min_lp, gamma_min_lp};
use contexture::random::generate;
use contexture::scenario::ScenarioKind;
use rayon::prelude::*;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(500, |a| a.parse().expect("count"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    for kind in [ScenarioKind::LeggettGarg3, ScenarioKind::EprBell4] {
        let start = Instant::now();
        let scenarios = generate(kind, seed, 64, count);
        let contextual = scenarios
            .par_iter()
            .map(|s| {
                let g = gamma_min_lp(s).expect("gamma");
                let d = delta_min_lp(s).expect("delta");
                assert_eq!(g.value, d.value, "measures differ on {}", s.to_json_string());
                assert!(g.agree && d.agree, "closed form differs on {}", s.to_json_string());
                usize::from(g.value.is_positive())
            })
            .sum::<usize>();
        println!(
            "{kind}: {count} scenarios, {contextual} contextual, all equal ({:.2?})",
            start.elapsed()
        );
    }
}
