//! Fourier–Motzkin derivation of the bounds on the coupling mismatch `Δ`.
//!
//! cargo run --release --example derive_bounds -- [lg|epr]

use std::time::Instant;

use contexture::derive::derive_delta_bounds;
use contexture::scenario::ScenarioKind;

fn main() {
    let kinds = match std::env::args().nth(1).as_deref() {
        Some("lg") => vec![ScenarioKind::LeggettGarg3],
        Some("epr") => vec![ScenarioKind::EprBell4],
        _ => vec![ScenarioKind::LeggettGarg3, ScenarioKind::EprBell4],
    };
    for kind in kinds {
        let start = Instant::now();
        let report = derive_delta_bounds(kind).expect("derivation");
        println!(
            "{kind}: {} + {} connection rows -> {} rows over {:?}",
            report.nontrivial_count,
            report.trivial_count,
            report.derived_system.rows.len(),
            report.derived_system.variables
        );
        for row in &report.derived_system.rows {
            println!("    {row}");
        }
        let check = &report.projection_check;
        println!(
            "  equivalent to the target system: {}; vertices sound: {}; {} of {} samples outside the joint image ({:.2?})",
            report.equivalent,
            check.vertices_sound,
            check.membership_failures,
            check.membership_samples,
            start.elapsed()
        );
    }
}
