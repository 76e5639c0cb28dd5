//! Both measures, their closed forms and witnesses for a scenario file.
//!
//! cargo run --example analyze_scenario -- [path]   (default: the PR box)

use contexture::cli::{analyze_scenario, load_scenario};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/pr_box.json").to_string());
    let scenario = load_scenario(path.as_ref()).unwrap_or_else(|e| panic!("{e}"));
    let report = analyze_scenario(&scenario, true).expect("analysis");
    print!("{}", report.to_human());
}
