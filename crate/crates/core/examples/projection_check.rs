//! Checks that the connection system is exactly the set of expectations of
//! joint distributions, and that the check catches a wrong bound and a
//! missing row.
//!
//! cargo run --release --example projection_check

use contexture::derive::{build_connection_system, verify_projection, ProjectionOptions};
use contexture::exact::q;
use contexture::polyhedra::{Constraint, ConstraintSystem};
use contexture::scenario::ScenarioKind;

fn rebuilt(base: &ConstraintSystem, rows: impl IntoIterator<Item = Constraint>) -> ConstraintSystem {
    let mut s = ConstraintSystem::new(base.variables().iter().cloned());
    s.extend(rows).unwrap();
    s
}

fn main() {
    let conn = build_connection_system(ScenarioKind::EprBell4).unwrap();
    let opts = ProjectionOptions::default();
    let r = verify_projection(ScenarioKind::EprBell4, &conn.system, &opts).unwrap();
    println!(
        "claimed system: vertices sound {}, {} of {} samples outside",
        r.vertices_sound, r.membership_failures, r.membership_samples
    );

    let mut rows = conn.system.rows().to_vec();
    rows[0].rhs = q(5, 1);
    let tightened = rebuilt(&conn.system, rows);
    let r = verify_projection(ScenarioKind::EprBell4, &tightened, &opts).unwrap();
    println!("first bound lowered to 5: vertices sound {} ({:?})", r.vertices_sound, r.unsound_rows);

    let mut rows = conn.system.rows().to_vec();
    let deleted = rows.remove(64);
    let relaxed = rebuilt(&conn.system, rows);
    let opts = ProjectionOptions {
        extra_directions: vec![deleted.expr.clone()],
        ..ProjectionOptions::default()
    };
    let r = verify_projection(ScenarioKind::EprBell4, &relaxed, &opts).unwrap();
    println!(
        "row `{deleted}` deleted: {} of {} samples have no joint preimage",
        r.membership_failures, r.membership_samples
    );
}
