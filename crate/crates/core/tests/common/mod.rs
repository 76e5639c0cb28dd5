//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use contexture::exact::{lp_solve, q, LinearExpr, LpProblem, LpResult, Rational};
use contexture::polyhedra::{fm_eliminate, Constraint, ConstraintSystem};
use contexture::random::SplitMix64;
use contexture::scenario::Scenario;

fn u(t: usize, l: i8, r: i8) -> String {
    format!("u{t}{}{}", if l > 0 { '+' } else { '-' }, if r > 0 { '+' } else { '-' })
}

fn dual_objective(s: &Scenario) -> LinearExpr {
    let mut obj = LinearExpr::new();
    for (t, table) in s.tables.iter().enumerate() {
        for (l, r, p) in table.probs.entries() {
            obj.add_term(u(t, l, r), p.clone());
        }
    }
    obj
}

fn maximum(lp: LpProblem) -> Rational {
    match lp_solve(&lp).unwrap() {
        LpResult::Optimal { value, .. } => -value,
        other => panic!("dual LP not optimal: {other:?}"),
    }
}

fn bits(w: usize, n: usize) -> Vec<i8> {
    (0..n).map(|k| if w >> k & 1 == 1 { -1 } else { 1 }).collect()
}

/// `Γ_min` from the dual program: `max Σ p·u` with `|Σ_t u_t(w)| ≤ 1` for
/// every joint outcome `w`.
pub fn dual_gamma(s: &Scenario) -> Rational {
    let n = s.properties.len();
    let idx = |name: &str| s.properties.iter().position(|p| p == name).unwrap();
    let mut lp = LpProblem::new().maximize(dual_objective(s));
    for w in 0..1usize << n {
        let v = bits(w, n);
        let mut e = LinearExpr::new();
        for (t, table) in s.tables.iter().enumerate() {
            e.add_term(u(t, v[idx(&table.left)], v[idx(&table.right)]), Rational::one());
        }
        lp.add_le(e.clone(), Rational::one());
        lp.add_ge(e, -Rational::one());
    }
    maximum(lp) - Rational::one()
}

/// `Δ_min` from the dual program: `max Σ p·u` with `Σ_t u_t(v) ≤ mismatches(v)`
/// for every assignment `v` of the contextual variables.
pub fn dual_delta(s: &Scenario) -> Rational {
    let vars: Vec<(usize, &str)> = s
        .tables
        .iter()
        .enumerate()
        .flat_map(|(t, table)| [(t, table.left.as_str()), (t, table.right.as_str())])
        .collect();
    let n = vars.len();
    let mut lp = LpProblem::new().maximize(dual_objective(s));
    for w in 0..1usize << n {
        let v = bits(w, n);
        let mut mismatches = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                if vars[i].1 == vars[j].1 && v[i] != v[j] {
                    mismatches += 1;
                }
            }
        }
        let mut e = LinearExpr::new();
        for t in 0..s.tables.len() {
            e.add_term(u(t, v[2 * t], v[2 * t + 1]), Rational::one());
        }
        lp.add_le(e, Rational::from_integer(mismatches));
    }
    maximum(lp)
}

const VARS: [&str; 4] = ["a", "b", "c", "d"];

/// Row `coefs · (a, b, c, d) ≤ rhs`.
type Row = ([Rational; 4], Rational);

fn random_system(rng: &mut SplitMix64) -> Vec<Row> {
    let mut rows = Vec::new();
    for k in 0..4 {
        for sign in [1, -1] {
            let mut c: [Rational; 4] = Default::default();
            c[k] = Rational::from_integer(sign);
            rows.push((c, Rational::from_integer(3)));
        }
    }
    for _ in 0..rng.between(2, 6) {
        let c = [0; 4].map(|_| Rational::from_integer(rng.between(-3, 3)));
        rows.push((c, Rational::from_integer(rng.between(-4, 6))));
    }
    rows
}

fn to_system(rows: &[Row]) -> ConstraintSystem {
    let mut s = ConstraintSystem::new(VARS);
    for (c, rhs) in rows {
        let e = LinearExpr::from_terms(VARS.iter().zip(c).map(|(v, c)| (*v, c.clone())));
        s.push(Constraint::le(e, rhs.clone())).unwrap();
    }
    s
}

/// Textbook elimination of column `k`, no pruning.
fn textbook(rows: &[Row], k: usize) -> Vec<Row> {
    let mut out = Vec::new();
    for (c, r) in rows {
        if c[k].is_zero() {
            out.push((c.clone(), r.clone()));
        }
    }
    for (cp, rp) in rows.iter().filter(|(c, _)| c[k].is_positive()) {
        for (cn, rn) in rows.iter().filter(|(c, _)| c[k].is_negative()) {
            let wp = -&cn[k];
            let wn = cp[k].clone();
            let c: [Rational; 4] = std::array::from_fn(|i| &(&cp[i] * &wp) + &(&cn[i] * &wn));
            out.push((c, &(rp * &wp) + &(rn * &wn)));
        }
    }
    out
}

fn holds(rows: &[Row], p: &[Rational; 4]) -> bool {
    rows.iter().all(|(c, r)| {
        let lhs: Rational = c.iter().zip(p).map(|(a, b)| a * b).sum();
        lhs <= *r
    })
}

/// Whether some `(c, d)` completes `(a, b)`: the slice is bounded, so it is
/// nonempty iff one of its vertices (two tight rows) is feasible.
fn slice_feasible(rows: &[Row], a: &Rational, b: &Rational) -> bool {
    let reduced: Vec<(Rational, Rational, Rational)> = rows
        .iter()
        .map(|(c, r)| (c[2].clone(), c[3].clone(), r - &(&(&c[0] * a) + &(&c[1] * b))))
        .collect();
    for i in 0..reduced.len() {
        for j in i + 1..reduced.len() {
            let (a1, b1, g1) = &reduced[i];
            let (a2, b2, g2) = &reduced[j];
            let det = &(a1 * b2) - &(a2 * b1);
            if det.is_zero() {
                continue;
            }
            let c = &(&(g1 * b2) - &(g2 * b1)) / &det;
            let d = &(&(a1 * g2) - &(a2 * g1)) / &det;
            if holds(rows, &[a.clone(), b.clone(), c, d]) {
                return true;
            }
        }
    }
    false
}

fn projected_holds(s: &ConstraintSystem, a: &Rational, b: &Rational) -> bool {
    let point = [("a", a), ("b", b)].iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect();
    s.is_satisfied_by(&point)
}

/// Projects 500 random bounded systems in `(a, b, c, d)` onto `(a, b)` and
/// compares membership of sampled points in the library projection, in an
/// unpruned textbook elimination, and in the true shadow (by vertex
/// enumeration of each slice). Returns the number of points checked.
pub fn fm_against_brute_force(systems: usize, seed: u64) -> Result<usize, String> {
    let mut rng = SplitMix64::new(seed);
    let mut checked_points = 0;
    for case in 0..systems {
        let rows = random_system(&mut rng);
        let projected = fm_eliminate(&to_system(&rows), &["c", "d"]).map_err(|e| e.to_string())?;
        if projected.variables() != ["a", "b"] {
            return Err(format!("case {case}: wrong variables"));
        }
        let brute = textbook(&textbook(&rows, 2), 3);

        let mut points = Vec::new();
        for _ in 0..12 {
            points.push((q(rng.between(-16, 16), 4), q(rng.between(-16, 16), 4)));
        }
        // points on the boundary of the projection
        for row in projected.rows() {
            let cb = row.expr.coefficient("b");
            if !cb.is_zero() {
                let a = q(rng.between(-12, 12), 4);
                let b = &(&row.rhs - &(&row.expr.coefficient("a") * &a)) / &cb;
                points.push((a, b));
            }
        }
        for (a, b) in &points {
            let truth = slice_feasible(&rows, a, b);
            let zero = Rational::zero();
            let full = [a.clone(), b.clone(), zero.clone(), zero];
            if projected_holds(&projected, a, b) != truth {
                return Err(format!("case {case}: projection wrong at ({a}, {b})"));
            }
            if holds(&brute, &full) != truth {
                return Err(format!("case {case}: textbook elimination wrong at ({a}, {b})"));
            }
            checked_points += 1;
        }
    }
    Ok(checked_points)
}
