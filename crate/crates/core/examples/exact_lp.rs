//! Exact rational arithmetic and linear programming.
//!
//! cargo run --example exact_lp

use contexture::exact::{lp_solve, q, LinearExpr, LpProblem, LpResult, Rational};

fn main() {
    let third = q(1, 3);
    let sum = &third + &q(1, 6);
    println!("1/3 + 1/6 = {sum} = {}", sum.to_decimal_string(6));
    let parsed: Rational = "0.125".parse().unwrap();
    println!("\"0.125\" parses to {parsed}");

    // maximize x + y  s.t.  x + 2y <= 4, 3x + y <= 6, x, y >= 0
    let x = LinearExpr::var("x");
    let y = LinearExpr::var("y");
    let problem = LpProblem::new()
        .maximize(&x + &y)
        .le(&x + &y.scaled(&q(2, 1)), q(4, 1))
        .le(&x.scaled(&q(3, 1)) + &y, q(6, 1))
        .nonnegative("x")
        .nonnegative("y");
    match lp_solve(&problem).unwrap() {
        LpResult::Optimal { value, witness } => {
            // maximization is solved as minimization of the negated objective
            println!("max x + y = {} at x = {}, y = {}", -value, witness["x"], witness["y"]);
        }
        other => println!("unexpected: {other:?}"),
    }

    let infeasible = LpProblem::new().ge(x.clone(), q(1, 1)).le(x, q(0, 1));
    println!("x >= 1 and x <= 0: {:?}", lp_solve(&infeasible).unwrap().status());
}
