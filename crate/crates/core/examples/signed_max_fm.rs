//! Parity-restricted signed maxima and Fourier–Motzkin projection.
//!
//! cargo run --example signed_max_fm

use contexture::exact::{q, LinearExpr};
use contexture::polyhedra::{
    expand_signed_max, fm_eliminate, remove_redundant, s_signed_max, Constraint, ConstraintSystem, Parity,
    SignedMaxSpec,
};

fn main() {
    let v = [q(7, 10), q(7, 10), q(7, 10), q(-7, 10)];
    println!("s0 = {}", s_signed_max(&v, Parity::Even).unwrap());
    println!("s1 = {}", s_signed_max(&v, Parity::Odd).unwrap());

    // s1(x1, x2) <= 1 + s0(y1, y2) unfolds into 2 x 2 rows
    let spec = SignedMaxSpec::at_most(["x1", "x2"], Parity::Odd, LinearExpr::constant(q(1, 1)))
        .minus(["y1", "y2"], Parity::Even, q(1, 1));
    let sys = expand_signed_max(&spec).unwrap();
    println!("{} rows:\n{sys}", sys.len());

    // project {x - y <= 0, y <= 1, -x <= 0} onto x
    let x = LinearExpr::var("x");
    let y = LinearExpr::var("y");
    let mut s = ConstraintSystem::new(["x", "y"]);
    s.push(Constraint::le(&x - &y, q(0, 1))).unwrap();
    s.push(Constraint::le(y.clone(), q(1, 1))).unwrap();
    s.push(Constraint::ge(x.clone(), q(0, 1))).unwrap();
    s.push(Constraint::le(&x + &y, q(3, 1))).unwrap();
    println!("without y:\n{}", fm_eliminate(&s, &["y"]).unwrap());
    println!("irredundant form of the original:\n{}", remove_redundant(&s));
}
