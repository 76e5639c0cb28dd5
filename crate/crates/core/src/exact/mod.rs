//! Exact rational arithmetic and linear programming.

mod expr;
mod lp;
mod rational;
pub mod simplex;

pub use expr::LinearExpr;
pub use lp::{lp_feasible, lp_solve, LpError, LpProblem, LpResult, LpStatus};
pub use rational::{q, ParseRationalError, Rational};
