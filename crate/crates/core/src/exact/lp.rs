//! Linear programs over named variables.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::simplex::{solve_standard, StandardSolution};
use super::{LinearExpr, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program has no variables")]
    NoVariables,
    #[error("objective variable {0:?} appears in no constraint and is not declared nonnegative")]
    UnconstrainedObjectiveVariable(String),
}

/// `minimize objective` subject to `expr = rhs`, `expr ≥ rhs`, and
/// nonnegativity of the listed variables. All other variables are free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: LinearExpr,
    pub equalities: Vec<(LinearExpr, Rational)>,
    pub inequalities: Vec<(LinearExpr, Rational)>,
    pub nonnegative_vars: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal {
        value: Rational,
        witness: BTreeMap<String, Rational>,
    },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn status(&self) -> LpStatus {
        match self {
            LpResult::Optimal { .. } => LpStatus::Optimal,
            LpResult::Infeasible => LpStatus::Infeasible,
            LpResult::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&BTreeMap<String, Rational>> {
        match self {
            LpResult::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl LpProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn minimize(mut self, objective: LinearExpr) -> Self {
        self.objective = objective;
        self
    }

    pub fn maximize(mut self, objective: LinearExpr) -> Self {
        self.objective = objective.scaled(&-Rational::one());
        self
    }

    pub fn eq(mut self, expr: LinearExpr, rhs: Rational) -> Self {
        self.equalities.push((expr, rhs));
        self
    }

    pub fn ge(mut self, expr: LinearExpr, rhs: Rational) -> Self {
        self.inequalities.push((expr, rhs));
        self
    }

    pub fn le(mut self, expr: LinearExpr, rhs: Rational) -> Self {
        self.inequalities.push((expr.scaled(&-Rational::one()), -rhs));
        self
    }

    pub fn nonnegative(mut self, name: impl Into<String>) -> Self {
        self.nonnegative_vars.insert(name.into());
        self
    }

    pub fn add_eq(&mut self, expr: LinearExpr, rhs: Rational) {
        self.equalities.push((expr, rhs));
    }

    pub fn add_ge(&mut self, expr: LinearExpr, rhs: Rational) {
        self.inequalities.push((expr, rhs));
    }

    pub fn add_le(&mut self, expr: LinearExpr, rhs: Rational) {
        self.inequalities.push((expr.scaled(&-Rational::one()), -rhs));
    }

    pub fn add_nonnegative(&mut self, name: impl Into<String>) {
        self.nonnegative_vars.insert(name.into());
    }

    /// All variables mentioned anywhere, in name order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars: BTreeSet<String> = self.nonnegative_vars.clone();
        let exprs = std::iter::once(&self.objective)
            .chain(self.equalities.iter().map(|(e, _)| e))
            .chain(self.inequalities.iter().map(|(e, _)| e));
        for e in exprs {
            vars.extend(e.variables().map(str::to_string));
        }
        vars
    }

    fn validate(&self) -> Result<BTreeSet<String>, LpError> {
        let vars = self.variables();
        if vars.is_empty() {
            return Err(LpError::NoVariables);
        }
        let mut constrained: BTreeSet<&str> = self.nonnegative_vars.iter().map(String::as_str).collect();
        for (e, _) in self.equalities.iter().chain(&self.inequalities) {
            constrained.extend(e.variables());
        }
        if let Some(v) = self.objective.variables().find(|v| !constrained.contains(v)) {
            return Err(LpError::UnconstrainedObjectiveVariable(v.to_string()));
        }
        Ok(vars)
    }

    /// Checks every constraint exactly at `point` (missing variables read as zero).
    pub fn is_satisfied_by(&self, point: &BTreeMap<String, Rational>) -> bool {
        let zero = Rational::zero();
        self.nonnegative_vars
            .iter()
            .all(|v| point.get(v).unwrap_or(&zero) >= &zero)
            && self.equalities.iter().all(|(e, r)| &e.eval(point) == r)
            && self.inequalities.iter().all(|(e, r)| &e.eval(point) >= r)
    }
}

/// Solves the problem exactly. Deterministic: identical problems produce
/// identical witnesses.
pub fn lp_solve(problem: &LpProblem) -> Result<LpResult, LpError> {
    let vars = problem.validate()?;

    // Column layout: nonnegative variables take one column, free variables a
    // (positive, negative) pair; each inequality gets a surplus column.
    let mut columns: BTreeMap<&str, (usize, Option<usize>)> = BTreeMap::new();
    let mut ncols = 0;
    for v in &vars {
        if problem.nonnegative_vars.contains(v) {
            columns.insert(v, (ncols, None));
            ncols += 1;
        } else {
            columns.insert(v, (ncols, Some(ncols + 1)));
            ncols += 2;
        }
    }
    let first_surplus = ncols;
    ncols += problem.inequalities.len();

    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    let mut push_row = |expr: &LinearExpr, rhs: &Rational, surplus: Option<usize>| {
        let mut row = vec![Rational::zero(); ncols];
        for (name, coef) in expr.coefficients() {
            let (pos, neg) = columns[name.as_str()];
            row[pos] = coef.clone();
            if let Some(neg) = neg {
                row[neg] = -coef;
            }
        }
        if let Some(s) = surplus {
            row[s] = -Rational::one();
        }
        a.push(row);
        b.push(rhs - expr.constant_term());
    };
    for (e, r) in &problem.equalities {
        push_row(e, r, None);
    }
    for (k, (e, r)) in problem.inequalities.iter().enumerate() {
        push_row(e, r, Some(first_surplus + k));
    }

    let mut c = vec![Rational::zero(); ncols];
    for (name, coef) in problem.objective.coefficients() {
        let (pos, neg) = columns[name.as_str()];
        c[pos] = coef.clone();
        if let Some(neg) = neg {
            c[neg] = -coef;
        }
    }

    let result = match solve_standard(&a, &b, &c) {
        StandardSolution::Infeasible => LpResult::Infeasible,
        StandardSolution::Unbounded => LpResult::Unbounded,
        StandardSolution::Optimal { x, value } => {
            let witness: BTreeMap<String, Rational> = columns
                .iter()
                .map(|(name, &(pos, neg))| {
                    let v = match neg {
                        Some(neg) => &x[pos] - &x[neg],
                        None => x[pos].clone(),
                    };
                    (name.to_string(), v)
                })
                .collect();
            let value = value + problem.objective.constant_term();
            debug_assert!(problem.is_satisfied_by(&witness), "simplex witness violates a constraint");
            debug_assert_eq!(problem.objective.eval(&witness), value);
            LpResult::Optimal { value, witness }
        }
    };
    Ok(result)
}

/// True iff the constraint set of `problem` is nonempty; the objective is ignored.
pub fn lp_feasible(problem: &LpProblem) -> Result<bool, LpError> {
    let mut p = problem.clone();
    p.objective = LinearExpr::new();
    Ok(lp_solve(&p)?.status() != LpStatus::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use proptest::prelude::*;

    fn x() -> LinearExpr {
        LinearExpr::var("x")
    }

    #[test]
    fn single_bound() {
        let p = LpProblem::new().minimize(x()).ge(x(), q(3, 1));
        let r = lp_solve(&p).unwrap();
        assert_eq!(r.value(), Some(&q(3, 1)));
        assert_eq!(r.witness().unwrap()["x"], q(3, 1));
    }

    #[test]
    fn objective_fixed_by_equality() {
        let xy = LinearExpr::from_terms([("x", Rational::one()), ("y", Rational::one())]);
        let p = LpProblem::new()
            .minimize(xy.clone())
            .eq(xy, Rational::one())
            .nonnegative("x")
            .nonnegative("y");
        assert_eq!(lp_solve(&p).unwrap().value(), Some(&Rational::one()));
    }

    #[test]
    fn contradictory_bounds() {
        let p = LpProblem::new().minimize(x()).ge(x(), q(1, 1)).le(x(), q(0, 1));
        assert_eq!(lp_solve(&p).unwrap(), LpResult::Infeasible);
        assert!(!lp_feasible(&p).unwrap());
        let p = LpProblem::new().ge(x(), q(0, 1)).le(x(), q(1, 1));
        assert!(lp_feasible(&p).unwrap());
    }

    #[test]
    fn unbounded_and_constant_objective() {
        let p = LpProblem::new().minimize(x()).le(x(), q(5, 1));
        assert_eq!(lp_solve(&p).unwrap(), LpResult::Unbounded);
        let p = LpProblem::new()
            .maximize(x().with_constant(q(1, 2)))
            .le(x(), q(5, 1));
        assert_eq!(lp_solve(&p).unwrap().value(), Some(&q(-11, 2)));
    }

    #[test]
    fn malformed_problems() {
        assert_eq!(lp_solve(&LpProblem::new()), Err(LpError::NoVariables));
        let p = LpProblem::new().minimize(LinearExpr::var("z")).ge(x(), q(0, 1));
        assert_eq!(lp_solve(&p), Err(LpError::UnconstrainedObjectiveVariable("z".into())));
    }

    /// Enumerates every basic solution of `min c·x, A x ≤ b, x ≥ 0` for tiny
    /// problems by solving each square subsystem with Gaussian elimination.
    fn brute_force(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> Option<Rational> {
        let n = c.len();
        let m = a.len();
        // Hyperplanes: rows of A (tight) and coordinate planes x_j = 0.
        let mut planes: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for (row, bi) in a.iter().zip(b) {
            planes.push((row.iter().map(|&v| Rational::from_integer(v)).collect(), Rational::from_integer(*bi)));
        }
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            planes.push((e, Rational::zero()));
        }
        let mut best: Option<Rational> = None;
        let total = planes.len();
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            if let Some(pt) = solve_square(&idx.iter().map(|&i| planes[i].clone()).collect::<Vec<_>>()) {
                let feasible = pt.iter().all(|v| !v.is_negative())
                    && (0..m).all(|i| {
                        let lhs: Rational = (0..n).map(|j| Rational::from_integer(a[i][j]) * &pt[j]).sum();
                        lhs <= Rational::from_integer(b[i])
                    });
                if feasible {
                    let val: Rational = (0..n).map(|j| Rational::from_integer(c[j]) * &pt[j]).sum();
                    best = Some(match best {
                        Some(bv) => bv.min(val),
                        None => val,
                    });
                }
            }
            // next combination
            let mut k = n;
            loop {
                if k == 0 {
                    return best;
                }
                k -= 1;
                if idx[k] < total - n + k {
                    idx[k] += 1;
                    for l in k + 1..n {
                        idx[l] = idx[l - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn solve_square(rows: &[(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
        let n = rows.len();
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|(r, b)| {
                let mut v = r.clone();
                v.push(b.clone());
                v
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&i| !m[i][col].is_zero())?;
            m.swap(col, p);
            let inv = m[col][col].recip();
            for v in m[col].iter_mut() {
                *v *= &inv;
            }
            for i in 0..n {
                if i != col && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in 0..=n {
                        let d = &f * &m[col][j];
                        m[i][j] -= d;
                    }
                }
            }
        }
        Some(m.into_iter().map(|r| r[n].clone()).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn matches_vertex_enumeration(
            n in 1usize..=4,
            m in 1usize..=4,
            data in proptest::collection::vec(-4i64..=4, 40),
            bs in proptest::collection::vec(0i64..=6, 4),
            cs in proptest::collection::vec(-3i64..=3, 4),
        ) {
            // A x ≤ b with b ≥ 0 and x ≥ 0 is always feasible (x = 0); add a
            // box so the optimum is finite and attained at a vertex.
            let mut a: Vec<Vec<i64>> = (0..m).map(|i| data[i * n..(i + 1) * n].to_vec()).collect();
            let mut b: Vec<i64> = bs[..m].to_vec();
            for j in 0..n {
                let mut row = vec![0; n];
                row[j] = 1;
                a.push(row);
                b.push(5);
            }
            let c = &cs[..n];
            let expected = brute_force(&a, &b, c).unwrap();

            let mut p = LpProblem::new();
            let name = |j: usize| format!("x{j}");
            p.objective = LinearExpr::from_terms((0..n).map(|j| (name(j), Rational::from_integer(c[j]))));
            for (row, bi) in a.iter().zip(&b) {
                p.add_le(LinearExpr::from_terms((0..n).map(|j| (name(j), Rational::from_integer(row[j])))), Rational::from_integer(*bi));
            }
            for j in 0..n {
                p.add_nonnegative(name(j));
            }
            let r1 = lp_solve(&p).unwrap();
            prop_assert_eq!(r1.value(), Some(&expected));
            prop_assert!(p.is_satisfied_by(r1.witness().unwrap()));
            let r2 = lp_solve(&p).unwrap();
            prop_assert_eq!(r1, r2);
        }
    }
}
