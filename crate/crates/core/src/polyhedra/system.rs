use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::PolyError;
use crate::exact::simplex::{solve_standard, StandardSolution};
use crate::exact::{lp_solve, LinearExpr, LpProblem, LpResult, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// Values assigned to named variables.
pub type Point = BTreeMap<String, Rational>;

/// `expr (≤ | =) rhs`; `expr` carries no constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub expr: LinearExpr,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn le(expr: LinearExpr, rhs: Rational) -> Self {
        Self::build(expr, Relation::Le, rhs)
    }

    pub fn ge(expr: LinearExpr, rhs: Rational) -> Self {
        Self::build(expr.scaled(&-Rational::one()), Relation::Le, -rhs)
    }

    pub fn eq(expr: LinearExpr, rhs: Rational) -> Self {
        Self::build(expr, Relation::Eq, rhs)
    }

    /// Moves any constant in `expr` to the right-hand side.
    fn build(expr: LinearExpr, relation: Relation, rhs: Rational) -> Self {
        let rhs = rhs - expr.constant_term();
        let expr = expr.with_constant(Rational::zero());
        Constraint { expr, relation, rhs }
    }

    pub fn is_satisfied_by(&self, point: &BTreeMap<String, Rational>) -> bool {
        let lhs = self.expr.eval(point);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

impl fmt::Display for Constraint {
    /// Canonical row text: `c₁·v₁ + … ≤ b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Le => "≤",
            Relation::Eq => "=",
        };
        if self.expr.is_constant() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", self.expr)?;
        }
        write!(f, " {rel} {}", self.rhs)
    }
}

/// A conjunction of linear rows over an ordered set of named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    variables: Vec<String>,
    rows: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Self {
        let mut vars: Vec<String> = Vec::new();
        for v in variables {
            let v = v.into();
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        ConstraintSystem {
            variables: vars,
            rows: Vec::new(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Normalizes and appends a row. Rows that hold trivially (`0 ≤ c` with
    /// `c ≥ 0`, `0 = 0`) are dropped; returns whether the row was kept.
    pub fn push(&mut self, row: Constraint) -> Result<bool, PolyError> {
        if let Some(v) = row.expr.variables().find(|v| !self.variables.iter().any(|w| w == v)) {
            return Err(PolyError::UnknownVariable(v.to_string()));
        }
        let dense = self.to_dense_row(&row);
        match dense.normalized() {
            Some(d) => {
                self.rows.push(self.row_from_dense(&d));
                Ok(true)
            }
            None => Ok(false),
        }
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Constraint>) -> Result<usize, PolyError> {
        let mut kept = 0;
        for r in rows {
            if self.push(r)? {
                kept += 1;
            }
        }
        Ok(kept)
    }

    /// Union of two systems; the variable order of `self` comes first.
    pub fn union(&self, other: &ConstraintSystem) -> ConstraintSystem {
        let mut out = ConstraintSystem::new(self.variables.iter().chain(&other.variables).cloned());
        out.rows = self.rows.iter().chain(&other.rows).cloned().collect();
        out
    }

    pub fn is_satisfied_by(&self, point: &BTreeMap<String, Rational>) -> bool {
        self.rows.iter().all(|r| r.is_satisfied_by(point))
    }

    /// True iff the system has a solution.
    pub fn is_feasible(&self) -> bool {
        let dense = self.to_dense();
        feasible(&dense.iter().collect::<Vec<_>>(), self.variables.len())
    }

    /// True iff every solution of `self` satisfies `row`.
    pub fn implies(&self, row: &Constraint) -> Result<bool, PolyError> {
        if let Some(v) = row.expr.variables().find(|v| !self.variables.iter().any(|w| w == v)) {
            return Err(PolyError::UnknownVariable(v.to_string()));
        }
        let dense = self.to_dense();
        let refs: Vec<&DenseRow> = dense.iter().collect();
        let target = self.to_dense_row(row);
        let n = self.variables.len();
        if !feasible(&refs, n) {
            return Ok(true);
        }
        Ok(implied(&refs, n, &target))
    }

    fn maximize_problem(&self, objective: &LinearExpr) -> Result<Option<LpProblem>, PolyError> {
        if let Some(v) = objective.variables().find(|v| !self.variables.iter().any(|w| w == v)) {
            return Err(PolyError::UnknownVariable(v.to_string()));
        }
        let mut problem = LpProblem::new().maximize(objective.clone());
        for r in &self.rows {
            match r.relation {
                Relation::Le => problem.add_le(r.expr.clone(), r.rhs.clone()),
                Relation::Eq => problem.add_eq(r.expr.clone(), r.rhs.clone()),
            }
        }
        let mentioned = problem.variables();
        if objective.variables().any(|v| !mentioned.contains(v)) {
            // A free variable no row mentions: unbounded unless the system is empty.
            return Ok(None);
        }
        Ok(Some(problem))
    }

    /// Maximum of `objective` over the system; `None` if unbounded or infeasible.
    pub fn maximize(&self, objective: &LinearExpr) -> Result<Option<Rational>, PolyError> {
        Ok(self.argmax(objective)?.map(|(v, _)| v))
    }

    /// Maximum and a maximizer of `objective`; `None` if unbounded or infeasible.
    pub fn argmax(&self, objective: &LinearExpr) -> Result<Option<(Rational, Point)>, PolyError> {
        let Some(problem) = self.maximize_problem(objective)? else {
            return Ok(None);
        };
        if problem.variables().is_empty() {
            return Ok(self.is_feasible().then(|| (objective.constant_term().clone(), self.zero_point())));
        }
        Ok(match lp_solve(&problem) {
            Ok(LpResult::Optimal { value, mut witness }) => {
                for v in &self.variables {
                    witness.entry(v.clone()).or_insert_with(Rational::zero);
                }
                Some((-value, witness))
            }
            _ => None,
        })
    }

    fn zero_point(&self) -> BTreeMap<String, Rational> {
        self.variables.iter().map(|v| (v.clone(), Rational::zero())).collect()
    }

    pub(crate) fn to_dense_row(&self, row: &Constraint) -> DenseRow {
        let index: HashMap<&str, usize> = self.variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut coefs = vec![Rational::zero(); self.variables.len()];
        for (name, c) in row.expr.coefficients() {
            coefs[index[name.as_str()]] = c.clone();
        }
        DenseRow {
            coefs,
            relation: row.relation,
            rhs: row.rhs.clone(),
        }
    }

    pub(crate) fn to_dense(&self) -> Vec<DenseRow> {
        self.rows.iter().map(|r| self.to_dense_row(r)).collect()
    }

    pub(crate) fn row_from_dense(&self, d: &DenseRow) -> Constraint {
        let expr = LinearExpr::from_terms(
            self.variables
                .iter()
                .zip(&d.coefs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(v, c)| (v.clone(), c.clone())),
        );
        Constraint {
            expr,
            relation: d.relation,
            rhs: d.rhs.clone(),
        }
    }

    pub(crate) fn from_dense(variables: Vec<String>, rows: &[DenseRow]) -> Self {
        let mut s = ConstraintSystem { variables, rows: Vec::new() };
        s.rows = rows.iter().map(|d| s.row_from_dense(d)).collect();
        s
    }

    /// Canonical row strings, one per row.
    pub fn canonical_rows(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.to_string()).collect()
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Dense row over the variable order of its owning system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct DenseRow {
    pub coefs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl DenseRow {
    pub fn infeasible(n: usize) -> Self {
        DenseRow {
            coefs: vec![Rational::zero(); n],
            relation: Relation::Le,
            rhs: -Rational::one(),
        }
    }

    pub fn is_zero_lhs(&self) -> bool {
        self.coefs.iter().all(Rational::is_zero)
    }

    /// Scales to coprime integer coefficients (leading coefficient positive
    /// for equalities). Returns `None` for rows that always hold; rows that
    /// never hold become the marker `0 ≤ -1`.
    pub fn normalized(&self) -> Option<DenseRow> {
        let n = self.coefs.len();
        if self.is_zero_lhs() {
            let holds = match self.relation {
                Relation::Le => !self.rhs.is_negative(),
                Relation::Eq => self.rhs.is_zero(),
            };
            return if holds { None } else { Some(DenseRow::infeasible(n)) };
        }
        let mut lcm = BigInt::one();
        for c in self.coefs.iter().filter(|c| !c.is_zero()) {
            lcm = lcm.lcm(&c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.coefs.iter().filter(|c| !c.is_zero()) {
            let scaled = c.numer() * (&lcm / c.denom());
            gcd = gcd.gcd(&scaled);
        }
        let mut factor = Rational::from_bigints(lcm, gcd);
        if self.relation == Relation::Eq {
            let lead = self.coefs.iter().find(|c| !c.is_zero()).unwrap();
            if lead.is_negative() {
                factor = -factor;
            }
        }
        if factor.is_one() {
            return Some(self.clone());
        }
        Some(DenseRow {
            coefs: self.coefs.iter().map(|c| c * &factor).collect(),
            relation: self.relation,
            rhs: &self.rhs * &factor,
        })
    }
}

/// Farkas certificate search: the rows are infeasible iff some nonnegative
/// combination (free for equalities) has zero left-hand side and negative
/// right-hand side.
pub(crate) fn feasible(rows: &[&DenseRow], nvars: usize) -> bool {
    if rows.iter().any(|r| r.is_zero_lhs() && r.normalized().is_some()) {
        return false;
    }
    let cols = multiplier_columns(rows);
    let ncols = cols.len() + 1;
    let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); ncols]; nvars + 1];
    let mut c = vec![Rational::zero(); ncols];
    for (k, (ri, sign)) in cols.iter().enumerate() {
        let row = rows[*ri];
        for v in 0..nvars {
            if !row.coefs[v].is_zero() {
                a[v][k] = if *sign { row.coefs[v].clone() } else { -&row.coefs[v] };
            }
        }
        a[nvars][k] = Rational::one();
        c[k] = if *sign { row.rhs.clone() } else { -&row.rhs };
    }
    a[nvars][ncols - 1] = Rational::one();
    let mut b = vec![Rational::zero(); nvars + 1];
    b[nvars] = Rational::one();
    match solve_standard(&a, &b, &c) {
        StandardSolution::Optimal { value, .. } => !value.is_negative(),
        _ => unreachable!("normalized Farkas program is bounded and feasible"),
    }
}

/// (row index, positive copy?) for every multiplier; equalities get both signs.
fn multiplier_columns(rows: &[&DenseRow]) -> Vec<(usize, bool)> {
    let mut cols = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        cols.push((i, true));
        if r.relation == Relation::Eq {
            cols.push((i, false));
        }
    }
    cols
}

/// Whether `target` is implied by a *feasible* set of rows, via LP duality:
/// `max a·z` over the rows equals `min b·u` over multipliers with `Aᵀu = a`.
pub(crate) fn implied(rows: &[&DenseRow], nvars: usize, target: &DenseRow) -> bool {
    match target.relation {
        Relation::Le => implied_le(rows, nvars, &target.coefs, &target.rhs),
        Relation::Eq => {
            let neg: Vec<Rational> = target.coefs.iter().map(|c| -c).collect();
            implied_le(rows, nvars, &target.coefs, &target.rhs) && implied_le(rows, nvars, &neg, &-&target.rhs)
        }
    }
}

fn implied_le(rows: &[&DenseRow], nvars: usize, coefs: &[Rational], rhs: &Rational) -> bool {
    let cols = multiplier_columns(rows);
    let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols.len()]; nvars];
    let mut c = vec![Rational::zero(); cols.len()];
    for (k, (ri, sign)) in cols.iter().enumerate() {
        let row = rows[*ri];
        for v in 0..nvars {
            if !row.coefs[v].is_zero() {
                a[v][k] = if *sign { row.coefs[v].clone() } else { -&row.coefs[v] };
            }
        }
        c[k] = if *sign { row.rhs.clone() } else { -&row.rhs };
    }
    match solve_standard(&a, coefs, &c) {
        StandardSolution::Optimal { value, .. } => &value <= rhs,
        StandardSolution::Infeasible => false,
        StandardSolution::Unbounded => true,
    }
}

/// True iff each row of `a` is implied by `b` and vice versa.
pub fn systems_equivalent(a: &ConstraintSystem, b: &ConstraintSystem) -> Result<bool, PolyError> {
    let mut va: Vec<&String> = a.variables.iter().collect();
    let mut vb: Vec<&String> = b.variables.iter().collect();
    va.sort();
    vb.sort();
    if va != vb {
        return Err(PolyError::VariableSetMismatch);
    }
    // Compare over one variable order.
    let b = ConstraintSystem {
        variables: a.variables.clone(),
        rows: b.rows.clone(),
    };
    let n = a.variables.len();
    let da = a.to_dense();
    let db = b.to_dense();
    let ra: Vec<&DenseRow> = da.iter().collect();
    let rb: Vec<&DenseRow> = db.iter().collect();
    let fa = feasible(&ra, n);
    let fb = feasible(&rb, n);
    if !fa || !fb {
        return Ok(fa == fb);
    }
    Ok(da.iter().all(|r| implied(&rb, n, r)) && db.iter().all(|r| implied(&ra, n, r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn x(c: i64) -> LinearExpr {
        LinearExpr::term("x", Rational::from_integer(c))
    }

    fn sys(rows: Vec<Constraint>) -> ConstraintSystem {
        let mut s = ConstraintSystem::new(["x", "y"]);
        s.extend(rows).unwrap();
        s
    }

    #[test]
    fn normalization_is_canonical() {
        let s = sys(vec![
            Constraint::le(LinearExpr::from_terms([("x", q(1, 2)), ("y", q(-3, 4))]), q(1, 1)),
            Constraint::eq(LinearExpr::from_terms([("x", q(-2, 1)), ("y", q(4, 1))]), q(6, 1)),
            Constraint::le(LinearExpr::new(), q(3, 1)),
        ]);
        assert_eq!(s.canonical_rows(), vec!["2·x + -3·y ≤ 4", "1·x + -2·y = -3"]);
        let bad = sys(vec![Constraint::le(LinearExpr::new(), q(-2, 1))]);
        assert_eq!(bad.canonical_rows(), vec!["0 ≤ -1"]);
        assert!(!bad.is_feasible());
    }

    #[test]
    fn unknown_variable_rejected() {
        let mut s = ConstraintSystem::new(["x"]);
        assert_eq!(
            s.push(Constraint::le(LinearExpr::var("z"), q(1, 1))),
            Err(PolyError::UnknownVariable("z".into()))
        );
    }

    #[test]
    fn equivalence_examples() {
        let one = sys(vec![Constraint::le(x(1), q(1, 1))]);
        let two = sys(vec![Constraint::le(x(2), q(2, 1))]);
        let loose = sys(vec![Constraint::le(x(1), q(2, 1))]);
        assert!(systems_equivalent(&one, &two).unwrap());
        assert!(!systems_equivalent(&one, &loose).unwrap());
        let other = ConstraintSystem::new(["x"]);
        assert_eq!(systems_equivalent(&one, &other), Err(PolyError::VariableSetMismatch));
    }

    #[test]
    fn equalities_and_infeasible_systems() {
        let eq = sys(vec![Constraint::eq(x(1), q(1, 1))]);
        let box_ = sys(vec![Constraint::le(x(1), q(1, 1)), Constraint::ge(x(1), q(1, 1))]);
        assert!(systems_equivalent(&eq, &box_).unwrap());
        let empty1 = sys(vec![Constraint::le(x(1), q(0, 1)), Constraint::ge(x(1), q(1, 1))]);
        let empty2 = sys(vec![Constraint::le(LinearExpr::var("y"), q(-5, 1)), Constraint::ge(LinearExpr::var("y"), q(1, 1))]);
        assert!(systems_equivalent(&empty1, &empty2).unwrap());
        assert!(!systems_equivalent(&empty1, &eq).unwrap());
    }

    #[test]
    fn implication_and_optimization() {
        let s = sys(vec![
            Constraint::le(LinearExpr::from_terms([("x", q(1, 1)), ("y", q(1, 1))]), q(2, 1)),
            Constraint::ge(x(1), q(0, 1)),
            Constraint::ge(LinearExpr::var("y"), q(0, 1)),
        ]);
        assert!(s.implies(&Constraint::le(x(1), q(2, 1))).unwrap());
        assert!(!s.implies(&Constraint::le(x(1), q(3, 2))).unwrap());
        assert_eq!(s.maximize(&x(3)).unwrap(), Some(q(6, 1)));
        let (v, p) = s.argmax(&x(1)).unwrap().unwrap();
        assert_eq!(v, q(2, 1));
        assert_eq!(p["x"], q(2, 1));
        assert!(s.is_satisfied_by(&p));
    }
}
