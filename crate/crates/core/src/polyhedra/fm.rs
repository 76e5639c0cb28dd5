//! Fourier–Motzkin projection and LP-certified redundancy removal.

use std::collections::HashMap;

use super::system::{feasible, implied, DenseRow, Relation};
use super::{ConstraintSystem, PolyError};
use crate::exact::Rational;

/// Projects `system` onto the variables not listed in `vars`, eliminating
/// them in the given order. Equalities that mention the variable being
/// eliminated are used for substitution; otherwise every row with a positive
/// coefficient is paired with every row with a negative one. Redundant rows
/// are pruned after each step.
pub fn fm_eliminate(system: &ConstraintSystem, vars: &[&str]) -> Result<ConstraintSystem, PolyError> {
    let mut variables: Vec<String> = system.variables().to_vec();
    for v in vars {
        if !variables.iter().any(|w| w == v) {
            return Err(PolyError::UnknownVariable(v.to_string()));
        }
    }
    let mut rows: Vec<DenseRow> = system.to_dense();
    for v in vars {
        let k = variables.iter().position(|w| w == v).unwrap();
        rows = eliminate_one(rows, k);
        for r in rows.iter_mut() {
            r.coefs.remove(k);
        }
        variables.remove(k);
        rows = prune(rows, variables.len());
    }
    Ok(ConstraintSystem::from_dense(variables, &rows))
}

fn eliminate_one(rows: Vec<DenseRow>, k: usize) -> Vec<DenseRow> {
    if let Some(pos) = rows.iter().position(|r| r.relation == Relation::Eq && !r.coefs[k].is_zero()) {
        let pivot = rows[pos].clone();
        let inv = pivot.coefs[k].recip();
        let mut out = Vec::with_capacity(rows.len() - 1);
        for (i, r) in rows.into_iter().enumerate() {
            if i == pos {
                continue;
            }
            if r.coefs[k].is_zero() {
                out.push(r);
                continue;
            }
            let f = &r.coefs[k] * &inv;
            out.push(DenseRow {
                coefs: r.coefs.iter().zip(&pivot.coefs).map(|(a, b)| a - &(&f * b)).collect(),
                relation: r.relation,
                rhs: &r.rhs - &(&f * &pivot.rhs),
            });
        }
        return out;
    }

    let mut keep = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in rows {
        if r.coefs[k].is_zero() {
            keep.push(r);
        } else if r.coefs[k].is_positive() {
            pos.push(r);
        } else {
            neg.push(r);
        }
    }
    for p in &pos {
        for n in &neg {
            let wp = -&n.coefs[k];
            let wn = p.coefs[k].clone();
            keep.push(DenseRow {
                coefs: p.coefs.iter().zip(&n.coefs).map(|(a, b)| &(a * &wp) + &(b * &wn)).collect(),
                relation: Relation::Le,
                rhs: &(&p.rhs * &wp) + &(&n.rhs * &wn),
            });
        }
    }
    keep
}

/// Normalizes, drops rows that always hold, merges rows with identical
/// left-hand sides (keeping the tightest bound). Order of first occurrence
/// is preserved.
pub(crate) fn dedup(rows: Vec<DenseRow>, nvars: usize) -> Vec<DenseRow> {
    let mut out: Vec<DenseRow> = Vec::new();
    let mut seen: HashMap<(Vec<Rational>, Relation), usize> = HashMap::new();
    for r in rows {
        let Some(r) = r.normalized() else { continue };
        if r.is_zero_lhs() {
            // the normalized infeasibility marker
            return vec![DenseRow::infeasible(nvars)];
        }
        let key = (r.coefs.clone(), r.relation);
        match seen.get(&key) {
            Some(&i) => match r.relation {
                Relation::Le => {
                    if r.rhs < out[i].rhs {
                        out[i].rhs = r.rhs;
                    }
                }
                Relation::Eq => {
                    if r.rhs != out[i].rhs {
                        return vec![DenseRow::infeasible(nvars)];
                    }
                }
            },
            None => {
                seen.insert(key, out.len());
                out.push(r);
            }
        }
    }
    out
}

/// Drops every inequality implied by the remaining rows.
///
/// Each candidate is first tested against the rows already certified
/// irredundant (a small LP); only if that fails is it tested against all
/// surviving rows. Removing an implied row never changes the solution set,
/// so certifications stay valid as the set shrinks.
pub(crate) fn prune(rows: Vec<DenseRow>, nvars: usize) -> Vec<DenseRow> {
    let rows = dedup(rows, nvars);
    {
        let refs: Vec<&DenseRow> = rows.iter().collect();
        if !feasible(&refs, nvars) {
            return vec![DenseRow::infeasible(nvars)];
        }
    }
    let n = rows.len();
    let mut alive = vec![true; n];
    let mut certified: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.relation == Relation::Eq)
        .map(|(i, _)| i)
        .collect();
    for i in 0..n {
        if rows[i].relation == Relation::Eq {
            continue;
        }
        let small: Vec<&DenseRow> = certified.iter().map(|&j| &rows[j]).collect();
        if !small.is_empty() && implied(&small, nvars, &rows[i]) {
            alive[i] = false;
            continue;
        }
        let others: Vec<&DenseRow> = (0..n).filter(|&j| j != i && alive[j]).map(|j| &rows[j]).collect();
        if implied(&others, nvars, &rows[i]) {
            alive[i] = false;
        } else {
            certified.push(i);
        }
    }
    rows.into_iter().zip(alive).filter(|(_, a)| *a).map(|(r, _)| r).collect()
}

/// Removes rows implied by the others; the solution set is unchanged.
pub fn remove_redundant(system: &ConstraintSystem) -> ConstraintSystem {
    let rows = prune(system.to_dense(), system.variables().len());
    ConstraintSystem::from_dense(system.variables().to_vec(), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, LinearExpr};
    use crate::polyhedra::{systems_equivalent, Constraint};

    fn v(name: &str) -> LinearExpr {
        LinearExpr::var(name)
    }

    #[test]
    fn transitive_elimination() {
        let mut s = ConstraintSystem::new(["x", "y"]);
        s.push(Constraint::le(&v("x") - &v("y"), q(0, 1))).unwrap();
        s.push(Constraint::le(v("y"), q(1, 1))).unwrap();
        let p = fm_eliminate(&s, &["y"]).unwrap();
        assert_eq!(p.variables(), ["x"]);
        assert_eq!(p.canonical_rows(), vec!["1·x ≤ 1"]);
    }

    #[test]
    fn empty_projection() {
        let mut s = ConstraintSystem::new(["y"]);
        s.push(Constraint::ge(v("y"), q(0, 1))).unwrap();
        s.push(Constraint::le(v("y"), q(-1, 1))).unwrap();
        let p = fm_eliminate(&s, &["y"]).unwrap();
        assert_eq!(p.canonical_rows(), vec!["0 ≤ -1"]);
        assert!(!p.is_feasible());
    }

    #[test]
    fn equality_substitution() {
        // x = 2y, 0 ≤ y ≤ 1 projects to 0 ≤ x ≤ 2
        let mut s = ConstraintSystem::new(["x", "y"]);
        s.push(Constraint::eq(&v("x") - &v("y").scaled(&q(2, 1)), q(0, 1))).unwrap();
        s.push(Constraint::ge(v("y"), q(0, 1))).unwrap();
        s.push(Constraint::le(v("y"), q(1, 1))).unwrap();
        let p = fm_eliminate(&s, &["y"]).unwrap();
        let mut expected = ConstraintSystem::new(["x"]);
        expected.push(Constraint::ge(v("x"), q(0, 1))).unwrap();
        expected.push(Constraint::le(v("x"), q(2, 1))).unwrap();
        assert!(systems_equivalent(&p, &expected).unwrap());
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn unknown_elimination_variable() {
        let s = ConstraintSystem::new(["x"]);
        assert_eq!(fm_eliminate(&s, &["q"]), Err(PolyError::UnknownVariable("q".into())));
    }

    #[test]
    fn redundancy_examples() {
        let mut s = ConstraintSystem::new(["x"]);
        s.push(Constraint::le(v("x"), q(1, 1))).unwrap();
        s.push(Constraint::le(v("x"), q(2, 1))).unwrap();
        assert_eq!(remove_redundant(&s).canonical_rows(), vec!["1·x ≤ 1"]);

        let mut s = ConstraintSystem::new(["x", "y"]);
        s.push(Constraint::le(&v("x") + &v("y"), q(3, 2))).unwrap();
        s.push(Constraint::le(v("x"), q(1, 1))).unwrap();
        s.push(Constraint::le(v("y"), q(1, 1))).unwrap();
        assert_eq!(remove_redundant(&s).len(), 3);

        // x + y ≤ 2 is the sum of the two bounds
        let mut s = ConstraintSystem::new(["x", "y"]);
        s.push(Constraint::le(&v("x") + &v("y"), q(2, 1))).unwrap();
        s.push(Constraint::le(v("x"), q(1, 1))).unwrap();
        s.push(Constraint::le(v("y"), q(1, 1))).unwrap();
        assert_eq!(remove_redundant(&s).canonical_rows(), vec!["1·x ≤ 1", "1·y ≤ 1"]);
    }
}
