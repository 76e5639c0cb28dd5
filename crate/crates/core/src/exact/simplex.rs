//! Dense two-phase primal simplex over exact rationals.
//!
//! Works on the standard form `minimize c·x  s.t.  A x = b,  x ≥ 0`.
//! Entering columns follow Dantzig's rule (most negative reduced cost,
//! lowest index on ties); after a run of degenerate pivots the solver falls
//! back to Bland's rule until the objective moves again, which rules out
//! cycling. Leaving rows use the minimum ratio test with ties broken by the
//! lowest basic column index. Every choice is a pure function of the
//! tableau, so identical inputs always take identical pivot sequences.

use super::Rational;

const DEGENERATE_STREAK_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardSolution {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl StandardSolution {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            StandardSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    /// `rows[i]` has `ncols + 1` entries; the last one is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs followed by `-objective`.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    /// Columns that may never enter the basis.
    banned: Vec<bool>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        if !piv.is_one() {
            let inv = piv.recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            eliminate(row, &pivot_row, &nz, c);
        }
        eliminate(&mut self.cost, &pivot_row, &nz, c);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for j in 0..self.ncols {
            if self.banned[j] || !self.cost[j].is_negative() {
                continue;
            }
            if bland {
                return Some(j);
            }
            match best {
                Some(b) if self.cost[j] >= self.cost[b] => {}
                _ => best = Some(j),
            }
        }
        best
    }

    fn leaving(&self, c: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[c].is_positive() {
                continue;
            }
            let ratio = &row[self.ncols] / &row[c];
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Runs simplex iterations until optimal (`true`) or unbounded (`false`).
    fn run(&mut self) -> bool {
        let mut streak = 0usize;
        loop {
            let bland = streak >= DEGENERATE_STREAK_LIMIT;
            let Some(c) = self.entering(bland) else {
                return true;
            };
            let Some(r) = self.leaving(c) else {
                return false;
            };
            if self.rhs(r).is_zero() {
                streak += 1;
            } else {
                streak = 0;
            }
            self.pivot(r, c);
        }
    }
}

fn eliminate(row: &mut [Rational], pivot_row: &[Rational], nz: &[usize], c: usize) {
    if row[c].is_zero() {
        return;
    }
    let f = row[c].clone();
    for &j in nz {
        let delta = &f * &pivot_row[j];
        row[j] -= delta;
    }
}

/// Minimizes `c·x` subject to `A x = b`, `x ≥ 0`.
///
/// `a` must be rectangular with `b.len()` rows and `c.len()` columns.
pub fn solve_standard(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> StandardSolution {
    let n = c.len();
    assert_eq!(a.len(), b.len(), "row count mismatch");
    assert!(a.iter().all(|r| r.len() == n), "ragged constraint matrix");

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(a.len());
    for (ai, bi) in a.iter().zip(b) {
        if ai.iter().all(Rational::is_zero) {
            if bi.is_zero() {
                continue;
            }
            return StandardSolution::Infeasible;
        }
        let mut row: Vec<Rational> = ai.clone();
        row.push(bi.clone());
        if bi.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        rows.push(row);
    }
    let m = rows.len();

    // Crash basis: a column with a single positive entry can start basic in its row.
    let mut basis: Vec<Option<usize>> = vec![None; m];
    for j in 0..n {
        let mut hit = None;
        let mut count = 0;
        for (i, row) in rows.iter().enumerate() {
            if !row[j].is_zero() {
                count += 1;
                hit = Some(i);
            }
        }
        if count == 1 {
            let i = hit.unwrap();
            if basis[i].is_none() && rows[i][j].is_positive() {
                if !rows[i][j].is_one() {
                    let inv = rows[i][j].recip();
                    for v in rows[i].iter_mut() {
                        *v *= &inv;
                    }
                }
                basis[i] = Some(j);
            }
        }
    }

    // Artificial columns n.. for rows without a crash column.
    let art_rows: Vec<usize> = (0..m).filter(|&i| basis[i].is_none()).collect();
    let total = n + art_rows.len();
    for row in rows.iter_mut() {
        let rhs = row.pop().unwrap();
        row.resize(total, Rational::zero());
        row.push(rhs);
    }
    for (k, &i) in art_rows.iter().enumerate() {
        rows[i][n + k] = Rational::one();
        basis[i] = Some(n + k);
    }
    let basis: Vec<usize> = basis.into_iter().map(Option::unwrap).collect();

    let mut t = Tableau {
        rows,
        cost: vec![Rational::zero(); total + 1],
        basis,
        ncols: total,
        banned: vec![false; total],
    };

    if !art_rows.is_empty() {
        for &i in &art_rows {
            for j in (0..n).chain(std::iter::once(total)) {
                if !t.rows[i][j].is_zero() {
                    let v = &t.cost[j] - &t.rows[i][j];
                    t.cost[j] = v;
                }
            }
        }
        let bounded = t.run();
        debug_assert!(bounded, "phase 1 is bounded below by zero");
        if !t.cost[total].is_zero() {
            return StandardSolution::Infeasible;
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are linear combinations of the others and get dropped.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n {
                if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                    i += 1;
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
        for row in t.rows.iter_mut() {
            let rhs = row.pop().unwrap();
            row.truncate(n);
            row.push(rhs);
        }
        t.ncols = n;
        t.banned.truncate(n);
    }

    // Phase 2 reduced costs.
    let mut cost: Vec<Rational> = c.to_vec();
    cost.push(Rational::zero());
    for (i, row) in t.rows.iter().enumerate() {
        let cb = &c[t.basis[i]];
        if cb.is_zero() {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                let d = cb * v;
                cost[j] -= d;
            }
        }
    }
    t.cost = cost;

    if !t.run() {
        return StandardSolution::Unbounded;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        x[bj] = t.rhs(i).clone();
    }
    let value = -&t.cost[n];
    StandardSolution::Optimal { x, value }
}
