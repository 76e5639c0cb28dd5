//! Parity-restricted signed maxima as families of linear rows.

use serde::{Deserialize, Serialize};

use super::{Constraint, ConstraintSystem, PolyError};
use crate::exact::{LinearExpr, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Even number of minus signs (`s₀`).
    Even,
    /// Odd number of minus signs (`s₁`).
    Odd,
    /// Every sign vector; the maximum is `Σ|xᵢ|`.
    Any,
}

impl Parity {
    fn admits(self, minus_count: u32) -> bool {
        match self {
            Parity::Even => minus_count.is_multiple_of(2),
            Parity::Odd => minus_count % 2 == 1,
            Parity::Any => true,
        }
    }
}

/// Sign vectors of the given parity over `n` terms, in increasing bitmask
/// order (bit `k` set means term `k` is negated).
pub fn sign_vectors(n: usize, parity: Parity) -> Vec<Vec<i8>> {
    assert!(n < 31, "too many terms");
    (0u32..1 << n)
        .filter(|mask| parity.admits(mask.count_ones()))
        .map(|mask| (0..n).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

/// Exact maximum of `±v₁ ± … ± vₙ` over sign vectors of the given parity.
pub fn s_signed_max(values: &[Rational], parity: Parity) -> Result<Rational, PolyError> {
    if values.is_empty() {
        return Err(PolyError::EmptySignedMax);
    }
    let abs_sum: Rational = values.iter().map(Rational::abs).sum();
    let negatives = values.iter().filter(|v| v.is_negative()).count();
    // The unconstrained optimum flips exactly the negative entries; if that
    // has the wrong parity, the cheapest fix flips the smallest magnitude.
    let ok = match parity {
        Parity::Any => true,
        Parity::Even => negatives % 2 == 0,
        Parity::Odd => negatives % 2 == 1,
    };
    if ok {
        return Ok(abs_sum);
    }
    let min_abs = values.iter().map(Rational::abs).min().unwrap();
    Ok(abs_sum - min_abs * Rational::from_integer(2))
}

/// Which side of `≤` a maximum sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `… + w·s(terms) ≤ …`
    Left,
    /// `… ≤ … − w·s(terms)`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMaxTerm {
    pub terms: Vec<String>,
    pub parity: Parity,
    /// Positive weight on the maximum.
    pub weight: Rational,
    pub side: Side,
}

/// `lhs + Σ_left w·s(…) ≤ bound − Σ_right w·s(…)`.
///
/// Each maximum on the small side of the inequality splits into one row per
/// admissible sign vector, so the expansion is the product of the
/// per-maximum sign-vector counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMaxSpec {
    pub maxima: Vec<SignedMaxTerm>,
    pub lhs: LinearExpr,
    pub bound: LinearExpr,
}

impl SignedMaxSpec {
    /// `s(terms) ≤ bound`.
    pub fn at_most<S: Into<String>>(terms: impl IntoIterator<Item = S>, parity: Parity, bound: LinearExpr) -> Self {
        SignedMaxSpec {
            maxima: vec![SignedMaxTerm {
                terms: terms.into_iter().map(Into::into).collect(),
                parity,
                weight: Rational::one(),
                side: Side::Left,
            }],
            lhs: LinearExpr::new(),
            bound,
        }
    }

    /// Adds `− w·s(terms)` to the bound side.
    pub fn minus<S: Into<String>>(mut self, terms: impl IntoIterator<Item = S>, parity: Parity, weight: Rational) -> Self {
        self.maxima.push(SignedMaxTerm {
            terms: terms.into_iter().map(Into::into).collect(),
            parity,
            weight,
            side: Side::Right,
        });
        self
    }

    /// Adds `+ w·s(terms)` to the left side.
    pub fn plus<S: Into<String>>(mut self, terms: impl IntoIterator<Item = S>, parity: Parity, weight: Rational) -> Self {
        self.maxima.push(SignedMaxTerm {
            terms: terms.into_iter().map(Into::into).collect(),
            parity,
            weight,
            side: Side::Left,
        });
        self
    }

    pub fn with_lhs(mut self, lhs: LinearExpr) -> Self {
        self.lhs = lhs;
        self
    }

    pub fn row_count(&self) -> usize {
        self.maxima
            .iter()
            .map(|m| sign_vectors(m.terms.len(), m.parity).len())
            .product()
    }

    /// The rows as plain constraints, in a fixed order.
    pub fn rows(&self) -> Result<Vec<Constraint>, PolyError> {
        for m in &self.maxima {
            if m.terms.is_empty() {
                return Err(PolyError::EmptySignedMax);
            }
            if !m.weight.is_positive() {
                return Err(PolyError::NonPositiveWeight);
            }
        }
        let sign_sets: Vec<Vec<Vec<i8>>> = self
            .maxima
            .iter()
            .map(|m| sign_vectors(m.terms.len(), m.parity))
            .collect();
        let mut base = self.lhs.clone();
        base.add_scaled(&self.bound, &-Rational::one());
        let mut rows = Vec::with_capacity(self.row_count());
        let mut choice = vec![0usize; self.maxima.len()];
        loop {
            let mut expr = base.clone();
            for (k, m) in self.maxima.iter().enumerate() {
                for (name, &sign) in m.terms.iter().zip(&sign_sets[k][choice[k]]) {
                    let c = if sign > 0 { m.weight.clone() } else { -&m.weight };
                    expr.add_term(name.clone(), c);
                }
            }
            rows.push(Constraint::le(expr, Rational::zero()));
            // odometer, last maximum fastest
            let mut k = self.maxima.len();
            loop {
                if k == 0 {
                    return Ok(rows);
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < sign_sets[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }
}

/// Expands a signed-maximum inequality into a system over its variables.
pub fn expand_signed_max(spec: &SignedMaxSpec) -> Result<ConstraintSystem, PolyError> {
    let mut vars: Vec<String> = Vec::new();
    for m in &spec.maxima {
        vars.extend(m.terms.iter().cloned());
    }
    vars.extend(spec.lhs.variables().map(str::to_string));
    vars.extend(spec.bound.variables().map(str::to_string));
    let mut sys = ConstraintSystem::new(vars);
    sys.extend(spec.rows()?)?;
    Ok(sys)
}
