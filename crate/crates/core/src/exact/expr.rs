use std::collections::BTreeMap;
use std::fmt;

use super::Rational;

/// Affine expression `Σ cᵢ·xᵢ + constant` over named variables.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearExpr {
    coefficients: BTreeMap<String, Rational>,
    constant: Rational,
}

impl LinearExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinearExpr {
            coefficients: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::term(name, Rational::one())
    }

    pub fn term(name: impl Into<String>, coef: Rational) -> Self {
        let mut e = Self::new();
        e.add_term(name, coef);
        e
    }

    pub fn from_terms<S: Into<String>>(terms: impl IntoIterator<Item = (S, Rational)>) -> Self {
        let mut e = Self::new();
        for (name, c) in terms {
            e.add_term(name, c);
        }
        e
    }

    pub fn with_constant(mut self, c: Rational) -> Self {
        self.constant = c;
        self
    }

    pub fn add_term(&mut self, name: impl Into<String>, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let name = name.into();
        match self.coefficients.get_mut(&name) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.coefficients.remove(&name);
                }
            }
            None => {
                self.coefficients.insert(name, coef);
            }
        }
    }

    pub fn add_constant(&mut self, c: &Rational) {
        self.constant += c;
    }

    pub fn add_scaled(&mut self, other: &LinearExpr, factor: &Rational) {
        for (name, c) in &other.coefficients {
            self.add_term(name.clone(), c * factor);
        }
        self.constant += &other.constant * factor;
    }

    pub fn scaled(&self, factor: &Rational) -> LinearExpr {
        let mut e = LinearExpr::new();
        e.add_scaled(self, factor);
        e
    }

    pub fn coefficients(&self) -> &BTreeMap<String, Rational> {
        &self.coefficients
    }

    pub fn coefficient(&self, name: &str) -> Rational {
        self.coefficients.get(name).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.coefficients.keys().map(String::as_str)
    }

    pub fn is_constant(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Evaluates the expression; missing variables count as zero.
    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> Rational {
        let mut acc = self.constant.clone();
        for (name, c) in &self.coefficients {
            if let Some(v) = values.get(name) {
                acc += c * v;
            }
        }
        acc
    }
}

impl std::ops::Add<&LinearExpr> for &LinearExpr {
    type Output = LinearExpr;
    fn add(self, rhs: &LinearExpr) -> LinearExpr {
        let mut e = self.clone();
        e.add_scaled(rhs, &Rational::one());
        e
    }
}

impl std::ops::Sub<&LinearExpr> for &LinearExpr {
    type Output = LinearExpr;
    fn sub(self, rhs: &LinearExpr) -> LinearExpr {
        let mut e = self.clone();
        e.add_scaled(rhs, &-Rational::one());
        e
    }
}

impl std::ops::Neg for &LinearExpr {
    type Output = LinearExpr;

    fn neg(self) -> LinearExpr {
        self.scaled(&-Rational::one())
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in &self.coefficients {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{name}")?;
            first = false;
        }
        if first || !self.constant.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut e = LinearExpr::term("x", q(1, 2));
        e.add_term("x", q(-1, 2));
        e.add_term("y", Rational::zero());
        assert!(e.is_constant());
        assert_eq!(e, LinearExpr::new());
    }

    #[test]
    fn eval_and_display() {
        let e = LinearExpr::from_terms([("x", q(2, 1)), ("y", q(-1, 3))]).with_constant(q(1, 1));
        let vals = BTreeMap::from([("x".to_string(), q(1, 2)), ("y".to_string(), q(3, 1))]);
        assert_eq!(e.eval(&vals), q(1, 1));
        assert_eq!(e.to_string(), "2·x + -1/3·y + 1");
        let diff = &e - &e;
        assert_eq!(diff.to_string(), "0");
    }
}
