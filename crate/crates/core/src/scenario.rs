//! Pairwise-measured binary systems: observed tables, no-signaling checks,
//! and the expectation parameterization.
//!
//! Outcomes are always `+1` / `-1`. A table over context `c` pairs two
//! properties; each side is a distinct contextual variable `(property, c)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "leggett-garg")]
    LeggettGarg3,
    #[serde(rename = "epr-bell")]
    EprBell4,
    #[serde(rename = "generic")]
    GenericPairwise,
}

impl ScenarioKind {
    pub fn label(self) -> &'static str {
        match self {
            ScenarioKind::LeggettGarg3 => "leggett-garg",
            ScenarioKind::EprBell4 => "epr-bell",
            ScenarioKind::GenericPairwise => "generic",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A property as recorded in one context, e.g. `A_{1,2}` is `("A1", "12")`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ContextualVariableId {
    pub property: String,
    pub context: String,
}

impl fmt::Display for ContextualVariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.property, self.context)
    }
}

/// Joint probabilities of one table, keyed by (left, right) outcome.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Probs {
    #[serde(rename = "++")]
    pub pp: Rational,
    #[serde(rename = "+-")]
    pub pm: Rational,
    #[serde(rename = "-+")]
    pub mp: Rational,
    #[serde(rename = "--")]
    pub mm: Rational,
}

impl Probs {
    pub fn new(pp: Rational, pm: Rational, mp: Rational, mm: Rational) -> Self {
        Probs { pp, pm, mp, mm }
    }

    /// Probability of `(left, right)`, each `+1` or `-1`.
    pub fn get(&self, left: i8, right: i8) -> &Rational {
        match (left > 0, right > 0) {
            (true, true) => &self.pp,
            (true, false) => &self.pm,
            (false, true) => &self.mp,
            (false, false) => &self.mm,
        }
    }

    pub fn entries(&self) -> [(i8, i8, &Rational); 4] {
        [(1, 1, &self.pp), (1, -1, &self.pm), (-1, 1, &self.mp), (-1, -1, &self.mm)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObservedTable {
    pub context: String,
    pub left: String,
    pub right: String,
    pub probs: Probs,
}

impl ObservedTable {
    pub fn left_id(&self) -> ContextualVariableId {
        ContextualVariableId {
            property: self.left.clone(),
            context: self.context.clone(),
        }
    }

    pub fn right_id(&self) -> ContextualVariableId {
        ContextualVariableId {
            property: self.right.clone(),
            context: self.context.clone(),
        }
    }

    /// `Pr[left = +1]`.
    pub fn left_marginal(&self) -> Rational {
        &self.probs.pp + &self.probs.pm
    }

    /// `Pr[right = +1]`.
    pub fn right_marginal(&self) -> Rational {
        &self.probs.pp + &self.probs.mp
    }

    pub fn marginal_of(&self, property: &str) -> Option<Rational> {
        if self.left == property {
            Some(self.left_marginal())
        } else if self.right == property {
            Some(self.right_marginal())
        } else {
            None
        }
    }

    /// `⟨XY⟩ = p(+,+) − p(+,−) − p(−,+) + p(−,−)`.
    pub fn correlation(&self) -> Rational {
        let p = &self.probs;
        &(&(&p.pp - &p.pm) - &p.mp) + &p.mm
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("table {context:?}: probability {entry} is negative ({value})")]
    NegativeProbability { context: String, entry: String, value: Rational },
    #[error("table {context:?}: probabilities sum to {sum}, not 1")]
    NotNormalized { context: String, sum: Rational },
    #[error("table {context:?}: {message}")]
    BadTable { context: String, message: String },
    #[error("duplicate context {0:?}")]
    DuplicateContext(String),
    #[error("duplicate property {0:?}")]
    DuplicateProperty(String),
    #[error("{kind} scenario: {message}")]
    Shape { kind: ScenarioKind, message: String },
    #[error("scenario is signaling: property {property:?} has marginal {first} in context {context_a:?} but {second} in {context_b:?}")]
    Signaling {
        property: String,
        context_a: String,
        context_b: String,
        first: Rational,
        second: Rational,
    },
    #[error("pair {pair:?}: {bound} violated")]
    TrivialBound { pair: String, bound: String },
    #[error("expectation {name:?} = {value} lies outside [-1, 1]")]
    OutOfRange { name: String, value: Rational },
    #[error("expectation {0:?} is missing")]
    MissingExpectation(String),
    #[error("{0} scenarios have no canonical layout")]
    UnsupportedKind(ScenarioKind),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub properties: Vec<String>,
    pub tables: Vec<ObservedTable>,
}

/// Property names and table layout used by generated LG scenarios.
pub const LG_PROPERTIES: [&str; 3] = ["Q1", "Q2", "Q3"];
/// `(context, left, right)` for LG; the earlier measurement is on the left.
pub const LG_LAYOUT: [(&str, &str, &str); 3] = [("12", "Q1", "Q2"), ("13", "Q1", "Q3"), ("23", "Q2", "Q3")];
pub const EPR_PROPERTIES: [&str; 4] = ["A1", "A2", "B1", "B2"];
/// `(context, left, right)` for EPR-Bell: context `ij` pairs Alice's setting
/// `i` with Bob's setting `j`.
pub const EPR_LAYOUT: [(&str, &str, &str); 4] =
    [("11", "A1", "B1"), ("12", "A1", "B2"), ("21", "A2", "B1"), ("22", "A2", "B2")];

impl Scenario {
    /// Validates the tables and the kind's shape.
    pub fn new(kind: ScenarioKind, properties: Vec<String>, tables: Vec<ObservedTable>) -> Result<Self, ScenarioError> {
        let s = Scenario { kind, properties, tables };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        for (i, p) in self.properties.iter().enumerate() {
            if self.properties[..i].contains(p) {
                return Err(ScenarioError::DuplicateProperty(p.clone()));
            }
        }
        for (i, t) in self.tables.iter().enumerate() {
            if self.tables[..i].iter().any(|u| u.context == t.context) {
                return Err(ScenarioError::DuplicateContext(t.context.clone()));
            }
            for (name, side) in [("left", &t.left), ("right", &t.right)] {
                if !self.properties.contains(side) {
                    return Err(ScenarioError::BadTable {
                        context: t.context.clone(),
                        message: format!("{name} property {side:?} is not declared"),
                    });
                }
            }
            if t.left == t.right {
                return Err(ScenarioError::BadTable {
                    context: t.context.clone(),
                    message: "a table must pair two distinct properties".into(),
                });
            }
            for (key, (_, _, v)) in ["++", "+-", "-+", "--"].iter().zip(t.probs.entries()) {
                if v.is_negative() {
                    return Err(ScenarioError::NegativeProbability {
                        context: t.context.clone(),
                        entry: key.to_string(),
                        value: v.clone(),
                    });
                }
            }
            let sum: Rational = t.probs.entries().iter().map(|(_, _, v)| (*v).clone()).sum();
            if !sum.is_one() {
                return Err(ScenarioError::NotNormalized {
                    context: t.context.clone(),
                    sum,
                });
            }
        }
        let shape = |message: String| ScenarioError::Shape { kind: self.kind, message };
        let pairs_match = |layout: &[(&str, &str, &str)], ordered: bool| {
            let mut want: Vec<(String, String)> = layout
                .iter()
                .map(|(_, l, r)| {
                    let (l, r) = (l.to_string(), r.to_string());
                    if ordered || l < r {
                        (l, r)
                    } else {
                        (r, l)
                    }
                })
                .collect();
            let mut got: Vec<(String, String)> = self
                .tables
                .iter()
                .map(|t| {
                    let (l, r) = (t.left.clone(), t.right.clone());
                    if ordered || l < r {
                        (l, r)
                    } else {
                        (r, l)
                    }
                })
                .collect();
            want.sort();
            got.sort();
            want == got
        };
        match self.kind {
            ScenarioKind::LeggettGarg3 => {
                if self.properties.len() != 3 || self.tables.len() != 3 {
                    return Err(shape("needs exactly 3 properties and 3 tables".into()));
                }
                let p = &self.properties;
                let layout: Vec<(&str, &str, &str)> = vec![
                    ("", p[0].as_str(), p[1].as_str()),
                    ("", p[0].as_str(), p[2].as_str()),
                    ("", p[1].as_str(), p[2].as_str()),
                ];
                if !pairs_match(&layout, false) {
                    return Err(shape("needs one table per unordered pair of properties".into()));
                }
            }
            ScenarioKind::EprBell4 => {
                let mut props = self.properties.clone();
                props.sort();
                if props != EPR_PROPERTIES {
                    return Err(shape("properties must be A1, A2, B1, B2".into()));
                }
                if self.tables.len() != 4 || !pairs_match(&EPR_LAYOUT, true) {
                    return Err(shape("needs one table per (Ai, Bj) pair with Ai on the left".into()));
                }
            }
            ScenarioKind::GenericPairwise => {
                if self.tables.is_empty() {
                    return Err(shape("needs at least one table".into()));
                }
            }
        }
        Ok(())
    }

    /// Canonical LG scenario from three tables in context order 12, 13, 23.
    pub fn leggett_garg(tables: [Probs; 3]) -> Result<Self, ScenarioError> {
        Self::from_layout(ScenarioKind::LeggettGarg3, &LG_PROPERTIES, &LG_LAYOUT, tables.to_vec())
    }

    /// Canonical EPR-Bell scenario from tables in context order 11, 12, 21, 22.
    pub fn epr_bell(tables: [Probs; 4]) -> Result<Self, ScenarioError> {
        Self::from_layout(ScenarioKind::EprBell4, &EPR_PROPERTIES, &EPR_LAYOUT, tables.to_vec())
    }

    fn from_layout(
        kind: ScenarioKind,
        props: &[&str],
        layout: &[(&str, &str, &str)],
        probs: Vec<Probs>,
    ) -> Result<Self, ScenarioError> {
        let tables = layout
            .iter()
            .zip(probs)
            .map(|((c, l, r), p)| ObservedTable {
                context: c.to_string(),
                left: l.to_string(),
                right: r.to_string(),
                probs: p,
            })
            .collect();
        Scenario::new(kind, props.iter().map(|s| s.to_string()).collect(), tables)
    }

    /// Parses the JSON scenario format. Keys other than `kind`, `properties`
    /// and `tables` are ignored, so analysis reports can be read back.
    pub fn from_json_str(text: &str) -> Result<Self, ScenarioError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let s: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let mut message = inner.to_string();
            // serde_json appends the position, which is reported separately
            if let Some(cut) = message.rfind(" at line ") {
                message.truncate(cut);
            }
            ScenarioError::Parse {
                path,
                line: inner.line(),
                column: inner.column(),
                message,
            }
        })?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Contexts (table indices) in which `property` is measured, in table order.
    pub fn contexts_of(&self, property: &str) -> Vec<usize> {
        self.tables
            .iter()
            .enumerate()
            .filter(|(_, t)| t.left == property || t.right == property)
            .map(|(i, _)| i)
            .collect()
    }

    /// Every contextual variable, table by table, left before right.
    pub fn contextual_variables(&self) -> Vec<ContextualVariableId> {
        self.tables.iter().flat_map(|t| [t.left_id(), t.right_id()]).collect()
    }

    /// Pair correlations in table order.
    pub fn pair_correlations(&self) -> Vec<Rational> {
        self.tables.iter().map(ObservedTable::correlation).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignalingViolation {
    pub property: String,
    pub context_a: String,
    pub context_b: String,
    /// `Pr[+1]` in `context_a` minus `Pr[+1]` in `context_b`.
    pub difference: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoSignalingReport {
    pub ok: bool,
    pub violations: Vec<SignalingViolation>,
}

/// Compares each property's marginal across every pair of contexts containing it.
pub fn check_no_signaling(s: &Scenario) -> NoSignalingReport {
    let mut violations = Vec::new();
    for p in &s.properties {
        let seen: Vec<(&str, Rational)> = s
            .tables
            .iter()
            .filter_map(|t| t.marginal_of(p).map(|m| (t.context.as_str(), m)))
            .collect();
        for i in 0..seen.len() {
            for j in i + 1..seen.len() {
                if seen[i].1 != seen[j].1 {
                    violations.push(SignalingViolation {
                        property: p.clone(),
                        context_a: seen[i].0.to_string(),
                        context_b: seen[j].0.to_string(),
                        difference: &seen[i].1 - &seen[j].1,
                    });
                }
            }
        }
    }
    NoSignalingReport {
        ok: violations.is_empty(),
        violations,
    }
}

pub(crate) fn require_no_signaling(s: &Scenario) -> Result<(), ScenarioError> {
    let report = check_no_signaling(s);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => {
            let first = s.tables.iter().find(|t| t.context == v.context_a).unwrap().marginal_of(&v.property).unwrap();
            let second = s.tables.iter().find(|t| t.context == v.context_b).unwrap().marginal_of(&v.property).unwrap();
            Err(ScenarioError::Signaling {
                property: v.property.clone(),
                context_a: v.context_a.clone(),
                context_b: v.context_b.clone(),
                first,
                second,
            })
        }
    }
}

/// Observed expectations of a no-signaling scenario.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationVector {
    /// `⟨XY⟩` keyed by context.
    pub pair_correlations: BTreeMap<String, Rational>,
    /// `⟨X⟩` keyed by property.
    pub marginals: BTreeMap<String, Rational>,
    /// Connection correlations keyed by property; only used in derivations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection_correlations: Option<BTreeMap<String, Rational>>,
}

fn two() -> Rational {
    Rational::from_integer(2)
}

pub fn to_expectations(s: &Scenario) -> Result<ExpectationVector, ScenarioError> {
    require_no_signaling(s)?;
    let mut e = ExpectationVector::default();
    for t in &s.tables {
        let a = t.left_marginal();
        let b = t.right_marginal();
        let direct = t.correlation();
        // (4p − 1) − (2a − 1) − (2b − 1)
        let one = Rational::one();
        let via_marginals =
            &(&(&(&t.probs.pp * &Rational::from_integer(4)) - &one) - &(&(&a * &two()) - &one)) - &(&(&b * &two()) - &one);
        assert_eq!(direct, via_marginals, "correlation identity failed for table {}", t.context);
        e.pair_correlations.insert(t.context.clone(), direct);
        e.marginals.insert(t.left.clone(), &(&a * &two()) - &one);
        e.marginals.insert(t.right.clone(), &(&b * &two()) - &one);
    }
    for p in &s.properties {
        // properties not in any table carry no information; report them as 0
        e.marginals.entry(p.clone()).or_insert_with(Rational::zero);
    }
    Ok(e)
}

/// Table probabilities for `⟨X⟩ = mx`, `⟨Y⟩ = my`, `⟨XY⟩ = c`.
pub fn table_from_expectations(mx: &Rational, my: &Rational, c: &Rational, pair: &str) -> Result<Probs, ScenarioError> {
    let one = Rational::one();
    for (name, v) in [(format!("<{pair}>"), c), ("marginal".to_string(), mx), ("marginal".to_string(), my)] {
        if v > &one || v < &-&one {
            return Err(ScenarioError::OutOfRange { name, value: v.clone() });
        }
    }
    let lower_sum = &(mx + my).abs() - &one;
    if c < &lower_sum {
        return Err(ScenarioError::TrivialBound {
            pair: pair.to_string(),
            bound: format!("<XY> = {c} >= -1 + |<X> + <Y>| = {lower_sum}"),
        });
    }
    let upper = &one - &(mx - my).abs();
    if c > &upper {
        return Err(ScenarioError::TrivialBound {
            pair: pair.to_string(),
            bound: format!("<XY> = {c} <= 1 - |<X> - <Y>| = {upper}"),
        });
    }
    let quarter = Rational::new(1, 4);
    let pp = &(&(&(&one + mx) + my) + c) * &quarter;
    let pm = &(&(&(&one + mx) - my) - c) * &quarter;
    let mp = &(&(&(&one - mx) + my) - c) * &quarter;
    let mm = &(&(&(&one - mx) - my) + c) * &quarter;
    Ok(Probs::new(pp, pm, mp, mm))
}

/// Inverse of [`to_expectations`] for the canonical LG and EPR layouts.
pub fn from_expectations(kind: ScenarioKind, e: &ExpectationVector) -> Result<Scenario, ScenarioError> {
    let (props, layout): (&[&str], &[(&str, &str, &str)]) = match kind {
        ScenarioKind::LeggettGarg3 => (&LG_PROPERTIES, &LG_LAYOUT),
        ScenarioKind::EprBell4 => (&EPR_PROPERTIES, &EPR_LAYOUT),
        ScenarioKind::GenericPairwise => return Err(ScenarioError::UnsupportedKind(kind)),
    };
    let get = |map: &BTreeMap<String, Rational>, k: &str| {
        map.get(k).cloned().ok_or_else(|| ScenarioError::MissingExpectation(k.to_string()))
    };
    let mut probs = Vec::new();
    for (ctx, l, r) in layout {
        let mx = get(&e.marginals, l)?;
        let my = get(&e.marginals, r)?;
        let c = get(&e.pair_correlations, ctx)?;
        probs.push(table_from_expectations(&mx, &my, &c, &format!("{l}{r}"))?);
    }
    Scenario::from_layout(kind, props, layout, probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    pub(crate) fn probs(pp: Rational, pm: Rational, mp: Rational, mm: Rational) -> Probs {
        Probs::new(pp, pm, mp, mm)
    }

    fn uniform() -> Probs {
        probs(q(1, 4), q(1, 4), q(1, 4), q(1, 4))
    }

    fn diag() -> Probs {
        probs(q(1, 2), q(0, 1), q(0, 1), q(1, 2))
    }

    fn anti() -> Probs {
        probs(q(0, 1), q(1, 2), q(1, 2), q(0, 1))
    }

    #[test]
    fn uniform_epr_is_no_signaling() {
        let s = Scenario::epr_bell([uniform(), uniform(), uniform(), uniform()]).unwrap();
        assert!(check_no_signaling(&s).ok);
        let e = to_expectations(&s).unwrap();
        assert!(e.pair_correlations.values().all(Rational::is_zero));
        assert!(e.marginals.values().all(Rational::is_zero));
    }

    #[test]
    fn pr_box_is_no_signaling() {
        let s = Scenario::epr_bell([diag(), diag(), diag(), anti()]).unwrap();
        assert!(check_no_signaling(&s).ok);
        let e = to_expectations(&s).unwrap();
        assert_eq!(e.pair_correlations["11"], q(1, 1));
        assert_eq!(e.pair_correlations["22"], q(-1, 1));
    }

    #[test]
    fn marginal_mismatch_is_reported() {
        // A1: 3/5 in context 11, 2/5 in context 12
        let t11 = probs(q(3, 10), q(3, 10), q(1, 5), q(1, 5));
        let t12 = probs(q(1, 5), q(1, 5), q(3, 10), q(3, 10));
        let s = Scenario::epr_bell([t11, t12, uniform(), uniform()]).unwrap();
        let r = check_no_signaling(&s);
        assert!(!r.ok);
        let v = r.violations.iter().find(|v| v.property == "A1").unwrap();
        assert_eq!((v.context_a.as_str(), v.context_b.as_str()), ("11", "12"));
        assert_eq!(v.difference, q(1, 5));
        assert!(matches!(to_expectations(&s), Err(ScenarioError::Signaling { property, .. }) if property == "A1"));
    }

    #[test]
    fn expectation_examples() {
        let s = Scenario::leggett_garg([diag(), uniform(), probs(q(17, 40), q(3, 40), q(3, 40), q(17, 40))]).unwrap();
        let e = to_expectations(&s).unwrap();
        assert_eq!(e.pair_correlations["12"], q(1, 1));
        assert_eq!(e.pair_correlations["13"], q(0, 1));
        assert_eq!(e.pair_correlations["23"], q(7, 10));
        assert!(e.marginals.values().all(Rational::is_zero));
    }

    #[test]
    fn from_expectations_examples() {
        let zeros = |keys: &[&str]| keys.iter().map(|k| (k.to_string(), q(0, 1))).collect::<BTreeMap<_, _>>();
        let e = ExpectationVector {
            pair_correlations: zeros(&["11", "12", "21", "22"]),
            marginals: zeros(&EPR_PROPERTIES),
            connection_correlations: None,
        };
        let s = from_expectations(ScenarioKind::EprBell4, &e).unwrap();
        assert!(s.tables.iter().all(|t| t.probs == uniform()));

        let e = ExpectationVector {
            pair_correlations: ["12", "13", "23"].iter().map(|k| (k.to_string(), q(-1, 1))).collect(),
            marginals: zeros(&LG_PROPERTIES),
            connection_correlations: None,
        };
        let s = from_expectations(ScenarioKind::LeggettGarg3, &e).unwrap();
        assert!(s.tables.iter().all(|t| t.probs == anti()));

        let err = table_from_expectations(&q(1, 1), &q(0, 1), &q(1, 1), "XY").unwrap_err();
        assert!(matches!(err, ScenarioError::TrivialBound { .. }));
        assert!(err.to_string().contains("1 - |<X> - <Y>| = 0"));
    }

    #[test]
    fn shape_validation() {
        let bad_sum = Scenario::epr_bell([probs(q(1, 2), q(1, 2), q(1, 2), q(0, 1)), uniform(), uniform(), uniform()]);
        assert!(matches!(bad_sum, Err(ScenarioError::NotNormalized { .. })));
        let neg = Scenario::epr_bell([probs(q(-1, 4), q(3, 4), q(1, 4), q(1, 4)), uniform(), uniform(), uniform()]);
        assert!(matches!(neg, Err(ScenarioError::NegativeProbability { .. })));
        let mut s = Scenario::leggett_garg([uniform(), uniform(), uniform()]).unwrap();
        s.tables[2].left = "Q1".into();
        assert!(matches!(s.validate(), Err(ScenarioError::Shape { .. })));
    }

    #[test]
    fn json_parsing() {
        let text = r#"{
            "kind": "epr-bell",
            "properties": ["A1", "A2", "B1", "B2"],
            "tables": [
                {"context": "11", "left": "A1", "right": "B1", "probs": {"++": "17/40", "+-": "3/40", "-+": "3/40", "--": "0.425"}},
                {"context": "12", "left": "A1", "right": "B2", "probs": {"++": "1/4", "+-": "1/4", "-+": "1/4", "--": "1/4"}},
                {"context": "21", "left": "A2", "right": "B1", "probs": {"++": "1/4", "+-": "1/4", "-+": "1/4", "--": "1/4"}},
                {"context": "22", "left": "A2", "right": "B2", "probs": {"++": "1/4", "+-": "1/4", "-+": "1/4", "--": "1/4"}}
            ],
            "extra": true
        }"#;
        let s = Scenario::from_json_str(text).unwrap();
        assert_eq!(s.tables[0].probs.mm, q(17, 40));
        let again = Scenario::from_json_str(&s.to_json_string()).unwrap();
        assert_eq!(again, s);

        let broken = text.replace("\"0.425\"", "\"0.4.25\"");
        match Scenario::from_json_str(&broken) {
            Err(ScenarioError::Parse { path, line, .. }) => {
                assert_eq!(path, "tables[0].probs.--");
                assert_eq!(line, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        let float = text.replace("\"0.425\"", "0.425");
        assert!(matches!(Scenario::from_json_str(&float), Err(ScenarioError::Parse { .. })));
    }
}
