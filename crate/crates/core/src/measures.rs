//! Contextuality measures: the minimal negative-probability mass `Γ_min` and
//! the minimal coupling mismatch `Δ_min`, each as an exact LP and, for the
//! LG and EPR-Bell shapes, as a closed form.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{lp_solve, LinearExpr, LpError, LpProblem, LpResult, Rational};
use crate::polyhedra::{s_signed_max, Parity};
use crate::scenario::{require_no_signaling, ContextualVariableId, Scenario, ScenarioError, ScenarioKind};

/// Largest number of joint atoms an LP may enumerate.
pub const MAX_ATOMS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("closed form is only defined for leggett-garg and epr-bell scenarios, not {0}")]
    UnsupportedKind(ScenarioKind),
    #[error("2^{0} joint atoms exceed the limit of {MAX_ATOMS}")]
    TooLarge(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("solver returned {0} for a program that is feasible and bounded by construction")]
    Solver(&'static str),
    #[error("witness check failed: {0}")]
    WitnessInvalid(String),
}

/// `{+1,-1}` outcome of position `k` in atom `w` over `n` positions; the
/// first position is the most significant bit, so atom order matches the
/// lexicographic order of the labels.
fn sign(w: usize, k: usize, n: usize) -> i8 {
    if w >> (n - 1 - k) & 1 == 1 {
        -1
    } else {
        1
    }
}

/// Label such as `"+-++"`.
pub fn atom_label(w: usize, n: usize) -> String {
    (0..n).map(|k| if sign(w, k, n) > 0 { '+' } else { '-' }).collect()
}

fn parse_label(label: &str) -> Vec<i8> {
    label.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()
}

fn atom_count(n: usize) -> Result<usize, MeasureError> {
    if n > MAX_ATOMS.trailing_zeros() as usize {
        return Err(MeasureError::TooLarge(n));
    }
    Ok(1 << n)
}

/// Signed joint measure over all properties. Atoms that are zero are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiDistribution {
    pub properties: Vec<String>,
    pub atoms: BTreeMap<String, Rational>,
    /// `Σ|μ(w)|`.
    pub mass: Rational,
}

impl QuasiDistribution {
    /// Checks normalization, every observed table, and the reported mass.
    pub fn verify(&self, s: &Scenario) -> Result<(), String> {
        if self.properties != s.properties {
            return Err("property list differs from the scenario".into());
        }
        let total: Rational = self.atoms.values().sum();
        if !total.is_one() {
            return Err(format!("total mass {total} is not 1"));
        }
        let abs: Rational = self.atoms.values().map(Rational::abs).sum();
        if abs != self.mass {
            return Err(format!("Σ|μ| = {abs} but mass is reported as {}", self.mass));
        }
        for t in &s.tables {
            let l = s.properties.iter().position(|p| *p == t.left).unwrap();
            let r = s.properties.iter().position(|p| *p == t.right).unwrap();
            for (sl, sr, want) in t.probs.entries() {
                let got: Rational = self
                    .atoms
                    .iter()
                    .filter(|(label, _)| {
                        let w = parse_label(label);
                        w[l] == sl && w[r] == sr
                    })
                    .map(|(_, v)| v)
                    .sum();
                if &got != want {
                    return Err(format!("table {}: marginal {got} != {want}", t.context));
                }
            }
        }
        Ok(())
    }
}

/// Proper joint distribution over one binary variable per (property, context).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coupling {
    pub variables: Vec<ContextualVariableId>,
    pub atoms: BTreeMap<String, Rational>,
    /// Expected number of mismatched same-property pairs.
    pub delta: Rational,
    /// True when some property occurs in three or more contexts, in which case
    /// every pair of its copies is counted.
    pub all_pairs_extension: bool,
}

impl Coupling {
    /// Same-property pairs of contextual-variable positions.
    fn pairs(&self) -> Vec<(usize, usize)> {
        same_property_pairs(&self.variables)
    }

    pub fn verify(&self, s: &Scenario) -> Result<(), String> {
        if self.variables != s.contextual_variables() {
            return Err("contextual variables differ from the scenario".into());
        }
        if let Some((l, v)) = self.atoms.iter().find(|(_, v)| v.is_negative()) {
            return Err(format!("atom {l} has negative weight {v}"));
        }
        let total: Rational = self.atoms.values().sum();
        if !total.is_one() {
            return Err(format!("total weight {total} is not 1"));
        }
        for (t_idx, t) in s.tables.iter().enumerate() {
            for (sl, sr, want) in t.probs.entries() {
                let got: Rational = self
                    .atoms
                    .iter()
                    .filter(|(label, _)| {
                        let v = parse_label(label);
                        v[2 * t_idx] == sl && v[2 * t_idx + 1] == sr
                    })
                    .map(|(_, v)| v)
                    .sum();
                if &got != want {
                    return Err(format!("table {}: marginal {got} != {want}", t.context));
                }
            }
        }
        let pairs = self.pairs();
        let delta: Rational = self
            .atoms
            .iter()
            .map(|(label, p)| {
                let v = parse_label(label);
                let k = pairs.iter().filter(|(i, j)| v[*i] != v[*j]).count();
                p * &Rational::from_integer(k as i64)
            })
            .sum();
        if delta != self.delta {
            return Err(format!("mismatch expectation {delta} but delta is reported as {}", self.delta));
        }
        Ok(())
    }
}

fn same_property_pairs(vars: &[ContextualVariableId]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            if vars[i].property == vars[j].property {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureResult<W> {
    pub value: Rational,
    pub witness: W,
    pub closed_form: Option<Rational>,
    /// `value == closed_form`; true when there is no closed form.
    pub agree: bool,
}

impl<W> MeasureResult<W> {
    fn new(value: Rational, witness: W, closed_form: Option<Rational>) -> Self {
        let agree = closed_form.as_ref().is_none_or(|c| *c == value);
        MeasureResult {
            value,
            witness,
            closed_form,
            agree,
        }
    }
}

pub type GammaResult = MeasureResult<QuasiDistribution>;
pub type DeltaResult = MeasureResult<Coupling>;

fn property_index(s: &Scenario, name: &str) -> usize {
    s.properties.iter().position(|p| p == name).expect("validated scenario")
}

/// Marginal-matching constraints `Σ_{w consistent with (l, r)} atom(w) = p`
/// over atoms on `n` positions, one row per table entry.
fn marginal_rows(
    s: &Scenario,
    n: usize,
    positions: impl Fn(usize) -> (usize, usize),
    atom: impl Fn(usize) -> LinearExpr,
) -> Vec<(LinearExpr, Rational)> {
    let mut rows = Vec::new();
    for (t_idx, t) in s.tables.iter().enumerate() {
        let (l, r) = positions(t_idx);
        for (sl, sr, p) in t.probs.entries() {
            let mut e = LinearExpr::new();
            for w in 0..1usize << n {
                if sign(w, l, n) == sl && sign(w, r, n) == sr {
                    e.add_scaled(&atom(w), &Rational::one());
                }
            }
            rows.push((e, p.clone()));
        }
    }
    rows
}

fn plus_var(w: usize, n: usize) -> String {
    format!("p+[{}]", atom_label(w, n))
}

fn minus_var(w: usize, n: usize) -> String {
    format!("p-[{}]", atom_label(w, n))
}

fn solved(result: LpResult) -> Result<(Rational, BTreeMap<String, Rational>), MeasureError> {
    match result {
        LpResult::Optimal { value, witness } => Ok((value, witness)),
        LpResult::Infeasible => Err(MeasureError::Solver("infeasible")),
        LpResult::Unbounded => Err(MeasureError::Solver("unbounded")),
    }
}

/// `Γ_min = min Σ|μ(w)| − 1` over signed measures `μ` on joint outcomes that
/// reproduce every observed table.
pub fn gamma_min_lp(s: &Scenario) -> Result<GammaResult, MeasureError> {
    require_no_signaling(s)?;
    let n = s.properties.len();
    let atoms = atom_count(n)?;
    let mut lp = LpProblem::new();
    let mut objective = LinearExpr::new();
    for w in 0..atoms {
        objective.add_term(plus_var(w, n), Rational::one());
        objective.add_term(minus_var(w, n), Rational::one());
        lp.add_nonnegative(plus_var(w, n));
        lp.add_nonnegative(minus_var(w, n));
    }
    lp = lp.minimize(objective);
    let positions = |t: usize| {
        let t = &s.tables[t];
        (property_index(s, &t.left), property_index(s, &t.right))
    };
    let signed_atom = |w: usize| LinearExpr::from_terms([(plus_var(w, n), Rational::one()), (minus_var(w, n), -Rational::one())]);
    for (e, p) in marginal_rows(s, n, positions, signed_atom) {
        lp.add_eq(e, p);
    }
    let (mass, x) = solved(lp_solve(&lp)?)?;
    let mut quasi = BTreeMap::new();
    for w in 0..atoms {
        let mu = &x[&plus_var(w, n)] - &x[&minus_var(w, n)];
        if !mu.is_zero() {
            quasi.insert(atom_label(w, n), mu);
        }
    }
    let witness = QuasiDistribution {
        properties: s.properties.clone(),
        atoms: quasi,
        mass: mass.clone(),
    };
    witness.verify(s).map_err(MeasureError::WitnessInvalid)?;
    let closed = closed_form_if_known(s)?;
    Ok(MeasureResult::new(mass - Rational::one(), witness, closed))
}

fn lambda_var(v: usize, n: usize) -> String {
    format!("l[{}]", atom_label(v, n))
}

/// `Δ_min = min Σ Pr[copies of a property differ]` over proper couplings of
/// the contextual variables that reproduce every observed table.
pub fn delta_min_lp(s: &Scenario) -> Result<DeltaResult, MeasureError> {
    require_no_signaling(s)?;
    let vars = s.contextual_variables();
    let n = vars.len();
    let atoms = atom_count(n)?;
    let pairs = same_property_pairs(&vars);
    let extension = s.properties.iter().any(|p| vars.iter().filter(|v| &v.property == p).count() > 2);
    let mut lp = LpProblem::new();
    let mut objective = LinearExpr::new();
    for v in 0..atoms {
        let k = pairs.iter().filter(|(i, j)| sign(v, *i, n) != sign(v, *j, n)).count();
        if k > 0 {
            objective.add_term(lambda_var(v, n), Rational::from_integer(k as i64));
        }
        lp.add_nonnegative(lambda_var(v, n));
    }
    lp = lp.minimize(objective);
    for (e, p) in marginal_rows(s, n, |t| (2 * t, 2 * t + 1), |v| LinearExpr::var(lambda_var(v, n))) {
        lp.add_eq(e, p);
    }
    let (delta, x) = solved(lp_solve(&lp)?)?;
    let mut weights = BTreeMap::new();
    for v in 0..atoms {
        let p = &x[&lambda_var(v, n)];
        if !p.is_zero() {
            weights.insert(atom_label(v, n), p.clone());
        }
    }
    let witness = Coupling {
        variables: vars,
        atoms: weights,
        delta: delta.clone(),
        all_pairs_extension: extension,
    };
    witness.verify(s).map_err(MeasureError::WitnessInvalid)?;
    let closed = closed_form_if_known(s)?;
    Ok(MeasureResult::new(delta, witness, closed))
}

/// Feasibility system for a proper joint distribution of all properties.
pub fn proper_jpd_problem(s: &Scenario) -> Result<LpProblem, MeasureError> {
    let n = s.properties.len();
    let atoms = atom_count(n)?;
    let mut lp = LpProblem::new();
    for w in 0..atoms {
        lp.add_nonnegative(format!("p[{}]", atom_label(w, n)));
    }
    let positions = |t: usize| {
        let t = &s.tables[t];
        (property_index(s, &t.left), property_index(s, &t.right))
    };
    for (e, p) in marginal_rows(s, n, positions, |w| LinearExpr::var(format!("p[{}]", atom_label(w, n)))) {
        lp.add_eq(e, p);
    }
    Ok(lp)
}

/// True iff some proper joint distribution reproduces every table.
pub fn has_proper_jpd(s: &Scenario) -> Result<bool, MeasureError> {
    Ok(crate::exact::lp_feasible(&proper_jpd_problem(s)?)?)
}

/// `S_LG`: odd-parity signed maximum of the three pair correlations.
pub fn s_lg(s: &Scenario) -> Result<Rational, MeasureError> {
    if s.kind != ScenarioKind::LeggettGarg3 {
        return Err(MeasureError::UnsupportedKind(s.kind));
    }
    Ok(s_signed_max(&s.pair_correlations(), Parity::Odd).expect("three correlations"))
}

/// `S_CHSH`: odd-parity signed maximum of the four pair correlations.
pub fn s_chsh(s: &Scenario) -> Result<Rational, MeasureError> {
    if s.kind != ScenarioKind::EprBell4 {
        return Err(MeasureError::UnsupportedKind(s.kind));
    }
    Ok(s_signed_max(&s.pair_correlations(), Parity::Odd).expect("four correlations"))
}

/// `S_LG` or `S_CHSH`, whichever applies.
pub fn s_value(s: &Scenario) -> Result<Rational, MeasureError> {
    match s.kind {
        ScenarioKind::LeggettGarg3 => s_lg(s),
        ScenarioKind::EprBell4 => s_chsh(s),
        k => Err(MeasureError::UnsupportedKind(k)),
    }
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// LG: `max{0, −1/2 + S_LG/2}`; EPR-Bell: `max{0, S_CHSH/2 − 1}`.
pub fn gamma_min_formula(s: &Scenario) -> Result<Rational, MeasureError> {
    require_no_signaling(s)?;
    let v = match s.kind {
        ScenarioKind::LeggettGarg3 => &(&s_lg(s)? * &half()) - &half(),
        ScenarioKind::EprBell4 => &(&s_chsh(s)? * &half()) - &Rational::one(),
        k => return Err(MeasureError::UnsupportedKind(k)),
    };
    Ok(v.max(Rational::zero()))
}

/// Same values as [`gamma_min_formula`]: the tight lower bound on the total
/// mismatch of the connections.
pub fn delta_min_formula(s: &Scenario) -> Result<Rational, MeasureError> {
    require_no_signaling(s)?;
    let (lower_constant, s1) = match s.kind {
        ScenarioKind::LeggettGarg3 => (-half(), s_lg(s)?),
        ScenarioKind::EprBell4 => (-Rational::one(), s_chsh(s)?),
        k => return Err(MeasureError::UnsupportedKind(k)),
    };
    let bound = &lower_constant + &(&half() * &s1);
    Ok(if bound.is_positive() { bound } else { Rational::zero() })
}

fn closed_form_if_known(s: &Scenario) -> Result<Option<Rational>, MeasureError> {
    match s.kind {
        ScenarioKind::GenericPairwise => Ok(None),
        _ => gamma_min_formula(s).map(Some),
    }
}
