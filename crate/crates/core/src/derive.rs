//! Computer-assisted derivation of the bounds on `Δ` for the LG and EPR-Bell
//! shapes, and an independent check that the connection system is the exact
//! image of the joint distributions.
//!
//! Variables are expectations of products of contextual variables. In the
//! EPR-Bell shape `A12` is Alice's setting 1 recorded in context `12` and
//! `B12` is Bob's setting 2 in the same context; in LG `Q23` is `Q2` recorded
//! in context `23`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{lp_feasible, lp_solve, LinearExpr, LpError, LpProblem, LpResult, Rational};
use crate::polyhedra::{
    fm_eliminate, systems_equivalent, Constraint, ConstraintSystem, Parity, PolyError, Relation, Side, SignedMaxSpec,
    SignedMaxTerm,
};
use crate::random::SplitMix64;
use crate::scenario::{ExpectationVector, ScenarioKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("derivations exist only for leggett-garg and epr-bell, not {0}")]
    UnsupportedKind(ScenarioKind),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("variable {0:?} is not an expectation of this shape")]
    UnknownVariable(String),
}

/// Name of the coupling-mismatch variable in derived systems.
pub const DELTA: &str = "Delta";

/// Contextual variables and the expectations built from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub kind: ScenarioKind,
    /// `(name, property)`, e.g. `("A12", "A1")`.
    pub contextual: Vec<(String, String)>,
    /// Observed pairs `(context, left, right)` as indices into `contextual`.
    pub pairs: Vec<(String, usize, usize)>,
    /// Connections `(first, second)`: the two copies of one property.
    pub connections: Vec<(usize, usize)>,
    pub properties: Vec<String>,
    /// Right-hand side of `s(x) + s(y) ≤ bound`.
    pub cbd_bound: i64,
}

impl Shape {
    pub fn new(kind: ScenarioKind) -> Result<Self, DeriveError> {
        let own = |v: &[(&str, &str)]| v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>();
        match kind {
            ScenarioKind::EprBell4 => Ok(Shape {
                kind,
                contextual: own(&[
                    ("A11", "A1"),
                    ("A12", "A1"),
                    ("A21", "A2"),
                    ("A22", "A2"),
                    ("B11", "B1"),
                    ("B12", "B2"),
                    ("B21", "B1"),
                    ("B22", "B2"),
                ]),
                pairs: vec![("11".into(), 0, 4), ("12".into(), 1, 5), ("21".into(), 2, 6), ("22".into(), 3, 7)],
                connections: vec![(0, 1), (2, 3), (4, 6), (5, 7)],
                properties: ["A1", "A2", "B1", "B2"].map(String::from).to_vec(),
                cbd_bound: 6,
            }),
            ScenarioKind::LeggettGarg3 => Ok(Shape {
                kind,
                contextual: own(&[
                    ("Q12", "Q1"),
                    ("Q13", "Q1"),
                    ("Q21", "Q2"),
                    ("Q23", "Q2"),
                    ("Q31", "Q3"),
                    ("Q32", "Q3"),
                ]),
                pairs: vec![("12".into(), 0, 2), ("13".into(), 1, 4), ("23".into(), 3, 5)],
                connections: vec![(0, 1), (2, 3), (4, 5)],
                properties: ["Q1", "Q2", "Q3"].map(String::from).to_vec(),
                cbd_bound: 4,
            }),
            k => Err(DeriveError::UnsupportedKind(k)),
        }
    }

    fn product_name(&self, i: usize, j: usize) -> String {
        format!("<{}{}>", self.contextual[i].0, self.contextual[j].0)
    }

    /// `x`: observed pair correlations, in context order.
    pub fn pair_vars(&self) -> Vec<String> {
        self.pairs.iter().map(|(_, i, j)| self.product_name(*i, *j)).collect()
    }

    /// `y`: connection correlations, in elimination order.
    pub fn connection_vars(&self) -> Vec<String> {
        self.connections.iter().map(|(i, j)| self.product_name(*i, *j)).collect()
    }

    pub fn marginal_var(property: &str) -> String {
        format!("<{property}>")
    }

    pub fn marginal_vars(&self) -> Vec<String> {
        self.properties.iter().map(|p| Self::marginal_var(p)).collect()
    }

    fn property_of(&self, cv: usize) -> &str {
        &self.contextual[cv].1
    }

    /// Constant `c` in `Δ = c − ½ Σ y`.
    pub fn delta_constant(&self) -> Rational {
        Rational::new(self.connections.len() as i64, 2)
    }

    /// Values of the pair and marginal variables at an expectation vector.
    pub fn expectation_point(&self, e: &ExpectationVector) -> Result<BTreeMap<String, Rational>, DeriveError> {
        let mut point = BTreeMap::new();
        for ((ctx, _, _), name) in self.pairs.iter().zip(self.pair_vars()) {
            let v = e.pair_correlations.get(ctx).ok_or_else(|| DeriveError::UnknownVariable(ctx.clone()))?;
            point.insert(name, v.clone());
        }
        for p in &self.properties {
            let v = e.marginals.get(p).ok_or_else(|| DeriveError::UnknownVariable(p.clone()))?;
            point.insert(Self::marginal_var(p), v.clone());
        }
        Ok(point)
    }
}

fn var(name: &str) -> LinearExpr {
    LinearExpr::var(name)
}

fn int(k: i64) -> Rational {
    Rational::from_integer(k)
}

/// The four trivial rows `−1 + |mX + mY| ≤ ⟨XY⟩ ≤ 1 − |mX − mY|` of each
/// observed pair.
fn observed_trivial_rows(shape: &Shape) -> Vec<Constraint> {
    let mut rows = Vec::new();
    for ((_, i, j), x) in shape.pairs.iter().zip(shape.pair_vars()) {
        let mx = var(&Shape::marginal_var(shape.property_of(*i)));
        let my = var(&Shape::marginal_var(shape.property_of(*j)));
        let x = var(&x);
        let sum = &mx + &my;
        let diff = &mx - &my;
        rows.push(Constraint::le(&sum - &x, int(1)));
        rows.push(Constraint::le(&(&LinearExpr::new() - &sum) - &x, int(1)));
        rows.push(Constraint::le(&x + &diff, int(1)));
        rows.push(Constraint::le(&x - &diff, int(1)));
    }
    rows
}

/// The three rows `−1 + 2|m| ≤ y ≤ 1` of each connection.
fn connection_trivial_rows(shape: &Shape) -> Vec<Constraint> {
    let mut rows = Vec::new();
    for ((i, _), y) in shape.connections.iter().zip(shape.connection_vars()) {
        let m = var(&Shape::marginal_var(shape.property_of(*i)));
        let y = var(&y);
        rows.push(Constraint::le(&m.scaled(&int(2)) - &y, int(1)));
        rows.push(Constraint::le(&m.scaled(&int(-2)) - &y, int(1)));
        rows.push(Constraint::le(y, int(1)));
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSystem {
    pub shape: Shape,
    /// Pair correlations, then connection correlations, then marginals.
    pub system: ConstraintSystem,
    pub nontrivial_count: usize,
    pub trivial_count: usize,
}

/// `s₀(x) + s₁(y) ≤ b`, `s₁(x) + s₀(y) ≤ b`, plus the trivial bounds of
/// every observed pair and every connection.
pub fn build_connection_system(kind: ScenarioKind) -> Result<ConnectionSystem, DeriveError> {
    let shape = Shape::new(kind)?;
    let x = shape.pair_vars();
    let y = shape.connection_vars();
    let vars: Vec<String> = x.iter().chain(&y).cloned().chain(shape.marginal_vars()).collect();
    let mut system = ConstraintSystem::new(vars);
    let bound = LinearExpr::constant(int(shape.cbd_bound));
    let mut nontrivial = 0;
    for (px, py) in [(Parity::Even, Parity::Odd), (Parity::Odd, Parity::Even)] {
        let spec = SignedMaxSpec::at_most(x.clone(), px, bound.clone()).minus(y.clone(), py, Rational::one());
        for row in spec.rows()? {
            nontrivial += usize::from(system.push(row)?);
        }
    }
    let mut trivial = 0;
    for row in observed_trivial_rows(&shape).into_iter().chain(connection_trivial_rows(&shape)) {
        trivial += usize::from(system.push(row)?);
    }
    Ok(ConnectionSystem {
        shape,
        system,
        nontrivial_count: nontrivial,
        trivial_count: trivial,
    })
}

/// The target bounds on `Δ` over pair correlations and marginals, together
/// with the observed trivial bounds (which constrain the same variables).
///
/// EPR-Bell: `−1 + ½S ≤ Δ ≤ 4 − (−1 + ½S)` and `0 ≤ Δ ≤ 4 − Σ|m|`,
/// with `S = s₁(x)`.
/// LG: `−½ + ½S ≤ Δ ≤ 3 − (−½ + ½S⁰)` and `0 ≤ Δ ≤ 3 − Σ|m|`, with
/// `S = s₁(x)`, `S⁰ = s₀(x)`.
pub fn target_delta_system(kind: ScenarioKind) -> Result<ConstraintSystem, DeriveError> {
    let shape = Shape::new(kind)?;
    let x = shape.pair_vars();
    let m = shape.marginal_vars();
    let n = int(shape.connections.len() as i64);
    let half = Rational::new(1, 2);
    // lower constant: −1 for EPR-Bell, −½ for LG
    let lower = match kind {
        ScenarioKind::EprBell4 => int(-1),
        _ => -&half,
    };
    let upper_parity = match kind {
        ScenarioKind::EprBell4 => Parity::Odd,
        _ => Parity::Even,
    };
    let half_s = |parity| SignedMaxTerm {
        terms: x.clone(),
        parity,
        weight: half.clone(),
        side: Side::Left,
    };
    let specs = [
        // ½S − Δ ≤ −lower
        SignedMaxSpec {
            maxima: vec![half_s(Parity::Odd)],
            lhs: -&var(DELTA),
            bound: LinearExpr::constant(-&lower),
        },
        // Δ + ½S' ≤ n − lower
        SignedMaxSpec {
            maxima: vec![half_s(upper_parity)],
            lhs: var(DELTA),
            bound: LinearExpr::constant(&n - &lower),
        },
        // Δ + Σ|m| ≤ n
        SignedMaxSpec::at_most(m.clone(), Parity::Any, LinearExpr::constant(n.clone())).with_lhs(var(DELTA)),
    ];
    let vars: Vec<String> = x.iter().chain(&m).cloned().chain([DELTA.to_string()]).collect();
    let mut system = ConstraintSystem::new(vars);
    for spec in &specs {
        system.extend(spec.rows()?)?;
    }
    system.push(Constraint::ge(var(DELTA), Rational::zero()))?;
    system.extend(observed_trivial_rows(&shape))?;
    Ok(system)
}

/// The connection system with `Δ = c − ½Σy` adjoined.
pub fn with_delta(conn: &ConnectionSystem) -> Result<ConstraintSystem, DeriveError> {
    let mut vars = conn.system.variables().to_vec();
    vars.push(DELTA.to_string());
    let mut sys = ConstraintSystem::new(vars);
    sys.extend(conn.system.rows().iter().cloned())?;
    let mut e = var(DELTA);
    for y in conn.shape.connection_vars() {
        e.add_term(y, Rational::new(1, 2));
    }
    sys.push(Constraint::eq(e, conn.shape.delta_constant()))?;
    Ok(sys)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemListing {
    pub variables: Vec<String>,
    pub rows: Vec<String>,
}

impl From<&ConstraintSystem> for SystemListing {
    fn from(s: &ConstraintSystem) -> Self {
        SystemListing {
            variables: s.variables().to_vec(),
            rows: s.canonical_rows(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationReport {
    pub kind: ScenarioKind,
    pub nontrivial_count: usize,
    pub trivial_count: usize,
    pub elimination_order: Vec<String>,
    pub connection_system: SystemListing,
    pub derived_system: SystemListing,
    pub target_system: SystemListing,
    pub equivalent: bool,
    pub projection_check: ProjectionCheck,
    #[serde(skip)]
    pub derived: ConstraintSystem,
}

impl DerivationReport {
    /// True when the derivation and the projection check both succeeded.
    pub fn ok(&self) -> bool {
        self.equivalent && self.projection_check.ok()
    }
}

/// Eliminates the connection correlations (the first by substitution from the
/// `Δ` definition) and compares the result with [`target_delta_system`].
pub fn derive_delta_bounds(kind: ScenarioKind) -> Result<DerivationReport, DeriveError> {
    derive_delta_bounds_with(kind, &ProjectionOptions::default())
}

pub fn derive_delta_bounds_with(kind: ScenarioKind, options: &ProjectionOptions) -> Result<DerivationReport, DeriveError> {
    let conn = build_connection_system(kind)?;
    let order = conn.shape.connection_vars();
    let full = with_delta(&conn)?;
    let order_refs: Vec<&str> = order.iter().map(String::as_str).collect();
    let derived = fm_eliminate(&full, &order_refs)?;
    let target = target_delta_system(kind)?;
    let equivalent = systems_equivalent(&derived, &target)?;
    let projection_check = verify_projection(kind, &conn.system, options)?;
    Ok(DerivationReport {
        kind,
        nontrivial_count: conn.nontrivial_count,
        trivial_count: conn.trivial_count,
        elimination_order: order,
        connection_system: (&conn.system).into(),
        derived_system: (&derived).into(),
        target_system: (&target).into(),
        equivalent,
        projection_check,
        derived,
    })
}

/// Lower and upper end of a range; `None` marks an unbounded side.
pub type Range = (Option<Rational>, Option<Rational>);

/// Range of `target` over `system` with some variables fixed; `None` for an
/// unbounded side, and `None` for both if the slice is empty.
pub fn range_at(
    system: &ConstraintSystem,
    target: &str,
    fixed: &BTreeMap<String, Rational>,
) -> Result<Option<Range>, DeriveError> {
    let mut sliced = system.clone();
    for (k, v) in fixed {
        if !system.variables().iter().any(|w| w == k) {
            return Err(DeriveError::UnknownVariable(k.clone()));
        }
        sliced.push(Constraint::eq(var(k), v.clone()))?;
    }
    if !sliced.is_feasible() {
        return Ok(None);
    }
    let hi = sliced.maximize(&var(target))?;
    let lo = sliced.maximize(&-&var(target))?.map(|v| -v);
    Ok(Some((lo, hi)))
}

/// Image of one deterministic assignment of the contextual variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexImage {
    /// `+1`/`-1` per contextual variable, in shape order.
    pub assignment: Vec<i8>,
    /// Every pair and connection product, keyed by variable name.
    pub products: BTreeMap<String, Rational>,
    /// Each contextual variable's own value, keyed by its name.
    pub contextual_marginals: BTreeMap<String, Rational>,
}

impl VertexImage {
    /// True when both copies of every property agree, so the image is a point
    /// of the expectation space.
    pub fn is_consistent(&self, shape: &Shape) -> bool {
        shape.connections.iter().all(|(i, j)| self.assignment[*i] == self.assignment[*j])
    }

    /// Values of the claimed variables, taking each marginal from the first copy.
    pub fn point(&self, shape: &Shape) -> BTreeMap<String, Rational> {
        let mut p = self.products.clone();
        for (i, _) in &shape.connections {
            p.insert(Shape::marginal_var(shape.property_of(*i)), Rational::from_integer(self.assignment[*i] as i64));
        }
        p
    }
}

/// All `2^k` deterministic assignments of the `k` contextual variables.
pub fn joint_vertex_images(kind: ScenarioKind) -> Result<Vec<VertexImage>, DeriveError> {
    let shape = Shape::new(kind)?;
    let n = shape.contextual.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0usize..1 << n {
        let a: Vec<i8> = (0..n).map(|k| if mask >> (n - 1 - k) & 1 == 1 { -1 } else { 1 }).collect();
        let mut products = BTreeMap::new();
        for (_, i, j) in &shape.pairs {
            products.insert(shape.product_name(*i, *j), int((a[*i] * a[*j]) as i64));
        }
        for (i, j) in &shape.connections {
            products.insert(shape.product_name(*i, *j), int((a[*i] * a[*j]) as i64));
        }
        let contextual_marginals = shape
            .contextual
            .iter()
            .zip(&a)
            .map(|((name, _), v)| (name.clone(), int(*v as i64)))
            .collect();
        out.push(VertexImage {
            assignment: a,
            products,
            contextual_marginals,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionOptions {
    pub samples: usize,
    pub seed: u64,
    /// Number of random objective directions whose optima seed the samples.
    pub directions: usize,
    /// Additional objectives to maximize over the claimed system.
    pub extra_directions: Vec<LinearExpr>,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            samples: 200,
            seed: 0x5eed,
            directions: 32,
            extra_directions: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    /// Every claimed row holds on the joint image (mixtures of vertex images
    /// with matching copies of each marginal).
    pub vertices_sound: bool,
    /// Rows that some joint point violates, with the attained maximum.
    pub unsound_rows: Vec<String>,
    pub membership_samples: usize,
    pub membership_failures: usize,
    /// First sample with no joint preimage, if any.
    pub first_failure: Option<BTreeMap<String, Rational>>,
}

impl ProjectionCheck {
    pub fn ok(&self) -> bool {
        self.vertices_sound && self.membership_failures == 0 && self.membership_samples > 0
    }
}

fn weight_var(k: usize) -> String {
    format!("w[{k:03}]")
}

/// `Σ_k value_k(name) · w_k`, with marginals taken from `copy` (0 or 1).
fn image_expr(shape: &Shape, images: &[VertexImage], name: &str, copy: usize) -> Result<LinearExpr, DeriveError> {
    let mut e = LinearExpr::new();
    let marginal_cv = shape
        .connections
        .iter()
        .find(|(i, _)| Shape::marginal_var(shape.property_of(*i)) == name)
        .map(|(i, j)| if copy == 0 { *i } else { *j });
    for (k, img) in images.iter().enumerate() {
        let v = match marginal_cv {
            Some(cv) => int(img.assignment[cv] as i64),
            None => img.products.get(name).cloned().ok_or_else(|| DeriveError::UnknownVariable(name.to_string()))?,
        };
        e.add_term(weight_var(k), v);
    }
    Ok(e)
}

/// Mixtures of vertex images in which both copies of every property have the
/// same expectation.
fn joint_hull(shape: &Shape, images: &[VertexImage]) -> LpProblem {
    let mut lp = LpProblem::new();
    let mut total = LinearExpr::new();
    for k in 0..images.len() {
        lp.add_nonnegative(weight_var(k));
        total.add_term(weight_var(k), Rational::one());
    }
    lp.add_eq(total, Rational::one());
    for (i, j) in &shape.connections {
        let mut e = LinearExpr::new();
        for (k, img) in images.iter().enumerate() {
            e.add_term(weight_var(k), int((img.assignment[*i] - img.assignment[*j]) as i64));
        }
        lp.add_eq(e, Rational::zero());
    }
    lp
}

/// Checks that `claimed` describes exactly the set of expectation vectors
/// produced by joint distributions of the contextual variables.
///
/// Soundness: each claimed row is maximized over the joint image by LP and
/// must not exceed its bound. Completeness: points of `claimed` (optima in
/// random directions and rational mixtures of them) must each have a joint
/// preimage.
pub fn verify_projection(
    kind: ScenarioKind,
    claimed: &ConstraintSystem,
    options: &ProjectionOptions,
) -> Result<ProjectionCheck, DeriveError> {
    let shape = Shape::new(kind)?;
    let images = joint_vertex_images(kind)?;
    let hull = joint_hull(&shape, &images);
    let mut exprs: BTreeMap<String, [LinearExpr; 2]> = BTreeMap::new();
    for v in claimed.variables() {
        exprs.insert(v.clone(), [image_expr(&shape, &images, v, 0)?, image_expr(&shape, &images, v, 1)?]);
    }

    let mut unsound_rows = Vec::new();
    for row in claimed.rows() {
        let mut objective = LinearExpr::new();
        for (name, c) in row.expr.coefficients() {
            objective.add_scaled(&exprs[name][0], c);
        }
        let mut checks = vec![(objective.clone(), row.rhs.clone())];
        if row.relation == Relation::Eq {
            checks.push((-&objective, -&row.rhs));
        }
        for (obj, rhs) in checks {
            let lp = hull.clone().maximize(obj);
            match lp_solve(&lp)? {
                LpResult::Optimal { value, .. } => {
                    let max = -value;
                    if max > rhs {
                        unsound_rows.push(format!("{row} (attains {max})"));
                    }
                }
                other => unsound_rows.push(format!("{row} ({:?})", other.status())),
            }
        }
    }

    let mut rng = SplitMix64::new(options.seed);
    let mut optima: Vec<BTreeMap<String, Rational>> = Vec::new();
    let mut objectives: Vec<LinearExpr> = options.extra_directions.clone();
    for _ in 0..options.directions {
        let mut d = LinearExpr::new();
        while d.is_constant() {
            for v in claimed.variables() {
                d.add_term(v.clone(), int(rng.between(-4, 4)));
            }
        }
        objectives.push(d);
    }
    for d in &objectives {
        if let Some((_, point)) = claimed.argmax(d)? {
            if !optima.contains(&point) {
                optima.push(point);
            }
        }
    }
    let mut samples: Vec<BTreeMap<String, Rational>> = optima.clone();
    samples.truncate(options.samples);
    while samples.len() < options.samples && !optima.is_empty() {
        let parts = rng.between(2, 3) as usize;
        let mut weights = Vec::new();
        let mut picks = Vec::new();
        for _ in 0..parts {
            picks.push(rng.below(optima.len() as u64) as usize);
            weights.push(int(rng.between(1, 8)));
        }
        let total: Rational = weights.iter().sum();
        let mut mix: BTreeMap<String, Rational> = BTreeMap::new();
        for (p, w) in picks.iter().zip(&weights) {
            let f = w / &total;
            for (k, v) in &optima[*p] {
                *mix.entry(k.clone()).or_insert_with(Rational::zero) += &f * v;
            }
        }
        samples.push(mix);
    }

    let mut failures = 0;
    let mut first_failure = None;
    for s in &samples {
        let mut lp = hull.clone();
        for (name, [e0, e1]) in &exprs {
            lp.add_eq(e0.clone(), s[name].clone());
            if e0 != e1 {
                lp.add_eq(e1.clone(), s[name].clone());
            }
        }
        if !lp_feasible(&lp)? {
            failures += 1;
            first_failure.get_or_insert_with(|| s.clone());
        }
    }
    Ok(ProjectionCheck {
        vertices_sound: unsound_rows.is_empty(),
        unsound_rows,
        membership_samples: samples.len(),
        membership_failures: failures,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn connection_system_counts() {
        let epr = build_connection_system(ScenarioKind::EprBell4).unwrap();
        assert_eq!((epr.nontrivial_count, epr.trivial_count), (128, 28));
        assert_eq!(epr.system.len(), 156);
        let lg = build_connection_system(ScenarioKind::LeggettGarg3).unwrap();
        assert_eq!((lg.nontrivial_count, lg.trivial_count), (32, 21));
        assert!(matches!(
            build_connection_system(ScenarioKind::GenericPairwise),
            Err(DeriveError::UnsupportedKind(_))
        ));
    }

    #[test]
    fn vertex_image_examples() {
        let v = joint_vertex_images(ScenarioKind::EprBell4).unwrap();
        assert_eq!(v.len(), 256);
        assert!(v[0].products.values().all(Rational::is_one));
        assert!(v[0].contextual_marginals.values().all(Rational::is_one));

        let lg = joint_vertex_images(ScenarioKind::LeggettGarg3).unwrap();
        assert_eq!(lg.len(), 64);
        // Q12 = +1, Q13 = -1, the rest +1: second position flipped
        let img = lg.iter().find(|i| i.assignment == [1, -1, 1, 1, 1, 1]).unwrap();
        assert_eq!(img.products["<Q12Q13>"], q(-1, 1));
        assert_eq!(img.products["<Q12Q21>"], q(1, 1));
        assert!(!img.is_consistent(&Shape::new(ScenarioKind::LeggettGarg3).unwrap()));
        for i in &lg {
            assert!(i.products.values().chain(i.contextual_marginals.values()).all(|x| x.abs().is_one()));
        }
    }

    #[test]
    fn target_system_sizes() {
        let epr = target_delta_system(ScenarioKind::EprBell4).unwrap();
        assert_eq!(epr.len(), 8 + 8 + 16 + 1 + 16);
        let lg = target_delta_system(ScenarioKind::LeggettGarg3).unwrap();
        assert_eq!(lg.len(), 4 + 4 + 8 + 1 + 12);
    }

    #[test]
    fn lg_derivation_matches_target() {
        let r = derive_delta_bounds(ScenarioKind::LeggettGarg3).unwrap();
        assert!(r.equivalent, "{:#?}", r.derived_system);
        assert!(r.projection_check.ok(), "{:?}", r.projection_check);
    }
}
