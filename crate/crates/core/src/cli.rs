//! Command implementations behind the `contexture` binary. Each command
//! returns its full output and exit status so it can be driven from tests.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::derive::{derive_delta_bounds, DerivationReport};
use crate::exact::Rational;
use crate::measures::{
    delta_min_lp, gamma_min_lp, s_value, Coupling, MeasureError, MeasureResult, QuasiDistribution,
};
use crate::random::{shrink, GridPoint, ScenarioGenerator};
use crate::scenario::{
    check_no_signaling, to_expectations, ExpectationVector, NoSignalingReport, ObservedTable, Scenario, ScenarioError,
    ScenarioKind,
};

/// Environment variable overriding the number of worker threads.
pub const THREADS_ENV: &str = "CONTEXTURE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exit {
    Ok = 0,
    InputError = 2,
    Signaling = 3,
    SolverInconsistency = 4,
    DerivationMismatch = 5,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit: Exit,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            exit: Exit::Ok,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(exit: Exit, stderr: impl Into<String>) -> Self {
        CommandOutput {
            exit,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

/// `p/q (0.xxxxxx)`.
pub fn show(r: &Rational) -> String {
    format!("{r} ({})", r.to_decimal_string(6))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Statistic {
    pub name: &'static str,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureSummary<W> {
    pub value: Rational,
    pub closed_form: Option<Rational>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<W>,
}

impl<W> MeasureSummary<W> {
    fn from_result(r: MeasureResult<W>, keep_witness: bool) -> Self {
        MeasureSummary {
            value: r.value,
            closed_form: r.closed_form,
            agree: r.agree,
            witness: keep_witness.then_some(r.witness),
        }
    }
}

/// Analysis of one scenario. The leading `kind`, `properties` and `tables`
/// keys make the JSON form readable as a scenario file again.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub kind: ScenarioKind,
    pub properties: Vec<String>,
    pub tables: Vec<ObservedTable>,
    pub no_signaling: NoSignalingReport,
    pub expectations: Option<ExpectationVector>,
    pub statistic: Option<Statistic>,
    pub gamma_min: Option<MeasureSummary<QuasiDistribution>>,
    pub delta_min: Option<MeasureSummary<Coupling>>,
    /// `Γ_min == Δ_min`.
    pub equal: Option<bool>,
    /// Every property occurs in at most two contexts, so `Δ` counts each
    /// connection once.
    pub delta_pairs_are_connections: Option<bool>,
}

impl AnalysisReport {
    /// Exit status implied by the report.
    pub fn exit(&self) -> Exit {
        if !self.no_signaling.ok {
            return Exit::Signaling;
        }
        let agree = self.gamma_min.as_ref().is_some_and(|g| g.agree) && self.delta_min.as_ref().is_some_and(|d| d.agree);
        let theorem_applies = self.kind != ScenarioKind::GenericPairwise;
        if !agree || (theorem_applies && self.equal != Some(true)) {
            return Exit::SolverInconsistency;
        }
        Exit::Ok
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out += &format!("kind: {}\n", self.kind);
        out += &format!("properties: {}\n", self.properties.join(", "));
        if self.no_signaling.ok {
            out += "no-signaling: ok\n";
        } else {
            out += "no-signaling: VIOLATED\n";
            for v in &self.no_signaling.violations {
                out += &format!(
                    "  {}: Pr[+1] differs by {} between contexts {} and {}\n",
                    v.property,
                    show(&v.difference),
                    v.context_a,
                    v.context_b
                );
            }
            return out;
        }
        if let Some(st) = &self.statistic {
            out += &format!("{} = {}\n", st.name, show(&st.value));
        }
        let line = |name: &str, value: &Rational, closed: &Option<Rational>, agree: bool| {
            let mut l = format!("{name} = {}", show(value));
            if let Some(c) = closed {
                l += &format!("  closed form {}  {}", show(c), if agree { "agree" } else { "DISAGREE" });
            }
            l + "\n"
        };
        if let Some(g) = &self.gamma_min {
            out += &line("Gamma_min", &g.value, &g.closed_form, g.agree);
            if let Some(w) = &g.witness {
                out += &format!("  quasi-distribution over ({}), total mass {}:\n", w.properties.join(", "), show(&w.mass));
                for (atom, p) in &w.atoms {
                    out += &format!("    {atom}  {}\n", show(p));
                }
            }
        }
        if let Some(d) = &self.delta_min {
            out += &line("Delta_min", &d.value, &d.closed_form, d.agree);
            if let Some(w) = &d.witness {
                let names: Vec<String> = w.variables.iter().map(|v| v.to_string()).collect();
                out += &format!("  coupling over ({}):\n", names.join(", "));
                for (atom, p) in &w.atoms {
                    out += &format!("    {atom}  {}\n", show(p));
                }
            }
        }
        if let Some(false) = self.delta_pairs_are_connections {
            out += "note: some property occurs in three or more contexts; Delta counts every pair of its copies\n";
        }
        if let Some(eq) = self.equal {
            out += &format!("Gamma_min == Delta_min: {}\n", if eq { "yes" } else { "no" });
        }
        out
    }
}

/// Runs both measures on a validated scenario.
pub fn analyze_scenario(s: &Scenario, keep_witness: bool) -> Result<AnalysisReport, MeasureError> {
    let no_signaling = check_no_signaling(s);
    let mut report = AnalysisReport {
        kind: s.kind,
        properties: s.properties.clone(),
        tables: s.tables.clone(),
        no_signaling,
        expectations: None,
        statistic: None,
        gamma_min: None,
        delta_min: None,
        equal: None,
        delta_pairs_are_connections: None,
    };
    if !report.no_signaling.ok {
        return Ok(report);
    }
    report.expectations = Some(to_expectations(s)?);
    report.statistic = match s.kind {
        ScenarioKind::LeggettGarg3 => Some(Statistic {
            name: "S_LG",
            value: s_value(s)?,
        }),
        ScenarioKind::EprBell4 => Some(Statistic {
            name: "S_CHSH",
            value: s_value(s)?,
        }),
        ScenarioKind::GenericPairwise => None,
    };
    let g = gamma_min_lp(s)?;
    let d = delta_min_lp(s)?;
    report.equal = Some(g.value == d.value);
    report.delta_pairs_are_connections = Some(!d.witness.all_pairs_extension);
    report.gamma_min = Some(MeasureSummary::from_result(g, keep_witness));
    report.delta_min = Some(MeasureSummary::from_result(d, keep_witness));
    Ok(report)
}

fn measure_failure(e: MeasureError) -> CommandOutput {
    let exit = match &e {
        MeasureError::Scenario(ScenarioError::Signaling { .. }) => Exit::Signaling,
        MeasureError::Scenario(_) | MeasureError::TooLarge(_) | MeasureError::UnsupportedKind(_) => Exit::InputError,
        MeasureError::Lp(_) | MeasureError::Solver(_) | MeasureError::WitnessInvalid(_) => Exit::SolverInconsistency,
    };
    CommandOutput::fail(exit, format!("error: {e}\n"))
}

pub fn load_scenario(path: &Path) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Scenario::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// `analyze <file> [--json] [--witness]`
pub fn cmd_analyze(path: &Path, json: bool, witness: bool) -> CommandOutput {
    let s = match load_scenario(path) {
        Ok(s) => s,
        Err(e) => return CommandOutput::fail(Exit::InputError, format!("error: {e}\n")),
    };
    match analyze_scenario(&s, witness) {
        Ok(report) => {
            let stdout = if json { report.to_json() } else { report.to_human() };
            let exit = report.exit();
            let stderr = match exit {
                Exit::SolverInconsistency => "error: LP values and closed forms disagree\n".to_string(),
                _ => String::new(),
            };
            CommandOutput { exit, stdout, stderr }
        }
        Err(e) => measure_failure(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomEntry {
    pub index: usize,
    pub statistic: Rational,
    pub gamma_min: Rational,
    pub delta_min: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomReport {
    pub kind: ScenarioKind,
    pub seed: u64,
    pub denominator_bound: i64,
    pub count: usize,
    pub contextual: usize,
    pub max_gamma_min: Rational,
    pub all_equal: bool,
    pub results: Vec<RandomEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomOptions {
    pub kind: ScenarioKind,
    pub count: usize,
    pub seed: u64,
    pub denominator_bound: i64,
    /// Where a reproducer is written if the measures ever differ.
    pub reproducer_dir: PathBuf,
}

/// Problem found for one scenario, if any.
fn discrepancy(s: &Scenario) -> Result<RandomEntry, String> {
    let g = gamma_min_lp(s).map_err(|e| e.to_string())?;
    let d = delta_min_lp(s).map_err(|e| e.to_string())?;
    if g.value != d.value || !g.agree || !d.agree {
        return Err(format!(
            "Gamma_min = {}, Delta_min = {}, closed form {}",
            g.value,
            d.value,
            g.closed_form.map_or("-".to_string(), |c| c.to_string())
        ));
    }
    Ok(RandomEntry {
        index: 0,
        statistic: s_value(s).map_err(|e| e.to_string())?,
        gamma_min: g.value,
        delta_min: d.value,
    })
}

fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        b = b.num_threads(n.max(1));
    }
    b.build().expect("thread pool")
}

/// Evaluates `count` generated scenarios and returns them in index order.
pub fn run_random(opts: &RandomOptions) -> Result<RandomReport, (GridPoint, String)> {
    let mut generator = ScenarioGenerator::new(opts.kind, opts.seed, opts.denominator_bound);
    let points: Vec<GridPoint> = (0..opts.count).map(|_| generator.next_point()).collect();
    let outcomes: Vec<Result<RandomEntry, String>> =
        thread_pool().install(|| points.par_iter().map(|p| discrepancy(&p.to_scenario())).collect());
    let mut results = Vec::with_capacity(outcomes.len());
    for (index, (o, p)) in outcomes.into_iter().zip(&points).enumerate() {
        match o {
            Ok(mut e) => {
                e.index = index;
                results.push(e);
            }
            Err(msg) => return Err((p.clone(), format!("scenario {index}: {msg}"))),
        }
    }
    let contextual = results.iter().filter(|e| e.gamma_min.is_positive()).count();
    let max_gamma_min = results.iter().map(|e| e.gamma_min.clone()).max().unwrap_or_else(Rational::zero);
    Ok(RandomReport {
        kind: opts.kind,
        seed: opts.seed,
        denominator_bound: opts.denominator_bound,
        count: opts.count,
        contextual,
        max_gamma_min,
        all_equal: true,
        results,
    })
}

/// `random --kind <lg|epr> --count N --seed S [--denominator-bound D] [--json]`
pub fn cmd_random(opts: &RandomOptions, json: bool) -> CommandOutput {
    if opts.kind == ScenarioKind::GenericPairwise {
        return CommandOutput::fail(Exit::InputError, "error: random scenarios are lg or epr\n");
    }
    if opts.denominator_bound < 1 {
        return CommandOutput::fail(Exit::InputError, "error: --denominator-bound must be at least 1\n");
    }
    match run_random(opts) {
        Ok(report) => {
            if json {
                CommandOutput::ok(to_json(&report))
            } else {
                CommandOutput::ok(format!(
                    "{}: {} scenarios (seed {}, grid 1/{}): Gamma_min == Delta_min == closed form for all; {} contextual; max Gamma_min {}\n",
                    report.kind,
                    report.count,
                    report.seed,
                    report.denominator_bound,
                    report.contextual,
                    show(&report.max_gamma_min)
                ))
            }
        }
        Err((point, msg)) => {
            let small = shrink(&point, |p| discrepancy(&p.to_scenario()).is_err());
            let path = opts
                .reproducer_dir
                .join(format!("contexture-repro-{}-{}.json", opts.kind.label(), opts.seed));
            let written = std::fs::write(&path, small.to_scenario().to_json_string() + "\n");
            let mut stderr = format!("error: measures disagree: {msg}\n");
            match written {
                Ok(()) => stderr += &format!("minimized reproducer written to {}\n", path.display()),
                Err(e) => stderr += &format!("could not write reproducer to {}: {e}\n", path.display()),
            }
            CommandOutput::fail(Exit::SolverInconsistency, stderr)
        }
    }
}

pub fn parse_kind(text: &str) -> Option<ScenarioKind> {
    match text {
        "lg" | "leggett-garg" => Some(ScenarioKind::LeggettGarg3),
        "epr" | "epr-bell" => Some(ScenarioKind::EprBell4),
        "generic" => Some(ScenarioKind::GenericPairwise),
        _ => None,
    }
}

fn derivation_human(r: &DerivationReport) -> String {
    let mut out = format!(
        "{}: connection system has {} nontrivial and {} trivial rows\n",
        r.kind, r.nontrivial_count, r.trivial_count
    );
    out += &format!("eliminating {} (the first by substitution from the Delta definition)\n", r.elimination_order.join(", "));
    out += &format!("derived system ({} rows):\n", r.derived_system.rows.len());
    for row in &r.derived_system.rows {
        out += &format!("  {row}\n");
    }
    out += &format!("equivalent to the target Delta bounds: {}\n", if r.equivalent { "yes" } else { "NO" });
    let p = &r.projection_check;
    out += &format!(
        "projection check: vertices sound: {}; {} of {} sampled points lack a joint preimage\n",
        if p.vertices_sound { "yes" } else { "NO" },
        p.membership_failures,
        p.membership_samples
    );
    for row in &p.unsound_rows {
        out += &format!("  violated on the joint image: {row}\n");
    }
    out
}

/// `derive <lg|epr> [--json]`
pub fn cmd_derive(kind: &str, json: bool) -> CommandOutput {
    let kind = match parse_kind(kind) {
        Some(k @ (ScenarioKind::LeggettGarg3 | ScenarioKind::EprBell4)) => k,
        Some(ScenarioKind::GenericPairwise) => {
            return CommandOutput::fail(Exit::InputError, "error: derivations exist only for lg and epr\n")
        }
        None => return CommandOutput::fail(Exit::InputError, format!("error: unknown kind {kind:?}\n")),
    };
    match derive_delta_bounds(kind) {
        Ok(report) => {
            let stdout = if json { to_json(&report) } else { derivation_human(&report) };
            if report.ok() {
                CommandOutput::ok(stdout)
            } else {
                CommandOutput {
                    exit: Exit::DerivationMismatch,
                    stdout,
                    stderr: "error: derived system does not match\n".into(),
                }
            }
        }
        Err(e) => CommandOutput::fail(Exit::DerivationMismatch, format!("error: {e}\n")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub kind: ScenarioKind,
    pub properties: usize,
    pub tables: usize,
    pub no_signaling: NoSignalingReport,
}

/// `check <file>`: validation and the no-signaling check only.
pub fn cmd_check(path: &Path) -> CommandOutput {
    let s = match load_scenario(path) {
        Ok(s) => s,
        Err(e) => return CommandOutput::fail(Exit::InputError, format!("error: {e}\n")),
    };
    let report = CheckReport {
        kind: s.kind,
        properties: s.properties.len(),
        tables: s.tables.len(),
        no_signaling: check_no_signaling(&s),
    };
    let mut out = format!(
        "{}: valid {} scenario with {} properties and {} tables\n",
        path.display(),
        report.kind,
        report.properties,
        report.tables
    );
    if report.no_signaling.ok {
        out += "no-signaling: ok\n";
        CommandOutput::ok(out)
    } else {
        out += "no-signaling: VIOLATED\n";
        for v in &report.no_signaling.violations {
            out += &format!(
                "  {}: Pr[+1] differs by {} between contexts {} and {}\n",
                v.property,
                show(&v.difference),
                v.context_a,
                v.context_b
            );
        }
        CommandOutput {
            exit: Exit::Signaling,
            stdout: out,
            stderr: String::new(),
        }
    }
}
