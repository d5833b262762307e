//! End-to-end pipeline (validate, crispify, compromise, ideal point,
//! distance), comparison reports, and the solver-vs-oracle cross-check.

use std::fmt::Write as _;

use thiserror::Error;

use crate::crispify::{build_bi_objective, build_single_objective, evaluate_interval_objective, ObjectiveKind};
use crate::fuzzy::{
    compute_ideal, find_dominating_point, solve_compromise, solve_with_payoff, CompromiseError, CompromiseResult,
    PayoffLevels, PayoffTable, SolveOptions, OBJECTIVE_NAMES,
};
use crate::interval::{distance_to_ideal, prefer, CenterWidth, Interval, Preference};
use crate::milp::{
    objectives_agree, oracle_solve_with, solve_milp_with, MilpModel, MilpSolution, SolveError, OBJECTIVE_TOLERANCE,
    ORACLE_MAX_BINARIES,
};
use crate::model::{check_plan, IfctpInstance, PlanViolation, ShipmentPlan, DEFAULT_PLAN_TOLERANCE};

/// Externally obtained solution shown next to the computed one.
#[derive(Debug, Clone, PartialEq)]
pub struct Competitor {
    pub name: String,
    pub objective: Interval,
}

impl Competitor {
    pub fn new(name: impl Into<String>, objective: Interval) -> Self {
        Self {
            name: name.into(),
            objective,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub payoff_override: Option<PayoffLevels>,
    /// Feasibility tolerance for the plan check.
    pub tolerance: f64,
    pub competitors: Vec<Competitor>,
    pub solve: SolveOptions,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            payoff_override: None,
            tolerance: DEFAULT_PLAN_TOLERANCE,
            competitors: Vec::new(),
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStatus {
    Optimal,
    Infeasible,
}

/// Everything computed for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CompromiseReport {
    pub status: ReportStatus,
    pub sources: usize,
    pub destinations: usize,
    /// Absent when infeasible.
    pub compromise: Option<CompromiseResult>,
    /// Interval cost of the compromise plan.
    pub objective: Option<Interval>,
    pub ideal: Option<CenterWidth>,
    pub plan_violations: Vec<PlanViolation>,
    pub tolerance: f64,
    pub competitors: Vec<Competitor>,
}

impl CompromiseReport {
    /// Distance of the compromise cost from the ideal point, recomputed.
    pub fn distance(&self) -> Option<f64> {
        Some(distance_to_ideal(self.objective?.to_center_width(), self.ideal?))
    }

    pub fn competitor_distance(&self, competitor: &Competitor) -> Option<f64> {
        Some(distance_to_ideal(competitor.objective.to_center_width(), self.ideal?))
    }

    pub fn payoff(&self) -> Option<&PayoffTable> {
        self.compromise.as_ref().map(|c| &c.payoff)
    }

    pub fn plan(&self) -> Option<&ShipmentPlan> {
        self.compromise.as_ref().map(|c| &c.plan)
    }
}

fn infeasible(instance: &IfctpInstance, options: &PipelineOptions) -> CompromiseReport {
    CompromiseReport {
        status: ReportStatus::Infeasible,
        sources: instance.sources(),
        destinations: instance.destinations(),
        compromise: None,
        objective: None,
        ideal: None,
        plan_violations: Vec::new(),
        tolerance: options.tolerance,
        competitors: options.competitors.clone(),
    }
}

pub fn run_pipeline(instance: &IfctpInstance, options: &PipelineOptions) -> Result<CompromiseReport, CompromiseError> {
    let compromise = match solve_compromise(instance, options.payoff_override, &options.solve) {
        Ok(c) => c,
        Err(CompromiseError::Infeasible) => return Ok(infeasible(instance, options)),
        Err(e) => return Err(e),
    };
    let ideal = match compute_ideal(instance, &options.solve) {
        Ok(p) => p,
        Err(CompromiseError::Infeasible) => return Ok(infeasible(instance, options)),
        Err(e) => return Err(e),
    };
    let objective = evaluate_interval_objective(instance, &compromise.plan).expect("plan built for this instance");
    let plan_violations =
        check_plan(instance, &compromise.plan, options.tolerance).expect("plan built for this instance");
    Ok(CompromiseReport {
        status: ReportStatus::Optimal,
        sources: instance.sources(),
        destinations: instance.destinations(),
        compromise: Some(compromise),
        objective: Some(objective),
        ideal: Some(ideal.to_center_width()),
        plan_violations,
        tolerance: options.tolerance,
        competitors: options.competitors.clone(),
    })
}

fn verdict(p: CenterWidth, q: CenterWidth, ideal: CenterWidth) -> &'static str {
    match prefer(p, q, ideal) {
        Preference::First => "compromise preferred",
        Preference::Second => "competitor preferred",
        Preference::Tie => "tie",
    }
}

/// Human-readable report; numbers to two decimals.
pub fn render_text(report: &CompromiseReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "instance      {} sources x {} destinations",
        report.sources, report.destinations
    );
    let status = match report.status {
        ReportStatus::Optimal => "optimal",
        ReportStatus::Infeasible => "infeasible",
    };
    let _ = writeln!(out, "status        {status}");
    let Some(c) = &report.compromise else {
        return out;
    };
    let l = c.payoff.levels;
    let _ = writeln!(
        out,
        "payoff        L1={:.2} U1={:.2} L2={:.2} U2={:.2} ({})",
        l.best[0],
        l.worst[0],
        l.best[1],
        l.worst[1],
        if c.payoff.overridden() { "override" } else { "anchors" }
    );
    let _ = writeln!(out, "lambda*       {:.2}", c.lambda_star);
    let _ = writeln!(
        out,
        "memberships   {}={:.2} {}={:.2}",
        OBJECTIVE_NAMES[0], c.memberships[0], OBJECTIVE_NAMES[1], c.memberships[1]
    );
    if let Some(z) = report.objective {
        let _ = writeln!(out, "objective     Z = {z:.2} = {:.2}", z.to_center_width());
    }
    if let Some(ideal) = report.ideal {
        let _ = writeln!(out, "ideal         {ideal:.2}");
    }
    if let Some(d) = report.distance() {
        let _ = writeln!(out, "distance      {d:.2}");
    }
    let _ = writeln!(out, "shipments");
    for (i, j, y) in c.plan.active_routes() {
        let _ = writeln!(out, "  y({},{}) = {y:.2}", i + 1, j + 1);
    }
    if report.plan_violations.is_empty() {
        let _ = writeln!(out, "plan check    ok (tolerance {:e})", report.tolerance);
    } else {
        let _ = writeln!(out, "plan check    {} violation(s)", report.plan_violations.len());
        for v in &report.plan_violations {
            let _ = writeln!(out, "  {v}");
        }
    }
    if let (Some(z), Some(ideal)) = (report.objective, report.ideal) {
        for comp in &report.competitors {
            let cw = comp.objective.to_center_width();
            let _ = writeln!(
                out,
                "competitor    {}: {:.2} = {cw:.2}, distance {:.2} ({})",
                comp.name,
                comp.objective,
                distance_to_ideal(cw, ideal),
                verdict(z.to_center_width(), cw, ideal)
            );
        }
    }
    out
}

/// Flat `key=value` block, one datum per line, full precision.
pub fn render_machine(report: &CompromiseReport) -> String {
    let mut out = String::new();
    let status = match report.status {
        ReportStatus::Optimal => "optimal",
        ReportStatus::Infeasible => "infeasible",
    };
    let _ = writeln!(out, "status={status}");
    let _ = writeln!(out, "sources={}", report.sources);
    let _ = writeln!(out, "destinations={}", report.destinations);
    let Some(c) = &report.compromise else {
        return out;
    };
    let l = c.payoff.levels;
    let _ = writeln!(
        out,
        "payoff.source={}",
        if c.payoff.overridden() { "override" } else { "anchors" }
    );
    let _ = writeln!(out, "payoff.l1={}", l.best[0]);
    let _ = writeln!(out, "payoff.u1={}", l.worst[0]);
    let _ = writeln!(out, "payoff.l2={}", l.best[1]);
    let _ = writeln!(out, "payoff.u2={}", l.worst[1]);
    let _ = writeln!(out, "lambda={}", c.lambda_star);
    let _ = writeln!(out, "membership.lower={}", c.memberships[0]);
    let _ = writeln!(out, "membership.width={}", c.memberships[1]);
    if let Some(z) = report.objective {
        let cw = z.to_center_width();
        let _ = writeln!(out, "z.lower={}", z.lo());
        let _ = writeln!(out, "z.upper={}", z.hi());
        let _ = writeln!(out, "z.center={}", cw.c);
        let _ = writeln!(out, "z.width={}", cw.w);
    }
    if let Some(ideal) = report.ideal {
        let _ = writeln!(out, "ideal.center={}", ideal.c);
        let _ = writeln!(out, "ideal.width={}", ideal.w);
    }
    if let Some(d) = report.distance() {
        let _ = writeln!(out, "distance={d}");
    }
    for (i, j, y) in c.plan.active_routes() {
        let _ = writeln!(out, "y.{}.{}={y}", i + 1, j + 1);
    }
    let _ = writeln!(out, "plan.violations={}", report.plan_violations.len());
    for (k, comp) in report.competitors.iter().enumerate() {
        let _ = writeln!(out, "competitor.{}.name={}", k + 1, comp.name);
        let _ = writeln!(out, "competitor.{}.lower={}", k + 1, comp.objective.lo());
        let _ = writeln!(out, "competitor.{}.upper={}", k + 1, comp.objective.hi());
        if let Some(d) = report.competitor_distance(comp) {
            let _ = writeln!(out, "competitor.{}.distance={d}", k + 1);
        }
    }
    out
}

/// Distances of named solutions to an ideal point, without an instance.
pub fn render_comparison(ideal: CenterWidth, entries: &[Competitor], machine: bool) -> String {
    let mut out = String::new();
    if machine {
        let _ = writeln!(out, "ideal.center={}", ideal.c);
        let _ = writeln!(out, "ideal.width={}", ideal.w);
    } else {
        let _ = writeln!(out, "ideal         {ideal:.2}");
    }
    for (k, e) in entries.iter().enumerate() {
        let cw = e.objective.to_center_width();
        let d = distance_to_ideal(cw, ideal);
        if machine {
            let _ = writeln!(out, "entry.{}.name={}", k + 1, e.name);
            let _ = writeln!(out, "entry.{}.lower={}", k + 1, e.objective.lo());
            let _ = writeln!(out, "entry.{}.upper={}", k + 1, e.objective.hi());
            let _ = writeln!(out, "entry.{}.distance={d}", k + 1);
        } else {
            let _ = writeln!(out, "{:<13} {:.2} = {cw:.2}, distance {d:.2}", e.name, e.objective);
        }
    }
    if let Some(best) = entries
        .iter()
        .min_by(|a, b| prefer(a.objective.to_center_width(), b.objective.to_center_width(), ideal).as_ordering())
    {
        if machine {
            let _ = writeln!(out, "closest={}", best.name);
        } else {
            let _ = writeln!(out, "closest       {}", best.name);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("oracle check supports at most {max} routes, instance has {routes}")]
    OutOfScope { routes: usize, max: usize },
    #[error(transparent)]
    Compromise(#[from] CompromiseError),
}

impl From<SolveError> for CheckError {
    fn from(e: SolveError) -> Self {
        CheckError::Compromise(e.into())
    }
}

/// One solver-vs-oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub solver: f64,
    pub oracle: f64,
    pub passed: bool,
}

impl CheckLine {
    pub fn relative_delta(&self) -> f64 {
        if self.solver == self.oracle {
            return 0.0;
        }
        (self.solver - self.oracle).abs() / self.solver.abs().max(self.oracle.abs()).max(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheckReport {
    pub lines: Vec<CheckLine>,
}

impl OracleCheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(
                out,
                "{} {:<22} solver={} oracle={} delta={:.3e}",
                if l.passed { "PASS" } else { "FAIL" },
                l.name,
                l.solver,
                l.oracle,
                l.relative_delta()
            );
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "checks failed"
            }
        );
        out
    }
}

fn compare(name: &str, model: &MilpModel, options: &SolveOptions) -> Result<CheckLine, CheckError> {
    let a: MilpSolution = solve_milp_with(model, &options.limits)?;
    let b = oracle_solve_with(model, options.exec)?;
    Ok(CheckLine {
        name: name.to_string(),
        solver: a.objective_value,
        oracle: b.objective_value,
        passed: a.status == b.status && objectives_agree(a.objective_value, b.objective_value),
    })
}

/// Compares branch-and-bound against exhaustive enumeration on the center,
/// width and max-lambda models, then checks that no enumerated plan
/// Pareto-dominates the compromise plan.
pub fn run_oracle_check(instance: &IfctpInstance, options: &SolveOptions) -> Result<OracleCheckReport, CheckError> {
    let routes = instance.sources() * instance.destinations();
    if routes > ORACLE_MAX_BINARIES {
        return Err(CheckError::OutOfScope {
            routes,
            max: ORACLE_MAX_BINARIES,
        });
    }
    let mut lines = vec![
        compare(
            "center objective",
            &build_single_objective(instance, ObjectiveKind::Center).to_model(),
            options,
        )?,
        compare(
            "width objective",
            &build_single_objective(instance, ObjectiveKind::Width).to_model(),
            options,
        )?,
    ];
    let bi = build_bi_objective(instance);
    let payoff = crate::fuzzy::build_payoff(&bi, options)?;
    let levels = payoff.levels;
    lines.push(compare(
        "max-lambda model",
        &crate::fuzzy::build_max_lambda_model(&bi, &levels),
        options,
    )?);

    let result = solve_with_payoff(&bi, payoff, options)?;
    let dominating = find_dominating_point(&bi, result.objective_values, OBJECTIVE_TOLERANCE, |m| {
        oracle_solve_with(m, options.exec)
    })?;
    let score = |v: [f64; 2]| v[0] + v[1];
    lines.push(CheckLine {
        name: "pareto dominance".into(),
        solver: score(result.objective_values),
        oracle: dominating.map_or(score(result.objective_values), score),
        passed: dominating.is_none(),
    });
    let violations = check_plan(instance, &result.plan, DEFAULT_PLAN_TOLERANCE).expect("same instance");
    lines.push(CheckLine {
        name: "plan feasibility".into(),
        solver: violations.len() as f64,
        oracle: 0.0,
        passed: violations.is_empty(),
    });
    Ok(OracleCheckReport { lines })
}

/// Payoff table only, for the `payoff` command.
pub fn render_payoff(table: &PayoffTable, machine: bool) -> String {
    let l = table.levels;
    let mut out = String::new();
    if machine {
        let _ = writeln!(
            out,
            "payoff.l1={}\npayoff.u1={}\npayoff.l2={}\npayoff.u2={}",
            l.best[0], l.worst[0], l.best[1], l.worst[1]
        );
        if let Some(anchors) = &table.anchors {
            for (k, a) in anchors.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "anchor.{}.lower={}\nanchor.{}.width={}",
                    k + 1,
                    a.values[0],
                    k + 1,
                    a.values[1]
                );
            }
        }
    } else {
        let _ = writeln!(out, "objective  L (best)  U (worst)");
        for (k, name) in OBJECTIVE_NAMES.iter().enumerate() {
            let _ = writeln!(out, "{name:<10} {:>8.2}  {:>9.2}", l.best[k], l.worst[k]);
        }
        if let Some(anchors) = &table.anchors {
            for (k, a) in anchors.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "anchor {} (min {}): lower={:.2} width={:.2}",
                    k + 1,
                    OBJECTIVE_NAMES[k],
                    a.values[0],
                    a.values[1]
                );
            }
        }
    }
    out
}
