//! Max-min fuzzy compromise between the lower-limit and width objectives,
//! and the ideal point of the interval cost.
//!
//! Each objective `k` gets a linear membership `(U_k - z_k) / (U_k - L_k)`
//! clipped to `[0, 1]`, where `L_k` is its solo optimum and `U_k` its worst
//! value over the solo-optimal (anchor) plans. The compromise maximizes the
//! smallest membership `lambda`; a second pass holds `lambda` at its optimum
//! and minimizes the range-normalized objective sum so the returned plan is
//! Pareto-optimal and not merely weakly efficient.

use thiserror::Error;

use crate::crispify::{
    build_bi_objective, build_single_objective, BiObjectiveMilp, ObjectiveKind, SingleObjectiveMilp,
};
use crate::interval::CenterWidth;
use crate::milp::{solve_milp_with, BranchLimits, MilpModel, MilpSolution, Relation, SolveError, SolveStatus};
use crate::model::{IfctpInstance, ShipmentPlan};
use crate::parallel::{self, Execution};

/// Objective names in payoff order.
pub const OBJECTIVE_NAMES: [&str; 2] = ["lower", "width"];

const RANGE_EPSILON: f64 = 1e-9;
/// Slack granted to `lambda >= lambda*` in the refinement pass.
const LAMBDA_SLACK: f64 = 1e-9;
/// Round-off allowance on the objective a dominating point must not worsen.
const DOMINANCE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompromiseError {
    #[error("model is infeasible")]
    Infeasible,
    #[error("model is unbounded")]
    Unbounded,
    #[error("invalid payoff levels: {0}")]
    InvalidPayoff(String),
    #[error(transparent)]
    Solver(#[from] SolveError),
}

/// Aspired (`best`, `L_k`) and highest acceptable (`worst`, `U_k`) level of
/// each objective, indexed lower limit then width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffLevels {
    pub best: [f64; 2],
    pub worst: [f64; 2],
}

impl PayoffLevels {
    pub fn new(best: [f64; 2], worst: [f64; 2]) -> Result<Self, CompromiseError> {
        for k in 0..2 {
            if !best[k].is_finite() || !worst[k].is_finite() {
                return Err(CompromiseError::InvalidPayoff(format!(
                    "non-finite level for objective {}",
                    OBJECTIVE_NAMES[k]
                )));
            }
            if best[k] > worst[k] {
                return Err(CompromiseError::InvalidPayoff(format!(
                    "L{} = {} exceeds U{} = {}",
                    k + 1,
                    best[k],
                    k + 1,
                    worst[k]
                )));
            }
        }
        Ok(Self { best, worst })
    }

    pub fn range(&self, k: usize) -> f64 {
        self.worst[k] - self.best[k]
    }

    /// Whether objective `k` has a zero-width membership range.
    pub fn is_degenerate(&self, k: usize) -> bool {
        self.range(k) <= RANGE_EPSILON * self.worst[k].abs().max(1.0)
    }

    pub fn membership(&self, k: usize, value: f64) -> f64 {
        membership(value, self.best[k], self.worst[k])
    }
}

/// Linear membership of `value` between the aspired level `best` and the
/// highest acceptable level `worst`, clipped to `[0, 1]`. A zero-width range
/// gives 1 at or below `worst` and 0 above.
pub fn membership(value: f64, best: f64, worst: f64) -> f64 {
    let scale = worst.abs().max(1.0);
    if worst - best <= RANGE_EPSILON * scale {
        return if value <= worst + RANGE_EPSILON * scale {
            1.0
        } else {
            0.0
        };
    }
    ((worst - value) / (worst - best)).clamp(0.0, 1.0)
}

/// Solo-optimal plan of one objective and both objective values at it.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchor {
    pub plan: ShipmentPlan,
    pub values: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PayoffTable {
    pub levels: PayoffLevels,
    /// `None` when the levels were supplied rather than computed.
    pub anchors: Option<[Anchor; 2]>,
}

impl PayoffTable {
    pub fn overridden(&self) -> bool {
        self.anchors.is_none()
    }
}

/// Solver settings shared by the compromise and ideal-point solves.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SolveOptions {
    pub exec: Execution,
    pub limits: BranchLimits,
}

fn optimal(solution: MilpSolution) -> Result<MilpSolution, CompromiseError> {
    match solution.status {
        SolveStatus::Optimal => Ok(solution),
        SolveStatus::Infeasible => Err(CompromiseError::Infeasible),
        SolveStatus::Unbounded => Err(CompromiseError::Unbounded),
    }
}

/// Optimal value and plan of a single-objective model.
pub fn solve_single(milp: &SingleObjectiveMilp, limits: &BranchLimits) -> Result<(f64, ShipmentPlan), CompromiseError> {
    let sol = optimal(solve_milp_with(&milp.to_model(), limits)?)?;
    Ok((sol.objective_value, milp.layout().plan(&sol.assignment)))
}

/// Payoff table from the two solo optimizations. The anchor solves run
/// concurrently under [`Execution::Parallel`].
pub fn build_payoff(bi: &BiObjectiveMilp, options: &SolveOptions) -> Result<PayoffTable, CompromiseError> {
    let solve = |k: usize| -> Result<Anchor, CompromiseError> {
        let (_, plan) = solve_single(&bi.single(k), &options.limits)?;
        let values = [bi.obj_lower.evaluate(&plan), bi.obj_width.evaluate(&plan)];
        Ok(Anchor { plan, values })
    };
    let (a, b) = parallel::join(options.exec, || solve(0), || solve(1));
    let anchors = [a?, b?];
    let best = [anchors[0].values[0], anchors[1].values[1]];
    let worst = [
        anchors[0].values[0].max(anchors[1].values[0]),
        anchors[0].values[1].max(anchors[1].values[1]),
    ];
    Ok(PayoffTable {
        levels: PayoffLevels { best, worst },
        anchors: Some(anchors),
    })
}

/// Max-lambda model: variables `(y, x, lambda)`, minimize `-lambda`, one row
/// `z_k + lambda (U_k - L_k) <= U_k` per objective with a nonzero range and
/// `z_k <= U_k` otherwise.
pub fn build_max_lambda_model(bi: &BiObjectiveMilp, levels: &PayoffLevels) -> MilpModel {
    let layout = bi.layout();
    let mut model = bi.constraints.base_model(true);
    model.set_objective_coeff(layout.lambda(), -1.0);
    for (k, objective) in bi.objectives().into_iter().enumerate() {
        let mut row: Vec<(usize, f64)> = objective.terms(&layout).collect();
        if !levels.is_degenerate(k) {
            row.push((layout.lambda(), levels.range(k)));
        }
        model.add_constraint(row, Relation::Le, levels.worst[k] - objective.constant);
    }
    model
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompromiseResult {
    pub lambda_star: f64,
    pub plan: ShipmentPlan,
    /// Lower-limit and width objective at the plan.
    pub objective_values: [f64; 2],
    pub memberships: [f64; 2],
    pub payoff: PayoffTable,
}

impl CompromiseResult {
    /// The plan's interval cost in center/width form.
    pub fn center_width(&self) -> CenterWidth {
        let [lower, width] = self.objective_values;
        CenterWidth {
            c: lower + width,
            w: width.max(0.0),
        }
    }
}

/// Compromise over a given payoff table.
pub fn solve_with_payoff(
    bi: &BiObjectiveMilp,
    payoff: PayoffTable,
    options: &SolveOptions,
) -> Result<CompromiseResult, CompromiseError> {
    let levels = payoff.levels;
    let layout = bi.layout();
    let model = build_max_lambda_model(bi, &levels);
    let first = optimal(solve_milp_with(&model, &options.limits)?)?;
    let lambda_star = first.assignment[layout.lambda()].clamp(0.0, 1.0);

    let mut refine = model;
    refine.set_bounds(layout.lambda(), (lambda_star - LAMBDA_SLACK).max(0.0), 1.0);
    let mut coeffs = vec![0.0; refine.num_vars()];
    let mut constant = 0.0;
    for (k, objective) in bi.objectives().into_iter().enumerate() {
        let weight = if levels.is_degenerate(k) {
            1.0
        } else {
            1.0 / levels.range(k)
        };
        for (v, c) in objective.terms(&layout) {
            coeffs[v] += weight * c;
        }
        constant += weight * objective.constant;
    }
    refine.set_objective(coeffs, constant);
    let second = optimal(solve_milp_with(&refine, &options.limits)?)?;

    let plan = layout.plan(&second.assignment);
    let objective_values = [bi.obj_lower.evaluate(&plan), bi.obj_width.evaluate(&plan)];
    let memberships = [
        levels.membership(0, objective_values[0]),
        levels.membership(1, objective_values[1]),
    ];
    Ok(CompromiseResult {
        lambda_star,
        plan,
        objective_values,
        memberships,
        payoff,
    })
}

/// End-to-end compromise for an instance. `payoff_override` replaces the
/// computed payoff levels.
pub fn solve_compromise(
    instance: &IfctpInstance,
    payoff_override: Option<PayoffLevels>,
    options: &SolveOptions,
) -> Result<CompromiseResult, CompromiseError> {
    let bi = build_bi_objective(instance);
    let payoff = match payoff_override {
        Some(levels) => PayoffTable {
            levels: PayoffLevels::new(levels.best, levels.worst)?,
            anchors: None,
        },
        None => build_payoff(&bi, options)?,
    };
    solve_with_payoff(&bi, payoff, options)
}

/// Componentwise minima of the center and width objectives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealPoint {
    pub zc_star: f64,
    pub zw_star: f64,
}

impl IdealPoint {
    pub fn to_center_width(self) -> CenterWidth {
        CenterWidth {
            c: self.zc_star,
            w: self.zw_star.max(0.0),
        }
    }
}

pub fn compute_ideal(instance: &IfctpInstance, options: &SolveOptions) -> Result<IdealPoint, CompromiseError> {
    let center = build_single_objective(instance, ObjectiveKind::Center);
    let width = build_single_objective(instance, ObjectiveKind::Width);
    let (c, w) = parallel::join(
        options.exec,
        || solve_single(&center, &options.limits),
        || solve_single(&width, &options.limits),
    );
    Ok(IdealPoint {
        zc_star: c?.0,
        zw_star: w?.0,
    })
}

/// Searches for a feasible point that Pareto-dominates `values` (lower,
/// width) by more than `tolerance` (relative) in one objective without being
/// worse in the other beyond round-off. `solve` is the exact MILP solver used
/// for the two constrained searches.
pub fn find_dominating_point<F>(
    bi: &BiObjectiveMilp,
    values: [f64; 2],
    tolerance: f64,
    solve: F,
) -> Result<Option<[f64; 2]>, CompromiseError>
where
    F: Fn(&MilpModel) -> Result<MilpSolution, SolveError>,
{
    let layout = bi.layout();
    let objectives = bi.objectives();
    for k in 0..2 {
        let other = 1 - k;
        let mut model = bi.single(k).to_model();
        let cap = values[other] + DOMINANCE_SLACK * values[other].abs().max(1.0);
        model.add_constraint(
            objectives[other].terms(&layout).collect(),
            Relation::Le,
            cap - objectives[other].constant,
        );
        let sol = solve(&model)?;
        if sol.status != SolveStatus::Optimal {
            continue;
        }
        if sol.objective_value < values[k] - tolerance * values[k].abs().max(1.0) {
            let mut point = [0.0; 2];
            point[k] = sol.objective_value;
            point[other] = objectives[other].evaluate_assignment(&layout, &sol.assignment);
            return Ok(Some(point));
        }
    }
    Ok(None)
}
