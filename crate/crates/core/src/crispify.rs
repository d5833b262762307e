//! Crisp reformulation of the interval problem.
//!
//! The interval objective `Z = [z_lo, z_hi]` is replaced by two linear
//! objectives over flows `y` and activations `x`: the lower limit
//! `z_lo = sum(t_lo y + l_lo x)` and the width `z_w = sum(t_w y + l_w x)`.
//! Supplies are capped at their upper limits and demands floored at their
//! lower limits. The rule "`x_ij = 1` iff `y_ij > 0`" is linearized as
//! `y_ij <= M_ij x_ij` with `M_ij` the supply cap of row `i`, which the row
//! constraint already implies, so the linearization loses nothing as long as
//! fixed charges are nonnegative.

use ndarray::Array2;

use crate::interval::Interval;
use crate::milp::{MilpModel, Relation, INTEGRALITY_TOLERANCE};
use crate::model::{DimensionMismatch, FctpInstance, IfctpInstance, ShipmentPlan};

/// Which scalar view of the interval cost an objective measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveKind {
    /// Left limit, `center - width`.
    Lower,
    Center,
    Width,
}

impl ObjectiveKind {
    fn of(self, v: &Interval) -> f64 {
        match self {
            ObjectiveKind::Lower => v.lo(),
            ObjectiveKind::Center => v.center(),
            ObjectiveKind::Width => v.width(),
        }
    }
}

/// Column layout shared by every model built here: flows `y` first, then
/// activations `x`, both row-major, then the optional membership level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarLayout {
    pub sources: usize,
    pub destinations: usize,
}

impl VarLayout {
    #[inline]
    pub fn flow(&self, i: usize, j: usize) -> usize {
        i * self.destinations + j
    }

    #[inline]
    pub fn open(&self, i: usize, j: usize) -> usize {
        self.cells() + self.flow(i, j)
    }

    #[inline]
    pub fn lambda(&self) -> usize {
        2 * self.cells()
    }

    pub fn cells(&self) -> usize {
        self.sources * self.destinations
    }

    /// Shipment plan read from a solver assignment. Activations are re-derived
    /// from the flows.
    pub fn plan(&self, assignment: &[f64]) -> ShipmentPlan {
        let y = Array2::from_shape_fn((self.sources, self.destinations), |(i, j)| assignment[self.flow(i, j)]);
        ShipmentPlan::from_flows(y, INTEGRALITY_TOLERANCE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearObjective {
    pub y_coeffs: Array2<f64>,
    pub x_coeffs: Array2<f64>,
    pub constant: f64,
}

impl LinearObjective {
    fn from_instance(inst: &IfctpInstance, kind: ObjectiveKind) -> Self {
        Self {
            y_coeffs: inst.unit_cost().map(|v| kind.of(v)),
            x_coeffs: inst.fixed_charge().map(|v| kind.of(v)),
            constant: 0.0,
        }
    }

    pub fn evaluate(&self, plan: &ShipmentPlan) -> f64 {
        let flows: f64 = (&self.y_coeffs * plan.flows()).sum();
        let fixed: f64 = self
            .x_coeffs
            .iter()
            .zip(plan.activations())
            .filter(|(_, &open)| open)
            .map(|(c, _)| c)
            .sum();
        self.constant + flows + fixed
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0.0 && self.y_coeffs.iter().all(|&c| c == 0.0) && self.x_coeffs.iter().all(|&c| c == 0.0)
    }

    /// Value at a raw solver assignment laid out by `layout`.
    pub fn evaluate_assignment(&self, layout: &VarLayout, assignment: &[f64]) -> f64 {
        self.constant + self.terms(layout).map(|(v, c)| c * assignment[v]).sum::<f64>()
    }

    /// Nonzero `(variable, coefficient)` pairs.
    pub fn terms<'a>(&'a self, layout: &'a VarLayout) -> impl Iterator<Item = (usize, f64)> + 'a {
        let flows = self
            .y_coeffs
            .indexed_iter()
            .map(move |((i, j), &c)| (layout.flow(i, j), c));
        let opens = self
            .x_coeffs
            .indexed_iter()
            .map(move |((i, j), &c)| (layout.open(i, j), c));
        flows.chain(opens).filter(|&(_, c)| c != 0.0)
    }
}

/// Supply caps, demand floors and the flow/activation link.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportConstraints {
    pub supply_caps: Vec<f64>,
    pub demand_floors: Vec<f64>,
    pub big_m: Array2<f64>,
}

impl TransportConstraints {
    fn new(supply_caps: Vec<f64>, demand_floors: Vec<f64>) -> Self {
        let big_m = Array2::from_shape_fn((supply_caps.len(), demand_floors.len()), |(i, _)| supply_caps[i]);
        Self {
            supply_caps,
            demand_floors,
            big_m,
        }
    }

    pub fn layout(&self) -> VarLayout {
        VarLayout {
            sources: self.supply_caps.len(),
            destinations: self.demand_floors.len(),
        }
    }

    /// Empty-objective model holding the transport rows, plus a membership
    /// column bounded to `[0, 1]` when `with_lambda`.
    pub fn base_model(&self, with_lambda: bool) -> MilpModel {
        let layout = self.layout();
        let (m, n) = (layout.sources, layout.destinations);
        let mut model = MilpModel::new(2 * layout.cells() + usize::from(with_lambda));
        for i in 0..m {
            let row = (0..n).map(|j| (layout.flow(i, j), 1.0)).collect();
            model.add_constraint(row, Relation::Le, self.supply_caps[i]);
        }
        for j in 0..n {
            let col = (0..m).map(|i| (layout.flow(i, j), 1.0)).collect();
            model.add_constraint(col, Relation::Ge, self.demand_floors[j]);
        }
        for i in 0..m {
            for j in 0..n {
                model.mark_binary(layout.open(i, j));
                model.add_constraint(
                    vec![(layout.flow(i, j), 1.0), (layout.open(i, j), -self.big_m[(i, j)])],
                    Relation::Le,
                    0.0,
                );
            }
        }
        if with_lambda {
            model.set_bounds(layout.lambda(), 0.0, 1.0);
        }
        model
    }
}

/// Both crisp objectives over the shared constraint set.
#[derive(Debug, Clone, PartialEq)]
pub struct BiObjectiveMilp {
    pub obj_lower: LinearObjective,
    pub obj_width: LinearObjective,
    pub constraints: TransportConstraints,
}

impl BiObjectiveMilp {
    pub fn layout(&self) -> VarLayout {
        self.constraints.layout()
    }

    /// The two objectives in payoff order: lower limit, then width.
    pub fn objectives(&self) -> [&LinearObjective; 2] {
        [&self.obj_lower, &self.obj_width]
    }

    pub fn single(&self, k: usize) -> SingleObjectiveMilp {
        SingleObjectiveMilp {
            objective: self.objectives()[k].clone(),
            constraints: self.constraints.clone(),
        }
    }
}

/// One linear objective over the transport constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleObjectiveMilp {
    pub objective: LinearObjective,
    pub constraints: TransportConstraints,
}

impl SingleObjectiveMilp {
    pub fn layout(&self) -> VarLayout {
        self.constraints.layout()
    }

    pub fn to_model(&self) -> MilpModel {
        let layout = self.layout();
        let mut model = self.constraints.base_model(false);
        let mut coeffs = vec![0.0; model.num_vars()];
        for (v, c) in self.objective.terms(&layout) {
            coeffs[v] = c;
        }
        model.set_objective(coeffs, self.objective.constant);
        model
    }
}

pub fn build_bi_objective(instance: &IfctpInstance) -> BiObjectiveMilp {
    BiObjectiveMilp {
        obj_lower: LinearObjective::from_instance(instance, ObjectiveKind::Lower),
        obj_width: LinearObjective::from_instance(instance, ObjectiveKind::Width),
        constraints: TransportConstraints::new(instance.supply_caps(), instance.demand_floors()),
    }
}

/// Single-objective model for the center or width (the ideal-point solves),
/// or the lower limit.
pub fn build_single_objective(instance: &IfctpInstance, which: ObjectiveKind) -> SingleObjectiveMilp {
    SingleObjectiveMilp {
        objective: LinearObjective::from_instance(instance, which),
        constraints: TransportConstraints::new(instance.supply_caps(), instance.demand_floors()),
    }
}

/// Crisp fixed-charge transportation model built straight from crisp data.
pub fn build_crisp(instance: &FctpInstance) -> SingleObjectiveMilp {
    SingleObjectiveMilp {
        objective: LinearObjective {
            y_coeffs: instance.unit_cost.clone(),
            x_coeffs: instance.fixed_charge.clone(),
            constant: 0.0,
        },
        constraints: TransportConstraints::new(instance.supply.clone(), instance.demand.clone()),
    }
}

/// Interval cost `sum([t_lo, t_hi] y + [l_lo, l_hi] x)` of a plan.
pub fn evaluate_interval_objective(
    instance: &IfctpInstance,
    plan: &ShipmentPlan,
) -> Result<Interval, DimensionMismatch> {
    let expected = (instance.sources(), instance.destinations());
    if plan.dim() != expected {
        return Err(DimensionMismatch {
            expected,
            found: plan.dim(),
        });
    }
    let t = instance.unit_cost();
    let l = instance.fixed_charge();
    Ok(plan
        .flows()
        .indexed_iter()
        .map(|(ij, &flow)| {
            let fixed = if plan.activations()[ij] { l[ij] } else { Interval::ZERO };
            t[ij].scale(flow) + fixed
        })
        .sum())
}
