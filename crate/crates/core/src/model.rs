//! Problem data for the crisp and the interval fixed-charge transportation
//! problem, instance validation, and shipment-plan feasibility checks.

use std::fmt;

use ndarray::Array2;
use thiserror::Error;

use crate::interval::Interval;

/// Default absolute tolerance for plan feasibility and the x/y link.
pub const DEFAULT_PLAN_TOLERANCE: f64 = 1e-6;

/// Where in an instance a rule was broken. Indices are 1-based when displayed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Cost(usize, usize),
    Fixed(usize, usize),
    Supply(usize),
    Demand(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Location::Cost(i, j) => write!(f, "t({},{})", i + 1, j + 1),
            Location::Fixed(i, j) => write!(f, "l({},{})", i + 1, j + 1),
            Location::Supply(i) => write!(f, "supply({})", i + 1),
            Location::Demand(j) => write!(f, "demand({})", j + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoSources,
    NoDestinations,
    Dimension {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    NotFinite(Location),
    Reversed(Location),
    Negative(Location),
    AggregateShortfall {
        supply: f64,
        demand: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoSources => write!(f, "instance needs at least one source"),
            Violation::NoDestinations => write!(f, "instance needs at least one destination"),
            Violation::Dimension { field, expected, found } => {
                write!(f, "expected {expected} {field} entries, found {found}")
            }
            Violation::NotFinite(at) => write!(f, "non-finite value at {at}"),
            Violation::Reversed(at) => write!(f, "interval lo > hi at {at}"),
            Violation::Negative(at) => write!(f, "negative lower limit at {at}"),
            Violation::AggregateShortfall { supply, demand } => {
                write!(f, "aggregate supply < aggregate demand ({supply} < {demand})")
            }
        }
    }
}

/// Instance that failed validation; carries every violation found.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid instance: {}", .violations[0])]
pub struct InvalidInstance {
    pub violations: Vec<Violation>,
}

/// Unchecked instance data as endpoint pairs, the shape a parser or a caller
/// assembling data by hand produces. [`validate`] it, then [`build`](Self::build).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InstanceDraft {
    pub sources: usize,
    pub destinations: usize,
    /// Row-major `sources x destinations` unit costs.
    pub unit_cost: Vec<Vec<(f64, f64)>>,
    pub fixed_charge: Vec<Vec<(f64, f64)>>,
    pub supply: Vec<(f64, f64)>,
    pub demand: Vec<(f64, f64)>,
}

impl InstanceDraft {
    pub fn build(&self) -> Result<IfctpInstance, InvalidInstance> {
        let violations = validate(self);
        if !violations.is_empty() {
            return Err(InvalidInstance { violations });
        }
        let (m, n) = (self.sources, self.destinations);
        let grid = |cells: &[Vec<(f64, f64)>]| {
            Array2::from_shape_fn((m, n), |(i, j)| {
                let (lo, hi) = cells[i][j];
                Interval::new(lo, hi).expect("validated")
            })
        };
        let line = |cells: &[(f64, f64)]| {
            cells
                .iter()
                .map(|&(lo, hi)| Interval::new(lo, hi).expect("validated"))
                .collect()
        };
        Ok(IfctpInstance {
            t: grid(&self.unit_cost),
            l: grid(&self.fixed_charge),
            supply: line(&self.supply),
            demand: line(&self.demand),
        })
    }
}

fn check_endpoints(lo: f64, hi: f64, at: Location, out: &mut Vec<Violation>) -> bool {
    if !lo.is_finite() || !hi.is_finite() {
        out.push(Violation::NotFinite(at));
        false
    } else if lo > hi {
        out.push(Violation::Reversed(at));
        false
    } else {
        true
    }
}

/// Every rule the draft breaks, in a stable order: dimensions, then costs and
/// fixed charges row-major, supplies, demands, and finally aggregate
/// feasibility (total upper supply against total lower demand).
pub fn validate(draft: &InstanceDraft) -> Vec<Violation> {
    let mut out = Vec::new();
    let (m, n) = (draft.sources, draft.destinations);
    if m == 0 {
        out.push(Violation::NoSources);
    }
    if n == 0 {
        out.push(Violation::NoDestinations);
    }
    let mut dims_ok = m > 0 && n > 0;
    for (field, rows) in [
        ("cost row", &draft.unit_cost),
        ("fixed-charge row", &draft.fixed_charge),
    ] {
        if rows.len() != m {
            out.push(Violation::Dimension {
                field,
                expected: m,
                found: rows.len(),
            });
            dims_ok = false;
        }
        for row in rows {
            if row.len() != n {
                out.push(Violation::Dimension {
                    field: if field == "cost row" { "cost" } else { "fixed-charge" },
                    expected: n,
                    found: row.len(),
                });
                dims_ok = false;
            }
        }
    }
    if draft.supply.len() != m {
        out.push(Violation::Dimension {
            field: "supply",
            expected: m,
            found: draft.supply.len(),
        });
        dims_ok = false;
    }
    if draft.demand.len() != n {
        out.push(Violation::Dimension {
            field: "demand",
            expected: n,
            found: draft.demand.len(),
        });
        dims_ok = false;
    }
    if !dims_ok {
        return out;
    }

    for i in 0..m {
        for j in 0..n {
            let (lo, hi) = draft.unit_cost[i][j];
            check_endpoints(lo, hi, Location::Cost(i, j), &mut out);
            let (lo, hi) = draft.fixed_charge[i][j];
            if check_endpoints(lo, hi, Location::Fixed(i, j), &mut out) && lo < 0.0 {
                out.push(Violation::Negative(Location::Fixed(i, j)));
            }
        }
    }
    let mut sound = true;
    for (i, &(lo, hi)) in draft.supply.iter().enumerate() {
        if !check_endpoints(lo, hi, Location::Supply(i), &mut out) {
            sound = false;
        } else if lo < 0.0 {
            out.push(Violation::Negative(Location::Supply(i)));
        }
    }
    for (j, &(lo, hi)) in draft.demand.iter().enumerate() {
        if !check_endpoints(lo, hi, Location::Demand(j), &mut out) {
            sound = false;
        } else if lo < 0.0 {
            out.push(Violation::Negative(Location::Demand(j)));
        }
    }
    if sound {
        let supply: f64 = draft.supply.iter().map(|s| s.1).sum();
        let demand: f64 = draft.demand.iter().map(|d| d.0).sum();
        if supply < demand {
            out.push(Violation::AggregateShortfall { supply, demand });
        }
    }
    out
}

/// Interval fixed-charge transportation instance: `m` sources, `n`
/// destinations, interval unit costs `t`, interval fixed charges `l`,
/// interval supplies and demands.
#[derive(Debug, Clone, PartialEq)]
pub struct IfctpInstance {
    t: Array2<Interval>,
    l: Array2<Interval>,
    supply: Vec<Interval>,
    demand: Vec<Interval>,
}

impl IfctpInstance {
    pub fn new(
        t: Array2<Interval>,
        l: Array2<Interval>,
        supply: Vec<Interval>,
        demand: Vec<Interval>,
    ) -> Result<Self, InvalidInstance> {
        let pairs = |a: &Array2<Interval>| {
            a.rows()
                .into_iter()
                .map(|r| r.iter().map(|v| (v.lo(), v.hi())).collect())
                .collect()
        };
        InstanceDraft {
            sources: supply.len(),
            destinations: demand.len(),
            unit_cost: pairs(&t),
            fixed_charge: pairs(&l),
            supply: supply.iter().map(|v| (v.lo(), v.hi())).collect(),
            demand: demand.iter().map(|v| (v.lo(), v.hi())).collect(),
        }
        .build()
    }

    pub fn sources(&self) -> usize {
        self.supply.len()
    }

    pub fn destinations(&self) -> usize {
        self.demand.len()
    }

    pub fn unit_cost(&self) -> &Array2<Interval> {
        &self.t
    }

    pub fn fixed_charge(&self) -> &Array2<Interval> {
        &self.l
    }

    pub fn supply(&self) -> &[Interval] {
        &self.supply
    }

    pub fn demand(&self) -> &[Interval] {
        &self.demand
    }

    /// Upper supply limits, the caps used by the crisp model.
    pub fn supply_caps(&self) -> Vec<f64> {
        self.supply.iter().map(Interval::hi).collect()
    }

    /// Lower demand limits, the floors used by the crisp model.
    pub fn demand_floors(&self) -> Vec<f64> {
        self.demand.iter().map(Interval::lo).collect()
    }

    pub fn to_draft(&self) -> InstanceDraft {
        let pairs = |a: &Array2<Interval>| -> Vec<Vec<(f64, f64)>> {
            a.rows()
                .into_iter()
                .map(|r| r.iter().map(|v| (v.lo(), v.hi())).collect())
                .collect()
        };
        InstanceDraft {
            sources: self.sources(),
            destinations: self.destinations(),
            unit_cost: pairs(&self.t),
            fixed_charge: pairs(&self.l),
            supply: self.supply.iter().map(|v| (v.lo(), v.hi())).collect(),
            demand: self.demand.iter().map(|v| (v.lo(), v.hi())).collect(),
        }
    }
}

/// Crisp fixed-charge transportation instance.
#[derive(Debug, Clone, PartialEq)]
pub struct FctpInstance {
    pub unit_cost: Array2<f64>,
    pub fixed_charge: Array2<f64>,
    pub supply: Vec<f64>,
    pub demand: Vec<f64>,
}

impl FctpInstance {
    pub fn sources(&self) -> usize {
        self.supply.len()
    }

    pub fn destinations(&self) -> usize {
        self.demand.len()
    }

    /// The same instance with every parameter a degenerate interval.
    pub fn to_interval(&self) -> Result<IfctpInstance, InvalidInstance> {
        let point = |row: ndarray::ArrayView1<f64>| row.iter().map(|&v| (v, v)).collect();
        InstanceDraft {
            sources: self.sources(),
            destinations: self.destinations(),
            unit_cost: self.unit_cost.rows().into_iter().map(point).collect(),
            fixed_charge: self.fixed_charge.rows().into_iter().map(point).collect(),
            supply: self.supply.iter().map(|&v| (v, v)).collect(),
            demand: self.demand.iter().map(|&v| (v, v)).collect(),
        }
        .build()
    }
}

/// Shipped quantities `y` and route activations `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShipmentPlan {
    y: Array2<f64>,
    x: Array2<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("dimension mismatch: expected {expected:?}, found {found:?}")]
pub struct DimensionMismatch {
    pub expected: (usize, usize),
    pub found: (usize, usize),
}

impl ShipmentPlan {
    pub fn new(y: Array2<f64>, x: Array2<bool>) -> Result<Self, DimensionMismatch> {
        if y.dim() != x.dim() {
            return Err(DimensionMismatch {
                expected: y.dim(),
                found: x.dim(),
            });
        }
        Ok(Self { y, x })
    }

    /// Activations derived from flows: a route is open exactly when it
    /// carries more than `tolerance`. Negative round-off is clamped to zero.
    pub fn from_flows(y: Array2<f64>, tolerance: f64) -> Self {
        let y = y.mapv(|v| v.max(0.0));
        let x = y.mapv(|v| v > tolerance);
        Self { y, x }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            y: Array2::zeros((m, n)),
            x: Array2::from_elem((m, n), false),
        }
    }

    pub fn flows(&self) -> &Array2<f64> {
        &self.y
    }

    pub fn activations(&self) -> &Array2<bool> {
        &self.x
    }

    pub fn dim(&self) -> (usize, usize) {
        self.y.dim()
    }

    /// Open routes as `(i, j, y_ij)`, row-major.
    pub fn active_routes(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.y
            .indexed_iter()
            .filter(move |&(ij, _)| self.x[ij])
            .map(|((i, j), &v)| (i, j, v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlanViolation {
    NegativeFlow {
        i: usize,
        j: usize,
        value: f64,
    },
    /// `x_ij` disagrees with whether `y_ij` is positive.
    Link {
        i: usize,
        j: usize,
        flow: f64,
        open: bool,
    },
    SupplyExceeded {
        i: usize,
        shipped: f64,
        cap: f64,
    },
    DemandUnmet {
        j: usize,
        shipped: f64,
        floor: f64,
    },
}

impl fmt::Display for PlanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PlanViolation::NegativeFlow { i, j, value } => {
                write!(f, "negative flow {value} at y({},{})", i + 1, j + 1)
            }
            PlanViolation::Link { i, j, flow, open } => write!(
                f,
                "route ({},{}) is {} but carries {flow}",
                i + 1,
                j + 1,
                if open { "open" } else { "closed" }
            ),
            PlanViolation::SupplyExceeded { i, shipped, cap } => {
                write!(f, "row {} exceeds supply cap {cap} (ships {shipped})", i + 1)
            }
            PlanViolation::DemandUnmet { j, shipped, floor } => write!(
                f,
                "column {} falls short of demand floor {floor} (receives {shipped})",
                j + 1
            ),
        }
    }
}

/// Checks a plan against the crisp constraints: row sums within the upper
/// supplies, column sums at least the lower demands, and the activation link.
pub fn check_plan(
    instance: &IfctpInstance,
    plan: &ShipmentPlan,
    tolerance: f64,
) -> Result<Vec<PlanViolation>, DimensionMismatch> {
    let expected = (instance.sources(), instance.destinations());
    if plan.dim() != expected {
        return Err(DimensionMismatch {
            expected,
            found: plan.dim(),
        });
    }
    let mut out = Vec::new();
    for ((i, j), &flow) in plan.y.indexed_iter() {
        if flow < -tolerance {
            out.push(PlanViolation::NegativeFlow { i, j, value: flow });
        }
        let open = plan.x[(i, j)];
        if open != (flow > tolerance) {
            out.push(PlanViolation::Link { i, j, flow, open });
        }
    }
    for (i, row) in plan.y.rows().into_iter().enumerate() {
        let shipped = row.sum();
        let cap = instance.supply[i].hi();
        if shipped > cap + tolerance {
            out.push(PlanViolation::SupplyExceeded { i, shipped, cap });
        }
    }
    for (j, col) in plan.y.columns().into_iter().enumerate() {
        let shipped = col.sum();
        let floor = instance.demand[j].lo();
        if shipped < floor - tolerance {
            out.push(PlanViolation::DemandUnmet { j, shipped, floor });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{reference_draft, reference_instance, reported_plan};

    fn single(supply: (f64, f64), demand: (f64, f64)) -> InstanceDraft {
        InstanceDraft {
            sources: 1,
            destinations: 1,
            unit_cost: vec![vec![(1.0, 2.0)]],
            fixed_charge: vec![vec![(3.0, 4.0)]],
            supply: vec![supply],
            demand: vec![demand],
        }
    }

    #[test]
    fn reference_is_valid() {
        let draft = reference_draft();
        assert!(validate(&draft).is_empty());
        let inst = reference_instance();
        let caps: f64 = inst.supply_caps().iter().sum();
        let floors: f64 = inst.demand_floors().iter().sum();
        assert_eq!((caps, floors), (86.0, 82.0));
    }

    #[test]
    fn aggregate_shortfall() {
        let v = validate(&single((5.0, 5.0), (10.0, 10.0)));
        assert_eq!(
            v,
            vec![Violation::AggregateShortfall {
                supply: 5.0,
                demand: 10.0
            }]
        );
        assert!(v[0].to_string().starts_with("aggregate supply < aggregate demand"));
    }

    #[test]
    fn reversed_cost_interval() {
        let mut draft = reference_draft();
        draft.unit_cost[0][0] = (8.0, 4.0);
        let v = validate(&draft);
        assert_eq!(v, vec![Violation::Reversed(Location::Cost(0, 0))]);
        assert_eq!(v[0].to_string(), "interval lo > hi at t(1,1)");
        let err = draft.build().unwrap_err();
        assert_eq!(err.to_string(), "invalid instance: interval lo > hi at t(1,1)");
    }

    #[test]
    fn dimension_and_sign_rules() {
        let mut draft = reference_draft();
        draft.demand.pop();
        assert_eq!(validate(&draft)[0].to_string(), "expected 4 demand entries, found 3");

        let mut draft = reference_draft();
        draft.fixed_charge[1][2] = (-1.0, 3.0);
        draft.supply[2] = (-2.0, 25.0);
        assert_eq!(
            validate(&draft),
            vec![
                Violation::Negative(Location::Fixed(1, 2)),
                Violation::Negative(Location::Supply(2)),
            ]
        );

        assert_eq!(
            validate(&InstanceDraft::default()),
            vec![Violation::NoSources, Violation::NoDestinations]
        );
    }

    #[test]
    fn zero_width_allowed() {
        assert!(validate(&single((5.0, 5.0), (5.0, 5.0))).is_empty());
    }

    #[test]
    fn reported_plan_has_only_the_rounding_shortfall() {
        let inst = reference_instance();
        let v = check_plan(&inst, &reported_plan(), DEFAULT_PLAN_TOLERANCE).unwrap();
        assert_eq!(v.len(), 1);
        match v[0] {
            PlanViolation::DemandUnmet { j, shipped, floor } => {
                assert_eq!(j, 1);
                assert!((shipped - 18.99).abs() < 1e-9);
                assert_eq!(floor, 19.0);
            }
            ref other => panic!("unexpected {other:?}"),
        }
        assert!(check_plan(&inst, &reported_plan(), 0.02).unwrap().is_empty());
    }

    #[test]
    fn zero_plan_misses_every_demand() {
        let inst = reference_instance();
        let v = check_plan(&inst, &ShipmentPlan::zeros(3, 4), DEFAULT_PLAN_TOLERANCE).unwrap();
        let cols: Vec<usize> = v
            .iter()
            .map(|p| match p {
                PlanViolation::DemandUnmet { j, .. } => *j,
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert_eq!(cols, vec![0, 1, 2, 3]);
    }

    #[test]
    fn overloaded_row() {
        let inst = reference_instance();
        let mut y = Array2::zeros((3, 4));
        y[(0, 0)] = 82.0;
        y[(1, 1)] = 19.0;
        y[(1, 2)] = 8.0;
        y[(2, 2)] = 15.0;
        y[(2, 3)] = 10.0;
        y[(1, 3)] = 1.0;
        y[(0, 3)] = 9.0;
        let plan = ShipmentPlan::from_flows(y, 1e-9);
        let v = check_plan(&inst, &plan, DEFAULT_PLAN_TOLERANCE).unwrap();
        assert_eq!(
            v,
            vec![PlanViolation::SupplyExceeded {
                i: 0,
                shipped: 91.0,
                cap: 33.0
            }]
        );
        assert!(v[0].to_string().starts_with("row 1 exceeds supply cap 33"));
    }

    #[test]
    fn link_and_shape_errors() {
        let inst = reference_instance();
        let mut x = Array2::from_elem((3, 4), false);
        x[(2, 3)] = true;
        let plan = ShipmentPlan::new(Array2::zeros((3, 4)), x).unwrap();
        let v = check_plan(&inst, &plan, DEFAULT_PLAN_TOLERANCE).unwrap();
        assert!(matches!(
            v[0],
            PlanViolation::Link {
                i: 2,
                j: 3,
                open: true,
                ..
            }
        ));
        assert!(check_plan(&inst, &ShipmentPlan::zeros(2, 4), 1e-6).is_err());
        assert!(ShipmentPlan::new(Array2::zeros((3, 4)), Array2::from_elem((3, 3), false)).is_err());
    }

    #[test]
    fn crisp_to_interval() {
        let crisp = FctpInstance {
            unit_cost: Array2::from_elem((2, 2), 3.0),
            fixed_charge: Array2::from_elem((2, 2), 7.0),
            supply: vec![10.0, 10.0],
            demand: vec![5.0, 5.0],
        };
        let inst = crisp.to_interval().unwrap();
        assert!(inst.unit_cost().iter().all(Interval::is_degenerate));
        assert_eq!(inst.supply_caps(), vec![10.0, 10.0]);
    }
}
