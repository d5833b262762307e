//! A 3x4 reference instance and known results for it.

use ndarray::Array2;

use crate::fuzzy::PayoffLevels;
use crate::model::{IfctpInstance, InstanceDraft, ShipmentPlan};

/// Problem file of the reference instance.
pub const REFERENCE_TEXT: &str = include_str!("../examples/reference.ifctp");

/// Payoff levels `L1, U1, L2, U2` known for the reference instance.
pub const REFERENCE_PAYOFF: PayoffLevels = PayoffLevels {
    best: [640.0, 163.0],
    worst: [787.0, 190.0],
};

/// Reference interval cost of the compromise plan.
pub const REPORTED_OBJECTIVE: (f64, f64) = (672.82, 1010.88);
/// Reference ideal point `<z_c*, z_w*>`.
pub const REPORTED_IDEAL: (f64, f64) = (830.0, 163.0);
/// Reference distance of the compromise solution from the ideal point.
pub const REPORTED_DISTANCE: f64 = 13.29;
/// Competing solution on the reference instance and its distance.
pub const COMPETITOR_1: (f64, f64) = (640.0, 1020.0);
pub const COMPETITOR_1_DISTANCE: f64 = 27.0;

pub fn reference_draft() -> InstanceDraft {
    let unit_cost = vec![
        vec![(4.0, 8.0), (8.0, 12.0), (9.0, 11.0), (8.0, 10.0)],
        vec![(10.0, 18.0), (10.0, 12.0), (11.0, 15.0), (5.0, 7.0)],
        vec![(7.0, 19.0), (8.0, 12.0), (8.0, 14.0), (13.0, 17.0)],
    ];
    let fixed_charge = vec![
        vec![(10.0, 30.0), (19.0, 25.0), (19.0, 25.0), (20.0, 30.0)],
        vec![(16.0, 20.0), (15.0, 25.0), (25.0, 55.0), (38.0, 40.0)],
        vec![(10.0, 20.0), (22.0, 30.0), (30.0, 50.0), (20.0, 22.0)],
    ];
    InstanceDraft {
        sources: 3,
        destinations: 4,
        unit_cost,
        fixed_charge,
        supply: vec![(30.0, 33.0), (27.0, 28.0), (22.0, 25.0)],
        demand: vec![(20.0, 21.0), (19.0, 24.0), (23.0, 24.0), (20.0, 22.0)],
    }
}

pub fn reference_instance() -> IfctpInstance {
    reference_draft().build().expect("reference instance is valid")
}

/// The compromise plan as commonly quoted (flows rounded to two decimals).
pub fn reported_plan() -> ShipmentPlan {
    let mut y = Array2::zeros((3, 4));
    y[(0, 0)] = 20.0;
    y[(0, 2)] = 13.0;
    y[(1, 1)] = 4.95;
    y[(1, 3)] = 20.0;
    y[(2, 1)] = 14.04;
    y[(2, 2)] = 10.0;
    ShipmentPlan::from_flows(y, 0.0)
}
