//! Solves the bundled reference instance and prints the intermediate results.

use ifctp_core::crispify::build_bi_objective;
use ifctp_core::fixtures::{reference_instance, REFERENCE_PAYOFF};
use ifctp_core::fuzzy::{build_payoff, compute_ideal, solve_compromise, SolveOptions};
use ifctp_core::{distance_to_ideal, evaluate_interval_objective};

fn main() {
    let instance = reference_instance();
    let options = SolveOptions::default();
    let payoff = build_payoff(&build_bi_objective(&instance), &options).expect("payoff");
    println!("computed payoff: {:?}", payoff.levels);
    for (k, a) in payoff.anchors.iter().flatten().enumerate() {
        println!("anchor {k}: values {:?}", a.values);
        for (i, j, y) in a.plan.active_routes() {
            println!("  y({},{}) = {y}", i + 1, j + 1);
        }
    }
    let ideal = compute_ideal(&instance, &options).expect("ideal").to_center_width();
    println!("ideal: {ideal}");
    for (label, levels) in [("computed", None), ("reference", Some(REFERENCE_PAYOFF))] {
        let res = solve_compromise(&instance, levels, &options).expect("compromise");
        let z = evaluate_interval_objective(&instance, &res.plan).expect("shape");
        println!(
            "{label} payoff: lambda* = {:.6}, memberships = {:?}, Z = {z:.4} = {:.4}, d = {:.4}",
            res.lambda_star,
            res.memberships,
            z.to_center_width(),
            distance_to_ideal(z.to_center_width(), ideal)
        );
        for (i, j, y) in res.plan.active_routes() {
            println!("  y({},{}) = {y:.4}", i + 1, j + 1);
        }
    }
}
