//! Random instance generation shared by the integration tests and benches.
#![allow(dead_code)]

use ifctp_core::model::FctpInstance;
use ifctp_core::{IfctpInstance, InstanceDraft};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Interval with integer endpoints in `[1, 50]`.
pub fn endpoints<R: Rng>(rng: &mut R) -> (f64, f64) {
    let a: u32 = rng.gen_range(1..=50);
    let b: u32 = rng.gen_range(1..=50);
    (a.min(b) as f64, a.max(b) as f64)
}

/// Random `m x n` draft; may have aggregate supply below aggregate demand.
pub fn random_draft<R: Rng>(rng: &mut R, m: usize, n: usize) -> InstanceDraft {
    let mut grid = || {
        (0..m)
            .map(|_| (0..n).map(|_| endpoints(rng)).collect())
            .collect::<Vec<Vec<_>>>()
    };
    let unit_cost = grid();
    let fixed_charge = grid();
    InstanceDraft {
        sources: m,
        destinations: n,
        unit_cost,
        fixed_charge,
        supply: (0..m).map(|_| endpoints(rng)).collect(),
        demand: (0..n).map(|_| endpoints(rng)).collect(),
    }
}

/// Valid instance with up to `max_m` sources and `max_n` destinations.
/// Drafts whose supply cannot cover demand are redrawn.
pub fn random_instance<R: Rng>(rng: &mut R, max_m: usize, max_n: usize) -> IfctpInstance {
    loop {
        let m = rng.gen_range(1..=max_m);
        let n = rng.gen_range(1..=max_n);
        if let Ok(inst) = random_draft(rng, m, n).build() {
            return inst;
        }
    }
}

pub fn random_instances(seed: u64, count: usize, max_m: usize, max_n: usize) -> Vec<IfctpInstance> {
    let mut rng = rng(seed);
    (0..count).map(|_| random_instance(&mut rng, max_m, max_n)).collect()
}

/// Copy of `inst` with every interval collapsed: costs to their centers,
/// supplies to their upper and demands to their lower limits.
pub fn zero_width_copy(inst: &IfctpInstance) -> (IfctpInstance, FctpInstance) {
    let crisp = FctpInstance {
        unit_cost: inst.unit_cost().map(|v| v.center()),
        fixed_charge: inst.fixed_charge().map(|v| v.center()),
        supply: inst.supply_caps(),
        demand: inst.demand_floors(),
    };
    let interval = crisp.to_interval().expect("collapsed instance stays valid");
    (interval, crisp)
}

/// Random flows on a random subset of routes, not necessarily feasible.
pub fn random_plan<R: Rng>(rng: &mut R, m: usize, n: usize) -> ifctp_core::ShipmentPlan {
    let y = Array2::from_shape_fn((m, n), |_| {
        if rng.gen_bool(0.5) {
            rng.gen_range(0.0..40.0)
        } else {
            0.0
        }
    });
    let x = Array2::from_shape_fn((m, n), |ij| y[ij] > 0.0 || rng.gen_bool(0.2));
    ifctp_core::ShipmentPlan::new(y, x).expect("same shape")
}
