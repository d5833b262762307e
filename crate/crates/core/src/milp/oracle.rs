use super::model::MilpModel;
use super::simplex::solve_lp;
use super::{MilpSolution, SolveError, SolveStats, SolveStatus};
use crate::parallel::{self, Execution};

pub const ORACLE_MAX_BINARIES: usize = 20;

pub fn oracle_solve(model: &MilpModel) -> Result<MilpSolution, SolveError> {
    oracle_solve_with(model, Execution::default())
}

/// Enumerates every 0/1 pattern of the binaries, solves the LP left over
/// for each, and keeps the best. Ties go to the lowest pattern, so the
/// result does not depend on `exec`.
pub fn oracle_solve_with(model: &MilpModel, exec: Execution) -> Result<MilpSolution, SolveError> {
    model.check()?;
    let binaries = model.binaries();
    if binaries.len() > ORACLE_MAX_BINARIES {
        return Err(SolveError::OracleOutOfScope {
            binaries: binaries.len(),
            max: ORACLE_MAX_BINARIES,
        });
    }
    let patterns = 1usize << binaries.len();
    let outcomes = parallel::map_range(patterns, exec, |mask| {
        let fixings: Vec<(usize, f64)> = binaries
            .iter()
            .enumerate()
            .map(|(bit, &var)| (var, ((mask >> bit) & 1) as f64))
            .collect();
        solve_lp(&model.with_fixed(&fixings))
    });

    let mut stats = SolveStats {
        lp_solves: patterns,
        nodes: patterns,
        pivots: 0,
    };
    let mut best: Option<MilpSolution> = None;
    let mut unbounded = false;
    for outcome in outcomes {
        let sol = outcome?;
        stats.pivots += sol.stats.pivots;
        match sol.status {
            SolveStatus::Infeasible => {}
            SolveStatus::Unbounded => unbounded = true,
            SolveStatus::Optimal => {
                if best.as_ref().is_none_or(|b| sol.objective_value < b.objective_value) {
                    best = Some(sol);
                }
            }
        }
    }
    Ok(match (unbounded, best) {
        (true, _) => MilpSolution {
            status: SolveStatus::Unbounded,
            objective_value: f64::NEG_INFINITY,
            assignment: Vec::new(),
            stats,
        },
        (false, Some(sol)) => MilpSolution { stats, ..sol },
        (false, None) => MilpSolution {
            status: SolveStatus::Infeasible,
            objective_value: f64::INFINITY,
            assignment: Vec::new(),
            stats,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::Relation;

    #[test]
    fn rejects_large_models() {
        let mut m = MilpModel::new(21);
        for v in 0..21 {
            m.mark_binary(v);
        }
        m.add_constraint(vec![(0, 1.0)], Relation::Le, 1.0);
        assert_eq!(
            oracle_solve(&m).unwrap_err(),
            SolveError::OracleOutOfScope {
                binaries: 21,
                max: ORACLE_MAX_BINARIES
            }
        );
    }

    #[test]
    fn closed_routes_cannot_serve_demand() {
        // y <= 5x with x forced closed by x <= 0, demand y >= 2.
        let mut m = MilpModel::new(2);
        m.mark_binary(1);
        m.add_constraint(vec![(0, 1.0), (1, -5.0)], Relation::Le, 0.0);
        m.add_constraint(vec![(1, 1.0)], Relation::Le, 0.0);
        m.add_constraint(vec![(0, 1.0)], Relation::Ge, 2.0);
        let s = oracle_solve(&m).unwrap();
        assert_eq!(s.status, SolveStatus::Infeasible);
        assert_eq!(s.stats.lp_solves, 2);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut m = MilpModel::new(4);
        m.set_objective(vec![1.0, 1.0, 3.0, 2.0], 0.0);
        m.mark_binary(2);
        m.mark_binary(3);
        m.add_constraint(vec![(0, 1.0), (2, -10.0)], Relation::Le, 0.0);
        m.add_constraint(vec![(1, 1.0), (3, -10.0)], Relation::Le, 0.0);
        m.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Ge, 4.0);
        let a = oracle_solve_with(&m, Execution::Sequential).unwrap();
        let b = oracle_solve_with(&m, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!((a.objective_value - 6.0).abs() < 1e-9);
    }
}
