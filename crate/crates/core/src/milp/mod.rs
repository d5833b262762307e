//! Exact solver for small mixed 0/1 linear programs: a dense two-phase
//! simplex for the relaxation, best-bound branch-and-bound over the binaries,
//! and an exhaustive enumeration oracle used to verify both.

mod branch;
mod model;
mod oracle;
mod simplex;

use thiserror::Error;

pub use branch::{solve_milp, solve_milp_with, BranchLimits, DEFAULT_NODE_LIMIT, INTEGRALITY_TOLERANCE};
pub use model::{Constraint, MilpModel, Relation};
pub use oracle::{oracle_solve, oracle_solve_with, ORACLE_MAX_BINARIES};
pub use simplex::{solve_lp, FEASIBILITY_TOLERANCE, PIVOT_TOLERANCE};

/// Relative tolerance used when comparing objective values across solvers.
pub const OBJECTIVE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// LP relaxations solved.
    pub lp_solves: usize,
    /// Branch-and-bound nodes processed (enumerated patterns for the oracle).
    pub nodes: usize,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MilpSolution {
    pub status: SolveStatus,
    /// `+inf` when infeasible, `-inf` when unbounded.
    pub objective_value: f64,
    /// Empty unless optimal.
    pub assignment: Vec<f64>,
    pub stats: SolveStats,
}

impl MilpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("simplex stalled on degenerate pivots even under Bland's rule")]
    DegeneratePivot,
    #[error("branch-and-bound node limit of {limit} exceeded")]
    NodeLimit { limit: usize },
    #[error("oracle enumeration supports at most {max} binaries, model has {binaries}")]
    OracleOutOfScope { binaries: usize, max: usize },
}

/// True when `a` and `b` agree within [`OBJECTIVE_TOLERANCE`] relative.
pub fn objectives_agree(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= OBJECTIVE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}
