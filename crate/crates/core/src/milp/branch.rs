use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::model::MilpModel;
use super::simplex::solve_lp;
use super::{MilpSolution, SolveError, SolveStats, SolveStatus};

/// Distance from the nearest integer under which a binary counts as integral.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_NODE_LIMIT: usize = 1_000_000;
/// An incumbent must improve by more than this (relative) to replace the old one.
const IMPROVEMENT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchLimits {
    pub node_limit: usize,
}

impl Default for BranchLimits {
    fn default() -> Self {
        Self {
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

struct Node {
    bound: f64,
    depth: usize,
    seq: usize,
    fixings: Vec<(usize, f64)>,
}

// BinaryHeap pops the greatest node: best bound first, then deeper, then
// earlier-created.
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(self.depth.cmp(&other.depth))
            .then(other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

fn cannot_improve(value: f64, incumbent: f64) -> bool {
    value >= incumbent - IMPROVEMENT * incumbent.abs().max(1.0)
}

/// Most fractional binary, lowest index on ties.
fn branching_variable(model: &MilpModel, values: &[f64]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64, f64)> = None;
    for &b in model.binaries() {
        let v = values[b];
        let frac = (v - v.floor()).min(v.ceil() - v);
        if frac > INTEGRALITY_TOLERANCE && best.is_none_or(|(_, _, f)| frac > f) {
            best = Some((b, v, frac));
        }
    }
    best.map(|(b, v, _)| (b, v))
}

pub fn solve_milp(model: &MilpModel) -> Result<MilpSolution, SolveError> {
    solve_milp_with(model, &BranchLimits::default())
}

/// Best-bound branch-and-bound over the binaries of `model`.
///
/// Branches on the most fractional binary; the child rounding the fractional
/// value to its nearer integer is explored first.
pub fn solve_milp_with(model: &MilpModel, limits: &BranchLimits) -> Result<MilpSolution, SolveError> {
    model.check()?;
    let mut stats = SolveStats::default();
    let mut incumbent: Option<(f64, Vec<f64>)> = None;
    let mut heap = BinaryHeap::new();
    let mut seq = 0;
    heap.push(Node {
        bound: f64::NEG_INFINITY,
        depth: 0,
        seq,
        fixings: Vec::new(),
    });

    while let Some(node) = heap.pop() {
        if let Some((best, _)) = &incumbent {
            if cannot_improve(node.bound, *best) {
                continue;
            }
        }
        if stats.nodes >= limits.node_limit {
            return Err(SolveError::NodeLimit {
                limit: limits.node_limit,
            });
        }
        stats.nodes += 1;
        stats.lp_solves += 1;
        let relaxed = solve_lp(&model.with_fixed(&node.fixings))?;
        stats.pivots += relaxed.stats.pivots;
        match relaxed.status {
            SolveStatus::Infeasible => continue,
            SolveStatus::Unbounded => {
                return Ok(MilpSolution {
                    status: SolveStatus::Unbounded,
                    objective_value: f64::NEG_INFINITY,
                    assignment: Vec::new(),
                    stats,
                });
            }
            SolveStatus::Optimal => {}
        }
        if let Some((best, _)) = &incumbent {
            if cannot_improve(relaxed.objective_value, *best) {
                continue;
            }
        }
        match branching_variable(model, &relaxed.assignment) {
            None => {
                let mut values = relaxed.assignment;
                for &b in model.binaries() {
                    values[b] = values[b].round();
                }
                let value = model.evaluate(&values);
                let better = incumbent.as_ref().is_none_or(|(best, _)| !cannot_improve(value, *best));
                if better {
                    incumbent = Some((value, values));
                }
            }
            Some((var, value)) => {
                let order = if value - value.floor() >= 0.5 {
                    [1.0, 0.0]
                } else {
                    [0.0, 1.0]
                };
                for fix in order {
                    seq += 1;
                    let mut fixings = node.fixings.clone();
                    fixings.push((var, fix));
                    heap.push(Node {
                        bound: relaxed.objective_value,
                        depth: node.depth + 1,
                        seq,
                        fixings,
                    });
                }
            }
        }
    }

    Ok(match incumbent {
        Some((objective_value, assignment)) => MilpSolution {
            status: SolveStatus::Optimal,
            objective_value,
            assignment,
            stats,
        },
        None => MilpSolution {
            status: SolveStatus::Infeasible,
            objective_value: f64::INFINITY,
            assignment: Vec::new(),
            stats,
        },
    })
}
