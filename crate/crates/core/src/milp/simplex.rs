//! Dense two-phase primal simplex on the continuous relaxation.
//!
//! Variables are shifted to their lower bounds; finite upper bounds become
//! `<=` rows and variables with equal bounds are substituted out. `<=` rows
//! with nonnegative right-hand side start with their slack basic, all other
//! rows get an artificial variable that phase one drives to zero.

use super::model::{MilpModel, Relation};
use super::{MilpSolution, SolveError, SolveStats, SolveStatus};

/// Smallest admissible pivot magnitude.
pub const PIVOT_TOLERANCE: f64 = 1e-10;
/// Primal feasibility tolerance (phase-one residual, row checks).
pub const FEASIBILITY_TOLERANCE: f64 = 1e-7;
const OPTIMALITY_TOLERANCE: f64 = 1e-9;
const ZERO: f64 = 1e-11;
/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_LIMIT: usize = 500;
const ITERATION_LIMIT: usize = 20_000;

struct Tableau {
    /// Row-major, `rows x width`; the last column is the right-hand side.
    a: Vec<f64>,
    rows: usize,
    width: usize,
    basis: Vec<usize>,
    /// Reduced costs; the last entry holds minus the objective value.
    cost: Vec<f64>,
    pivots: usize,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.a[r * self.width + c]
    }

    #[inline]
    fn rhs(&self, r: usize) -> f64 {
        self.a[r * self.width + self.width - 1]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width;
        let inv = 1.0 / self.at(pr, pc);
        let (before, rest) = self.a.split_at_mut(pr * w);
        let (prow, after) = rest.split_at_mut(w);
        for v in prow.iter_mut() {
            *v *= inv;
        }
        prow[pc] = 1.0;
        let eliminate = |row: &mut [f64]| {
            let f = row[pc];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * p;
                    if v.abs() < ZERO {
                        *v = 0.0;
                    }
                }
                row[pc] = 0.0;
            }
        };
        before.chunks_exact_mut(w).for_each(eliminate);
        after.chunks_exact_mut(w).for_each(eliminate);
        eliminate(&mut self.cost);
        self.basis[pr] = pc;
        self.pivots += 1;
    }

    fn entering(&self, allowed: usize, bland: bool) -> Option<usize> {
        let candidates = self.cost[..allowed]
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d < -OPTIMALITY_TOLERANCE);
        if bland {
            candidates.map(|(c, _)| c).next()
        } else {
            // Most negative reduced cost, lowest index on ties.
            candidates
                .fold(None, |best: Option<(usize, f64)>, (c, &d)| match best {
                    Some((_, bd)) if bd <= d => best,
                    _ => Some((c, d)),
                })
                .map(|(c, _)| c)
        }
    }

    fn leaving(&self, pc: usize, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64, f64)> = None;
        for r in 0..self.rows {
            let a = self.at(r, pc);
            if a <= PIVOT_TOLERANCE {
                continue;
            }
            let ratio = self.rhs(r).max(0.0) / a;
            best = match best {
                None => Some((r, ratio, a)),
                Some((br, bratio, ba)) => {
                    let take = if ratio < bratio - 1e-12 {
                        true
                    } else if ratio <= bratio + 1e-12 {
                        if bland {
                            self.basis[r] < self.basis[br]
                        } else {
                            a > ba
                        }
                    } else {
                        false
                    };
                    if take {
                        Some((r, ratio, a))
                    } else {
                        Some((br, bratio, ba))
                    }
                }
            };
        }
        best.map(|(r, _, _)| r)
    }

    /// Runs pivots until optimal. Columns at or beyond `allowed` never enter.
    fn optimize(&mut self, allowed: usize) -> Result<PhaseOutcome, SolveError> {
        let mut bland = false;
        let mut degenerate = 0usize;
        let mut iterations = 0usize;
        loop {
            let Some(pc) = self.entering(allowed, bland) else {
                return Ok(PhaseOutcome::Optimal);
            };
            let Some(pr) = self.leaving(pc, bland) else {
                return Ok(PhaseOutcome::Unbounded);
            };
            if self.rhs(pr).abs() <= ZERO {
                degenerate += 1;
                if degenerate >= DEGENERATE_LIMIT {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(pr, pc);
            iterations += 1;
            if iterations >= ITERATION_LIMIT {
                if bland {
                    return Err(SolveError::DegeneratePivot);
                }
                bland = true;
                iterations = 0;
            }
        }
    }

    fn reset_cost(&mut self, costs: &[f64]) {
        self.cost.iter_mut().for_each(|v| *v = 0.0);
        self.cost[..costs.len()].copy_from_slice(costs);
        for r in 0..self.rows {
            let cb = costs.get(self.basis[r]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                let row = &self.a[r * self.width..(r + 1) * self.width];
                for (d, v) in self.cost.iter_mut().zip(row) {
                    *d -= cb * v;
                }
            }
        }
        for &b in &self.basis {
            if b < self.cost.len() - 1 {
                self.cost[b] = 0.0;
            }
        }
    }

    fn remove_rows(&mut self, drop: &[usize]) {
        if drop.is_empty() {
            return;
        }
        let w = self.width;
        let mut a = Vec::with_capacity(self.a.len());
        let mut basis = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            if !drop.contains(&r) {
                a.extend_from_slice(&self.a[r * w..(r + 1) * w]);
                basis.push(self.basis[r]);
            }
        }
        self.rows = basis.len();
        self.a = a;
        self.basis = basis;
    }
}

enum PhaseOutcome {
    Optimal,
    Unbounded,
}

struct StandardRow {
    coeffs: Vec<f64>,
    relation: Relation,
    rhs: f64,
}

fn status_only(status: SolveStatus, pivots: usize) -> MilpSolution {
    MilpSolution {
        status,
        objective_value: match status {
            SolveStatus::Unbounded => f64::NEG_INFINITY,
            _ => f64::INFINITY,
        },
        assignment: Vec::new(),
        stats: SolveStats {
            lp_solves: 1,
            nodes: 0,
            pivots,
        },
    }
}

/// Solves the continuous relaxation of `model` (binaries range over their
/// bounds). Pivoting is deterministic: identical models give identical
/// solutions.
pub fn solve_lp(model: &MilpModel) -> Result<MilpSolution, SolveError> {
    model.check()?;
    let nv = model.num_vars();
    let bounds = model.bounds();

    // Structural columns for the variables that are not pinned.
    let mut column = vec![None; nv];
    let mut ncols = 0;
    for (v, &(lo, hi)) in bounds.iter().enumerate() {
        if hi - lo > 1e-12 {
            column[v] = Some(ncols);
            ncols += 1;
        }
    }

    let mut rows: Vec<StandardRow> = Vec::with_capacity(model.constraints().len() + ncols);
    for c in model.constraints() {
        let mut coeffs = vec![0.0; ncols];
        let mut rhs = c.rhs;
        for &(v, a) in &c.coeffs {
            rhs -= a * bounds[v].0;
            if let Some(k) = column[v] {
                coeffs[k] += a;
            }
        }
        if coeffs.iter().all(|a| a.abs() <= ZERO) {
            let ok = match c.relation {
                Relation::Le => 0.0 <= rhs + FEASIBILITY_TOLERANCE,
                Relation::Ge => 0.0 >= rhs - FEASIBILITY_TOLERANCE,
                Relation::Eq => rhs.abs() <= FEASIBILITY_TOLERANCE,
            };
            if !ok {
                return Ok(status_only(SolveStatus::Infeasible, 0));
            }
            continue;
        }
        rows.push(StandardRow {
            coeffs,
            relation: c.relation,
            rhs,
        });
    }
    for (v, &(lo, hi)) in bounds.iter().enumerate() {
        if let (Some(k), true) = (column[v], hi.is_finite()) {
            let mut coeffs = vec![0.0; ncols];
            coeffs[k] = 1.0;
            rows.push(StandardRow {
                coeffs,
                relation: Relation::Le,
                rhs: hi - lo,
            });
        }
    }

    // Nonnegative right-hand sides; `>= 0` rows flip to `<= 0` and keep a slack.
    for row in &mut rows {
        if row.rhs < 0.0 || (row.rhs == 0.0 && row.relation == Relation::Ge) {
            row.rhs = -row.rhs;
            row.coeffs.iter_mut().for_each(|a| *a = -*a);
            row.relation = match row.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let nrows = rows.len();
    let nslack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let nart = rows.iter().filter(|r| r.relation != Relation::Le).count();
    let art_start = ncols + nslack;
    let width = art_start + nart + 1;

    let mut tab = Tableau {
        a: vec![0.0; nrows * width],
        rows: nrows,
        width,
        basis: vec![0; nrows],
        cost: vec![0.0; width],
        pivots: 0,
    };
    let (mut s, mut art) = (ncols, art_start);
    for (r, row) in rows.iter().enumerate() {
        let base = r * width;
        tab.a[base..base + ncols].copy_from_slice(&row.coeffs);
        tab.a[base + width - 1] = row.rhs;
        match row.relation {
            Relation::Le => {
                tab.a[base + s] = 1.0;
                tab.basis[r] = s;
                s += 1;
            }
            Relation::Ge => {
                tab.a[base + s] = -1.0;
                s += 1;
                tab.a[base + art] = 1.0;
                tab.basis[r] = art;
                art += 1;
            }
            Relation::Eq => {
                tab.a[base + art] = 1.0;
                tab.basis[r] = art;
                art += 1;
            }
        }
    }

    if nart > 0 {
        let mut phase_one = vec![0.0; art_start + nart];
        phase_one[art_start..].iter_mut().for_each(|c| *c = 1.0);
        tab.reset_cost(&phase_one);
        tab.optimize(art_start + nart)?;
        let residual = -tab.cost[width - 1];
        if residual > FEASIBILITY_TOLERANCE {
            return Ok(status_only(SolveStatus::Infeasible, tab.pivots));
        }
        // Pivot remaining (zero-level) artificials out of the basis.
        let mut redundant = Vec::new();
        for r in 0..tab.rows {
            if tab.basis[r] >= art_start {
                let col = (0..art_start)
                    .filter(|&c| tab.at(r, c).abs() > PIVOT_TOLERANCE)
                    .max_by(|&x, &y| tab.at(r, x).abs().total_cmp(&tab.at(r, y).abs()));
                match col {
                    Some(c) => tab.pivot(r, c),
                    None => redundant.push(r),
                }
            }
        }
        tab.remove_rows(&redundant);
    }

    let mut phase_two = vec![0.0; art_start];
    for (v, col) in column.iter().enumerate() {
        if let Some(k) = col {
            phase_two[*k] = model.objective()[v];
        }
    }
    tab.reset_cost(&phase_two);
    if let PhaseOutcome::Unbounded = tab.optimize(art_start)? {
        return Ok(status_only(SolveStatus::Unbounded, tab.pivots));
    }

    let mut col_value = vec![0.0; ncols];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < ncols {
            col_value[b] = tab.rhs(r).max(0.0);
        }
    }
    let assignment: Vec<f64> = (0..nv)
        .map(|v| {
            let lo = bounds[v].0;
            match column[v] {
                Some(k) => (lo + col_value[k]).min(bounds[v].1),
                None => lo,
            }
        })
        .collect();
    Ok(MilpSolution {
        status: SolveStatus::Optimal,
        objective_value: model.evaluate(&assignment),
        assignment,
        stats: SolveStats {
            lp_solves: 1,
            nodes: 0,
            pivots: tab.pivots,
        },
    })
}
