use std::fmt;

use super::SolveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// Sparse linear row `sum(coeff * var) <relation> rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, values: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(v, a)| a * values[v]).sum()
    }

    pub fn is_satisfied(&self, values: &[f64], tolerance: f64) -> bool {
        let lhs = self.activity(values);
        match self.relation {
            Relation::Le => lhs <= self.rhs + tolerance,
            Relation::Ge => lhs >= self.rhs - tolerance,
            Relation::Eq => (lhs - self.rhs).abs() <= tolerance,
        }
    }
}

/// Minimization model over continuous variables with finite lower bounds and
/// a set of 0/1 variables.
#[derive(Debug, Clone, PartialEq)]
pub struct MilpModel {
    objective: Vec<f64>,
    constant: f64,
    constraints: Vec<Constraint>,
    bounds: Vec<(f64, f64)>,
    binaries: Vec<usize>,
}

impl MilpModel {
    /// `num_vars` continuous variables bounded below by zero, zero objective.
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![0.0; num_vars],
            constant: 0.0,
            constraints: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); num_vars],
            binaries: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Binary variable indices, ascending.
    pub fn binaries(&self) -> &[usize] {
        &self.binaries
    }

    pub fn set_objective_coeff(&mut self, var: usize, coeff: f64) {
        self.objective[var] = coeff;
    }

    pub fn set_objective(&mut self, coeffs: Vec<f64>, constant: f64) {
        assert_eq!(coeffs.len(), self.num_vars(), "objective length");
        self.objective = coeffs;
        self.constant = constant;
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) {
        self.bounds[var] = (lo, hi);
    }

    pub fn mark_binary(&mut self, var: usize) {
        self.bounds[var] = (0.0, 1.0);
        if let Err(pos) = self.binaries.binary_search(&var) {
            self.binaries.insert(pos, var);
        }
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn evaluate(&self, values: &[f64]) -> f64 {
        self.constant + self.objective.iter().zip(values).map(|(c, v)| c * v).sum::<f64>()
    }

    /// Bounds, rows and binary integrality, all within `tolerance`.
    pub fn is_feasible(&self, values: &[f64], tolerance: f64) -> bool {
        values.len() == self.num_vars()
            && self
                .bounds
                .iter()
                .zip(values)
                .all(|(&(lo, hi), &v)| v >= lo - tolerance && v <= hi + tolerance)
            && self.constraints.iter().all(|c| c.is_satisfied(values, tolerance))
            && self
                .binaries
                .iter()
                .all(|&b| (values[b] - values[b].round()).abs() <= tolerance)
    }

    pub fn check(&self) -> Result<(), SolveError> {
        let bad = |what: String| Err(SolveError::Malformed(what));
        if self.constraints.is_empty() {
            return bad("model has no constraints".into());
        }
        if !self.constant.is_finite() || self.objective.iter().any(|c| !c.is_finite()) {
            return bad("non-finite objective coefficient".into());
        }
        for (v, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !lo.is_finite() || hi.is_nan() || lo > hi {
                return bad(format!("invalid bounds [{lo}, {hi}] on variable {v}"));
            }
        }
        for &b in &self.binaries {
            let (lo, hi) = self.bounds[b];
            if lo < 0.0 || hi > 1.0 {
                return bad(format!("binary variable {b} has bounds [{lo}, {hi}]"));
            }
        }
        for (r, c) in self.constraints.iter().enumerate() {
            if !c.rhs.is_finite() || c.coeffs.iter().any(|&(v, a)| v >= self.num_vars() || !a.is_finite()) {
                return bad(format!("constraint {r} is malformed"));
            }
        }
        Ok(())
    }

    /// Copy with the given variables pinned to values.
    pub fn with_fixed(&self, fixings: &[(usize, f64)]) -> MilpModel {
        let mut m = self.clone();
        for &(v, val) in fixings {
            m.bounds[v] = (val, val);
        }
        m
    }
}
