//! Exact feasibility for linear systems over nonnegative variables.
//!
//! Phase-1 simplex on a dense rational tableau. Entering and leaving
//! variables follow Bland's rule (lowest eligible index), which both
//! prevents cycling and makes the returned vertex reproducible.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, x)| a * x)
            .sum()
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        self.relation.holds(&self.lhs(point), &self.rhs)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(
            f,
            "[{}] {} {}",
            terms.join(", "),
            self.relation,
            format_rational(&self.rhs)
        )
    }
}

/// Constraints over `num_vars` variables, all implicitly `>= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    /// Must be `true`: free variables are not supported.
    pub nonneg: bool,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            constraints: Vec::new(),
            nonneg: true,
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_vars == 0 {
            return Err(Error::MalformedSystem("no variables".into()));
        }
        if !self.nonneg {
            return Err(Error::MalformedSystem(
                "free variables are not supported".into(),
            ));
        }
        for (k, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(Error::MalformedSystem(format!(
                    "constraint {k} has {} coefficients, expected {}",
                    c.coeffs.len(),
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    /// Exact check of nonnegativity and every constraint.
    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && (!self.nonneg || point.iter().all(|x| !x.is_negative()))
            && self.constraints.iter().all(|c| c.is_satisfied_by(point))
    }
}

/// Returns a feasible point, or `None` if the system is infeasible.
///
/// The point is re-checked by substitution before it is returned.
pub fn solve_feasible(system: &LinearSystem) -> Result<Option<Vec<Rational>>> {
    system.validate()?;
    let point = match Tableau::build(system).phase_one() {
        Some(point) => point,
        None => return Ok(None),
    };
    if !system.is_satisfied_by(&point) {
        return Err(Error::GuaranteeViolated(
            "simplex returned a point that fails substitution".into(),
        ));
    }
    Ok(Some(point))
}

struct Tableau {
    /// `rows[r]` holds the constraint coefficients followed by the rhs.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs of the phase-1 objective, followed by minus its value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    num_vars: usize,
    num_cols: usize,
}

impl Tableau {
    /// Column layout: original variables, one slack per inequality, then one
    /// artificial per row that has no slack usable as a starting basis.
    fn build(system: &LinearSystem) -> Self {
        let n = system.num_vars;
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = system
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    (
                        c.coeffs.iter().map(|a| -a).collect(),
                        c.relation.flipped(),
                        -&c.rhs,
                    )
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();

        let num_slack = normalized
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Eq)
            .count();
        let num_art = normalized
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Le)
            .count();
        let num_cols = n + num_slack + num_art;

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let mut artificial_rows = Vec::new();
        let (mut next_slack, mut next_art) = (n, n + num_slack);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Rational::zero(); num_cols + 1];
            for (dst, a) in row.iter_mut().zip(coeffs) {
                *dst = a;
            }
            row[num_cols] = rhs;
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    artificial_rows.push(rows.len());
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    artificial_rows.push(rows.len());
                    next_art += 1;
                }
            }
            rows.push(row);
        }

        // Phase-1 objective: minimize the sum of artificials. With the
        // artificials basic, reduced costs are minus the artificial-row sums.
        let mut cost = vec![Rational::zero(); num_cols + 1];
        for &r in &artificial_rows {
            for (c, a) in cost.iter_mut().zip(&rows[r]) {
                *c -= a;
            }
        }
        for &r in &artificial_rows {
            cost[basis[r]] = Rational::zero();
        }

        Self {
            rows,
            cost,
            basis,
            num_vars: n,
            num_cols,
        }
    }

    fn phase_one(mut self) -> Option<Vec<Rational>> {
        while let Some(entering) = (0..self.num_cols).find(|&j| self.cost[j].is_negative()) {
            let leaving = self.ratio_test(entering);
            // Phase 1 is bounded below by zero, so a pivot row always exists.
            let leaving = leaving.expect("phase-1 objective is bounded");
            self.pivot(leaving, entering);
        }
        // cost[rhs] holds minus the objective value.
        if !self.cost[self.num_cols].is_zero() {
            return None;
        }
        let mut point = vec![Rational::zero(); self.num_vars];
        for (r, &var) in self.basis.iter().enumerate() {
            if var < self.num_vars {
                point[var] = self.rows[r][self.num_cols].clone();
            }
        }
        Some(point)
    }

    /// Minimum-ratio row; ties go to the lowest basic variable index.
    fn ratio_test(&self, entering: usize) -> Option<usize> {
        let rhs = self.num_cols;
        let mut best: Option<(usize, Rational)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            let a = &row[entering];
            if !a.is_positive() {
                continue;
            }
            let ratio = &row[rhs] / a;
            let better = match &best {
                None => true,
                Some((b, best_ratio)) => {
                    ratio < *best_ratio || (ratio == *best_ratio && self.basis[r] < self.basis[*b])
                }
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(other, &pivot_row, col);
            }
        }
        eliminate(&mut self.cost, &pivot_row, col);
        self.basis[row] = col;
    }
}

fn eliminate(target: &mut [Rational], pivot_row: &[Rational], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    for (t, p) in target.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *t -= &factor * p;
        }
    }
}
