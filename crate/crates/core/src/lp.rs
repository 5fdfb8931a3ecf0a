//! Exact rational linear programming.
//!
//! Dense two-phase tableau simplex over `BigRational` with Bland's rule, for
//! problems of the form: maximise `c.x` subject to `A x = b`, `x >= 0`.
//! Problem sizes here are a few dozen rows and columns, so a dense tableau
//! that skips zero entries is plenty.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
    objective: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { solution, .. } => Some(solution),
            _ => None,
        }
    }
}

impl LinearProgram {
    /// `num_vars` non-negative variables, no constraints, zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    /// Adds `sum coeff * x[var] = rhs`. Repeated variables are summed.
    pub fn add_equality(
        &mut self,
        coeffs: impl IntoIterator<Item = (usize, Rational)>,
        rhs: Rational,
    ) {
        let mut row: Vec<(usize, Rational)> = Vec::new();
        for (var, c) in coeffs {
            assert!(var < self.num_vars, "variable {var} out of range");
            match row.iter_mut().find(|(v, _)| *v == var) {
                Some((_, acc)) => *acc += c,
                None => row.push((var, c)),
            }
        }
        row.retain(|(_, c)| !c.is_zero());
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn set_objective(&mut self, coeffs: impl IntoIterator<Item = (usize, Rational)>) {
        self.objective = coeffs.into_iter().collect();
    }

    /// True if `x` satisfies every constraint exactly and is non-negative.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rational = row.iter().map(|(v, c)| c * &x[*v]).sum();
                &lhs == b
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().map(|(v, c)| c * &x[*v]).sum()
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }

    /// Any feasible point, ignoring the objective.
    pub fn find_feasible(&self) -> Option<Vec<Rational>> {
        let mut tab = Tableau::build(self);
        if !tab.phase_one() {
            return None;
        }
        Some(tab.primal(self.num_vars))
    }
}

struct Tableau {
    /// Rows of `[A | I_art]`, one per constraint.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    num_real: usize,
    /// Columns that may enter the basis.
    allowed: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let n = lp.num_vars;
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (row, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let flip = b.is_negative();
            let mut dense = vec![Rational::zero(); width];
            for (v, c) in row {
                dense[*v] = if flip { -c.clone() } else { c.clone() };
            }
            dense[n + i] = Rational::one();
            rows.push(dense);
            rhs.push(if flip { -b.clone() } else { b.clone() });
        }
        Tableau {
            rows,
            rhs,
            basis: (n..n + m).collect(),
            num_real: n,
            allowed: (0..width).map(|j| j < n).collect(),
        }
    }

    fn width(&self) -> usize {
        self.allowed.len()
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        if !p.is_one() {
            let inv = p.recip();
            for v in self.rows[r].iter_mut().filter(|v| !v.is_zero()) {
                *v *= &inv;
            }
            self.rhs[r] *= &inv;
        }
        let nz: Vec<usize> = (0..self.width())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for &j in &nz {
                let delta = &factor * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Reduced profits `c_j - c_B B^-1 A_j` for the given cost vector.
    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    d[j] -= &cost[b] * v;
                }
            }
        }
        d
    }

    /// Bland's rule simplex on the current basis. Returns false if unbounded.
    fn optimise(&mut self, cost: &[Rational]) -> bool {
        loop {
            let d = self.reduced(cost);
            let Some(col) = (0..self.width()).find(|&j| self.allowed[j] && d[j].is_positive())
            else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let q = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, bq)) => q < *bq || (q == *bq && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, q));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, col);
        }
    }

    /// Drives the artificial variables to zero. Returns false if infeasible.
    fn phase_one(&mut self) -> bool {
        let n = self.num_real;
        let width = self.width();
        let cost: Vec<Rational> = (0..width)
            .map(|j| {
                if j < n {
                    Rational::zero()
                } else {
                    -Rational::one()
                }
            })
            .collect();
        let mut all = self.allowed.clone();
        all.iter_mut().for_each(|a| *a = true);
        let real_only = std::mem::replace(&mut self.allowed, all);
        self.optimise(&cost);
        self.allowed = real_only;

        let infeasible = self
            .basis
            .iter()
            .zip(&self.rhs)
            .any(|(&b, v)| b >= n && !v.is_zero());
        if infeasible {
            return false;
        }
        // Pivot leftover (zero-valued) artificials out, dropping redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= n {
                match (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn primal(&self, num_vars: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < num_vars {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        if !self.phase_one() {
            return LpOutcome::Infeasible;
        }
        let mut cost = vec![Rational::zero(); self.width()];
        for (v, c) in &lp.objective {
            cost[*v] += c;
        }
        if !self.optimise(&cost) {
            return LpOutcome::Unbounded;
        }
        let solution = self.primal(lp.num_vars);
        LpOutcome::Optimal {
            value: lp.objective_value(&solution),
            solution,
        }
    }
}
