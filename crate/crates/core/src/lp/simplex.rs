//! Dense two-phase tableau simplex with Bland's rule.
//!
//! The problem is rewritten as `min c'z | A'z = b', z >= 0, b' >= 0`: free
//! variables are split, nonpositive ones negated, rows with negative right-hand
//! side multiplied by -1, and slack, surplus and artificial columns appended.
//! Bland's rule (lowest eligible index enters, ties in the ratio test go to the
//! lowest basic index) guarantees termination without any perturbation.

use num_traits::{One, Signed, Zero};

use super::{LpProblem, Relation, Sense, VarDomain};
use crate::Rational;

pub(super) enum Solved {
    Infeasible,
    Unbounded,
    /// Values of all standard-form columns.
    Optimal(Vec<Rational>),
}

pub(super) struct StandardForm {
    /// For each original variable, its (column, sign) pieces.
    pieces: Vec<Vec<(usize, bool)>>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    cost: Vec<Rational>,
    /// Columns `>= first_artificial` are artificial.
    first_artificial: usize,
    initial_basis: Vec<usize>,
}

impl StandardForm {
    pub(super) fn build(lp: &LpProblem, with_objective: bool) -> Self {
        let mut pieces = Vec::with_capacity(lp.num_vars());
        let mut ncols = 0;
        for d in lp.domains() {
            let p = match d {
                VarDomain::NonNegative => vec![(ncols, true)],
                VarDomain::NonPositive => vec![(ncols, false)],
                VarDomain::Free => vec![(ncols, true), (ncols + 1, false)],
            };
            ncols += p.len();
            pieces.push(p);
        }
        let structural = ncols;

        // Orient every row so that its right-hand side is nonnegative.
        let mut oriented = Vec::with_capacity(lp.constraints().len());
        for c in lp.constraints() {
            let negate = c.rhs.is_negative();
            let mut row = vec![Rational::zero(); structural];
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(col, positive) in &pieces[j] {
                    let v = if positive ^ negate { a.clone() } else { -a.clone() };
                    row[col] = v;
                }
            }
            let rhs = if negate { -c.rhs.clone() } else { c.rhs.clone() };
            let relation = if negate { c.relation.flipped() } else { c.relation };
            oriented.push((row, relation, rhs));
        }

        let slack_count = oriented
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let artificial_count = oriented
            .iter()
            .filter(|(_, r, _)| *r != Relation::Le)
            .count();
        let first_artificial = structural + slack_count;
        let total = first_artificial + artificial_count;

        let mut rows = Vec::with_capacity(oriented.len());
        let mut rhs = Vec::with_capacity(oriented.len());
        let mut initial_basis = Vec::with_capacity(oriented.len());
        let mut next_slack = structural;
        let mut next_artificial = first_artificial;
        for (mut row, relation, b) in oriented {
            row.resize(total, Rational::zero());
            match relation {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    initial_basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_artificial] = Rational::one();
                    initial_basis.push(next_artificial);
                    next_artificial += 1;
                }
                Relation::Eq => {
                    row[next_artificial] = Rational::one();
                    initial_basis.push(next_artificial);
                    next_artificial += 1;
                }
            }
            rows.push(row);
            rhs.push(b);
        }

        let mut cost = vec![Rational::zero(); total];
        if with_objective {
            let flip = lp.sense() == Sense::Maximize;
            for (j, a) in lp.objective().iter().enumerate() {
                for &(col, positive) in &pieces[j] {
                    let v = if positive ^ flip { a.clone() } else { -a.clone() };
                    cost[col] = v;
                }
            }
        }

        StandardForm {
            pieces,
            rows,
            rhs,
            cost,
            first_artificial,
            initial_basis,
        }
    }

    fn total_columns(&self) -> usize {
        self.cost.len()
    }

    /// Maps standard-form column values back to the original variables.
    pub(super) fn recover(&self, columns: &[Rational]) -> Vec<Rational> {
        self.pieces
            .iter()
            .map(|p| {
                p.iter().fold(Rational::zero(), |acc, &(col, positive)| {
                    if positive {
                        acc + &columns[col]
                    } else {
                        acc - &columns[col]
                    }
                })
            })
            .collect()
    }

    /// Phase one; on success the tableau has an artificial-free basis.
    fn phase_one(&self) -> Option<Tableau> {
        let mut t = Tableau::new(self);
        let total = self.total_columns();

        // Phase-one objective: sum of artificial columns, priced out.
        let mut obj = vec![Rational::zero(); total + 1];
        for (i, &basic) in t.basis.iter().enumerate() {
            if basic >= self.first_artificial {
                for (o, v) in obj.iter_mut().zip(&t.rows[i]) {
                    if !v.is_zero() {
                        *o -= v;
                    }
                }
            }
        }
        for o in &mut obj[self.first_artificial..total] {
            *o = Rational::zero();
        }
        t.objective = obj;

        let allowed: Vec<bool> = (0..total).map(|_| true).collect();
        if t.run(&allowed).is_err() {
            // The phase-one objective is bounded below by zero.
            unreachable!("phase one cannot be unbounded");
        }
        if !t.objective[total].is_zero() {
            return None;
        }

        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= self.first_artificial {
                let replacement = (0..self.first_artificial).find(|&j| !t.rows[i][j].is_zero());
                match replacement {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        Some(t)
    }

    pub(super) fn find_feasible(&self) -> Option<Vec<Rational>> {
        self.phase_one().map(|t| t.column_values())
    }

    pub(super) fn solve(&self) -> Solved {
        let Some(mut t) = self.phase_one() else {
            return Solved::Infeasible;
        };
        let total = self.total_columns();

        let mut obj = self.cost.clone();
        obj.push(Rational::zero());
        for (i, &basic) in t.basis.iter().enumerate() {
            let cb = &self.cost[basic];
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(&t.rows[i]) {
                if !v.is_zero() {
                    *o -= cb * v;
                }
            }
        }
        t.objective = obj;

        let allowed: Vec<bool> = (0..total).map(|j| j < self.first_artificial).collect();
        match t.run(&allowed) {
            Ok(()) => Solved::Optimal(t.column_values()),
            Err(Unbounded) => Solved::Unbounded,
        }
    }
}

struct Unbounded;

struct Tableau {
    /// Each row holds the column coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs followed by minus the current objective value.
    objective: Vec<Rational>,
    width: usize,
}

impl Tableau {
    fn new(sf: &StandardForm) -> Self {
        let width = sf.total_columns();
        let rows = sf
            .rows
            .iter()
            .zip(&sf.rhs)
            .map(|(r, b)| {
                let mut row = r.clone();
                row.push(b.clone());
                row
            })
            .collect();
        Tableau {
            rows,
            basis: sf.initial_basis.clone(),
            objective: vec![Rational::zero(); width + 1],
            width,
        }
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); self.width];
        for (i, &basic) in self.basis.iter().enumerate() {
            values[basic] = self.rows[i][self.width].clone();
        }
        values
    }

    fn run(&mut self, allowed: &[bool]) -> Result<(), Unbounded> {
        loop {
            // Bland: lowest-index column with negative reduced cost.
            let Some(entering) =
                (0..self.width).find(|&j| allowed[j] && self.objective[j].is_negative())
            else {
                return Ok(());
            };

            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / a;
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, entering),
                None => return Err(Unbounded),
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pivot = self.rows[r][c].clone();
        if !pivot.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &pivot;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            eliminate(row, &pivot_row, c);
        }
        eliminate(&mut self.objective, &pivot_row, c);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }
}

fn eliminate(row: &mut [Rational], pivot_row: &[Rational], c: usize) {
    let factor = row[c].clone();
    if factor.is_zero() {
        return;
    }
    for (v, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *v -= &factor * p;
        }
    }
}
