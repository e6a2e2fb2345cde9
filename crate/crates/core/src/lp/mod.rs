//! Exact linear programming over the rationals.
//!
//! [`LpProblem`] holds one concrete linear program; [`LpProblem::solve`] runs a
//! dense two-phase simplex with Bland's rule and reports the exact
//! Infeasible / Unbounded / Optimal trichotomy. No floating point is involved
//! anywhere, so the status is a proof, not an estimate.

mod simplex;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::{Error, ExtendedRational, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
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

/// Sign restriction on a single variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarDomain {
    NonNegative,
    NonPositive,
    Free,
}

impl VarDomain {
    pub fn contains(self, value: &Rational) -> bool {
        match self {
            VarDomain::NonNegative => !value.is_negative(),
            VarDomain::NonPositive => !value.is_positive(),
            VarDomain::Free => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, point: &[Rational]) -> Rational {
        dot(&self.coeffs, point)
    }

    pub fn is_satisfied(&self, point: &[Rational]) -> bool {
        self.relation.holds(&self.lhs(point), &self.rhs)
    }
}

/// One concrete linear program.
///
/// Every constraint row has exactly one coefficient per variable and there is
/// at least one variable; both are enforced on construction, so a value of
/// this type can always be handed to the solver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LpProblem {
    sense: Sense,
    objective: Vec<Rational>,
    domains: Vec<VarDomain>,
    constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(sense: Sense, objective: Vec<Rational>, domains: Vec<VarDomain>) -> Result<Self> {
        if objective.is_empty() {
            return Err(Error::Dimension("a linear program needs at least one variable".into()));
        }
        if objective.len() != domains.len() {
            return Err(Error::Dimension(format!(
                "{} objective coefficients but {} variable domains",
                objective.len(),
                domains.len()
            )));
        }
        Ok(LpProblem {
            sense,
            objective,
            domains,
            constraints: Vec::new(),
        })
    }

    /// A pure feasibility problem: zero objective, minimized.
    pub fn feasibility(domains: Vec<VarDomain>) -> Result<Self> {
        let objective = vec![Rational::zero(); domains.len()];
        Self::new(Sense::Minimize, objective, domains)
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::Dimension(format!(
                "constraint has {} coefficients, problem has {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn with_constraint(
        mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<Self> {
        self.add_constraint(coeffs, relation, rhs)?;
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn domains(&self) -> &[VarDomain] {
        &self.domains
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point)
    }

    /// Checks every row and every sign restriction exactly.
    pub fn is_feasible_point(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars()
            && self.domains.iter().zip(point).all(|(d, v)| d.contains(v))
            && self.constraints.iter().all(|c| c.is_satisfied(point))
    }

    pub fn solve(&self) -> LpOutcome {
        let standard = simplex::StandardForm::build(self, true);
        match standard.solve() {
            simplex::Solved::Infeasible => LpOutcome::infeasible(self.sense),
            simplex::Solved::Unbounded => LpOutcome::unbounded(self.sense),
            simplex::Solved::Optimal(columns) => {
                let point = standard.recover(&columns);
                let value = self.objective_value(&point);
                LpOutcome {
                    status: LpStatus::Optimal,
                    value: ExtendedRational::Finite(value),
                    point: Some(point),
                }
            }
        }
    }

    /// Phase one only. Returns a feasible point if the polyhedron is nonempty.
    pub fn feasible(&self) -> Option<Vec<Rational>> {
        let standard = simplex::StandardForm::build(self, false);
        standard.find_feasible().map(|columns| standard.recover(&columns))
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible().is_some()
    }
}

impl fmt::Display for LpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sense = match self.sense {
            Sense::Minimize => "min",
            Sense::Maximize => "max",
        };
        writeln!(f, "{sense} {}", linear_form(&self.objective))?;
        for c in &self.constraints {
            writeln!(f, "  {} {} {}", linear_form(&c.coeffs), c.relation, c.rhs)?;
        }
        let doms: Vec<String> = self
            .domains
            .iter()
            .enumerate()
            .map(|(j, d)| match d {
                VarDomain::NonNegative => format!("x{j} >= 0"),
                VarDomain::NonPositive => format!("x{j} <= 0"),
                VarDomain::Free => format!("x{j} free"),
            })
            .collect();
        write!(f, "  {}", doms.join(", "))
    }
}

fn linear_form(coeffs: &[Rational]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(j, a)| format!("({a})x{j}"))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Infeasible,
    Unbounded,
    Optimal,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::Optimal => "optimal",
        })
    }
}

/// Result of solving one [`LpProblem`].
///
/// `value` follows the extended-axis conventions: an infeasible minimization
/// is `+inf`, an unbounded one `-inf`, and the mirror image for maximization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: ExtendedRational,
    pub point: Option<Vec<Rational>>,
}

impl LpOutcome {
    fn infeasible(sense: Sense) -> Self {
        let value = match sense {
            Sense::Minimize => ExtendedRational::PosInf,
            Sense::Maximize => ExtendedRational::NegInf,
        };
        LpOutcome {
            status: LpStatus::Infeasible,
            value,
            point: None,
        }
    }

    fn unbounded(sense: Sense) -> Self {
        let value = match sense {
            Sense::Minimize => ExtendedRational::NegInf,
            Sense::Maximize => ExtendedRational::PosInf,
        };
        LpOutcome {
            status: LpStatus::Unbounded,
            value,
            point: None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status != LpStatus::Infeasible
    }
}
