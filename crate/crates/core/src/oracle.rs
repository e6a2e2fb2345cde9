//! Brute-force ground truth over concrete scenarios.
//!
//! Nothing here uses the characterizations of [`crate::feasibility`]; every
//! answer comes from realizing scenarios and solving them.
//!
//! [`oracle_weakly_zero`] is exact. [`grid_counterexample_strong`] is a
//! refuter only: finding no counterexample on a grid proves nothing.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::interval::{Interval, IntervalMatrix, IntervalVector};
use crate::lp::{LpOutcome, LpProblem, Relation, VarDomain};
use crate::problem::{Form, IlpProblem, Orientation, Scenario, Side};
use crate::{Entry, Error, ExtendedRational, Limits, Matrix, Rational, Result};

/// Optimal values over all endpoint scenarios.
#[derive(Debug, Clone)]
pub struct ValueSummary {
    pub has_pos_inf: bool,
    pub has_neg_inf: bool,
    /// Sorted, without duplicates.
    pub finite_values: Vec<Rational>,
    pub per_scenario: Vec<(Scenario, LpOutcome, LpOutcome)>,
}

impl ValueSummary {
    pub fn scenarios_with_gap(&self) -> impl Iterator<Item = &Scenario> {
        self.per_scenario
            .iter()
            .filter(|(_, p, d)| !p.is_feasible() && !d.is_feasible())
            .map(|(s, _, _)| s)
    }
}

/// Solves both programs of every endpoint scenario. The value flags and
/// the value list describe the program `p` stands for (its orientation).
pub fn enumerate_values(p: &IlpProblem, limits: &Limits) -> Result<ValueSummary> {
    let grid = p.endpoint_selections(limits)?;
    let own = match p.orientation() {
        Orientation::Primal => Side::Primal,
        Orientation::Dual => Side::Dual,
    };
    let mut has_pos_inf = false;
    let mut has_neg_inf = false;
    let mut finite = BTreeSet::new();
    let mut per_scenario = Vec::new();
    for s in grid.iter() {
        let primal = p.scenario_lp(Side::Primal, &s).solve();
        let dual = p.scenario_lp(Side::Dual, &s).solve();
        let value = if own == Side::Primal { &primal.value } else { &dual.value };
        match value {
            ExtendedRational::PosInf => has_pos_inf = true,
            ExtendedRational::NegInf => has_neg_inf = true,
            ExtendedRational::Finite(v) => {
                finite.insert(v.clone());
            }
        }
        per_scenario.push((s, primal, dual));
    }
    Ok(ValueSummary {
        has_pos_inf,
        has_neg_inf,
        finite_values: finite.into_iter().collect(),
        per_scenario,
    })
}

/// A scenario together with a feasible point of one of its programs.
#[derive(Debug, Clone)]
pub struct FeasibleScenario {
    pub side: Side,
    pub scenario: Scenario,
    pub point: Vec<Rational>,
}

/// Exact search for a scenario with zero duality gap, i.e. with a feasible
/// primal or a feasible dual.
///
/// Endpoint scenarios are tried first. Inequality systems are weakly feasible
/// iff some endpoint scenario is, but equation systems need not be (for
/// `[1, 2] x = 1, x = [7/10, 8/10]` only interior coefficients work), so a
/// side with equations is finished by a lifted program in the products
/// `w_ij = a_ij x_j`, whose solution is turned back into a scenario and
/// re-checked.
pub fn find_weakly_zero(p: &IlpProblem, limits: &Limits) -> Result<Option<FeasibleScenario>> {
    let grid = p.endpoint_selections(limits)?;
    for s in grid.iter() {
        for side in [Side::Primal, Side::Dual] {
            if let Some(point) = p.scenario_lp(side, &s).feasible() {
                return Ok(Some(FeasibleScenario { side, scenario: s, point }));
            }
        }
    }
    match p.form() {
        Form::A => lifted_primal_eqn(p),
        Form::B => lifted_dual_eqn(p),
        Form::C => Ok(None),
    }
}

pub fn oracle_weakly_zero(p: &IlpProblem, limits: &Limits) -> Result<bool> {
    Ok(find_weakly_zero(p, limits)?.is_some())
}

/// Weak feasibility of `sum_j a_ij z_j = r_i` with `a in m`, `r in rhs` and
/// each `z_j` of the given sign, via `w_ij` between the endpoint products.
/// Returns the member matrix, right-hand side and `z`.
fn lifted_eqn(
    m: &IntervalMatrix,
    rhs: &IntervalVector,
    domain: VarDomain,
) -> Option<(Matrix, Vec<Rational>, Vec<Rational>)> {
    let rows = m.rows();
    let cols = m.cols();
    let w_index = |i: usize, j: usize| cols + i * cols + j;
    let total = cols + rows * cols;
    let mut domains = vec![domain; cols];
    domains.extend(std::iter::repeat_n(VarDomain::Free, rows * cols));
    let mut lp = LpProblem::feasibility(domains).ok()?;
    let unit = |pairs: &[(usize, Rational)]| {
        let mut row = vec![Rational::zero(); total];
        for (k, v) in pairs {
            row[*k] += v;
        }
        row
    };
    for i in 0..rows {
        for j in 0..cols {
            let iv: &Interval = m.get(i, j);
            let one = crate::rat(1);
            // w - lo * z and w - hi * z have opposite signs (or vanish).
            let (small, large) = match domain {
                VarDomain::NonPositive => (iv.hi(), iv.lo()),
                _ => (iv.lo(), iv.hi()),
            };
            let lower = unit(&[(w_index(i, j), one.clone()), (j, -small.clone())]);
            let upper = unit(&[(w_index(i, j), one), (j, -large.clone())]);
            lp.add_constraint(lower, Relation::Ge, Rational::zero()).ok()?;
            lp.add_constraint(upper, Relation::Le, Rational::zero()).ok()?;
        }
        let sum: Vec<(usize, Rational)> = (0..cols).map(|j| (w_index(i, j), crate::rat(1))).collect();
        lp.add_constraint(unit(&sum), Relation::Ge, rhs.get(i).lo().clone()).ok()?;
        lp.add_constraint(unit(&sum), Relation::Le, rhs.get(i).hi().clone()).ok()?;
    }
    let sol = lp.feasible()?;
    let z: Vec<Rational> = sol[..cols].to_vec();
    let mut a = m.lower();
    let mut r = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut acc = Rational::zero();
        for j in 0..cols {
            let w = &sol[w_index(i, j)];
            if !z[j].is_zero() {
                a.set(i, j, w / &z[j]);
            }
            acc += w;
        }
        r.push(acc);
    }
    Some((a, r, z))
}

fn verified(p: &IlpProblem, side: Side, s: Scenario, point: Vec<Rational>) -> Result<Option<FeasibleScenario>> {
    let s = p.scenario(s.a, s.b, s.c)?;
    if !p.scenario_lp(side, &s).is_feasible_point(&point) {
        return Err(Error::Inconsistency(
            "lifted feasibility program produced a point that does not solve its scenario".into(),
        ));
    }
    Ok(Some(FeasibleScenario { side, scenario: s, point }))
}

fn lifted_primal_eqn(p: &IlpProblem) -> Result<Option<FeasibleScenario>> {
    let Some((a, b, x)) = lifted_eqn(p.a(), p.b(), VarDomain::NonNegative) else {
        return Ok(None);
    };
    let s = Scenario { a, b, c: p.c().lower() };
    verified(p, Side::Primal, s, x)
}

fn lifted_dual_eqn(p: &IlpProblem) -> Result<Option<FeasibleScenario>> {
    let Some((at, c, y)) = lifted_eqn(&p.a().transpose(), p.c(), VarDomain::NonPositive) else {
        return Ok(None);
    };
    let s = Scenario { a: at.transpose(), b: p.b().lower(), c };
    verified(p, Side::Dual, s, y)
}

/// First scenario on the depth-`depth` grid, in enumeration order, whose
/// primal and dual are both infeasible.
pub fn grid_counterexample_strong(p: &IlpProblem, depth: u32, limits: &Limits) -> Result<Option<Scenario>> {
    let grid = p.grid_selections(depth, limits)?;
    // Primal feasibility depends only on (A, b), dual only on (A, c).
    let primal_axes: Vec<bool> = grid
        .axes()
        .iter()
        .map(|(e, _)| !matches!(e, Entry::C(_)))
        .collect();
    let dual_axes: Vec<bool> = grid
        .axes()
        .iter()
        .map(|(e, _)| !matches!(e, Entry::B(_)))
        .collect();
    let key = |digits: &[usize], mask: &[bool]| -> Vec<usize> {
        digits
            .iter()
            .zip(mask)
            .map(|(&d, &keep)| if keep { d } else { usize::MAX })
            .collect()
    };
    let mut primal_memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut dual_memo: HashMap<Vec<usize>, bool> = HashMap::new();
    for digits in grid.digits() {
        let mut scenario = None;
        let pk = key(&digits, &primal_axes);
        let primal = match primal_memo.get(&pk) {
            Some(&f) => f,
            None => {
                let s = grid.scenario_at(&digits);
                let f = p.scenario_lp(Side::Primal, &s).is_feasible();
                primal_memo.insert(pk, f);
                scenario = Some(s);
                f
            }
        };
        if primal {
            continue;
        }
        let dk = key(&digits, &dual_axes);
        let dual = match dual_memo.get(&dk) {
            Some(&f) => f,
            None => {
                let s = scenario.take().unwrap_or_else(|| grid.scenario_at(&digits));
                let f = p.scenario_lp(Side::Dual, &s).is_feasible();
                dual_memo.insert(dk, f);
                scenario = Some(s);
                f
            }
        };
        if !dual {
            return Ok(Some(scenario.unwrap_or_else(|| grid.scenario_at(&digits))));
        }
    }
    Ok(None)
}

fn point(v: i64) -> Interval {
    Interval::point(crate::rat(v))
}

/// `min c'x + u | Ax <= b, u <= 1`: its dual requires `z = 1, z <= 0` and is
/// never feasible, so the gadget has weakly zero gap iff the core's
/// constraint system is weakly feasible.
pub fn gadget_weak(core: &IlpProblem) -> Result<IlpProblem> {
    if core.form() != Form::B {
        return Err(Error::UnsupportedForm {
            operation: "weak gadget",
            form: core.form().letter(),
        });
    }
    let n = core.n();
    let mut rows = core.a().to_rows();
    for row in &mut rows {
        row.push(point(0));
    }
    let mut last = vec![point(0); n];
    last.push(point(1));
    rows.push(last);
    let b = core.b().concat(&IntervalVector::new(vec![point(1)]));
    let c = core.c().concat(&IntervalVector::new(vec![point(1)]));
    IlpProblem::new(Form::B, IntervalMatrix::from_rows(rows)?, b, c)
}

/// `min c'x + u - 2v | Ax = b, u - v = 0, x, u, v >= 0`: its dual requires
/// `z <= 1, -z <= -2` and is never feasible, so the gadget has strongly zero
/// gap iff the core's constraint system is strongly feasible.
pub fn gadget_strong(core: &IlpProblem) -> Result<IlpProblem> {
    if core.form() != Form::A {
        return Err(Error::UnsupportedForm {
            operation: "strong gadget",
            form: core.form().letter(),
        });
    }
    let n = core.n();
    let mut rows = core.a().to_rows();
    for row in &mut rows {
        row.extend([point(0), point(0)]);
    }
    let mut last = vec![point(0); n];
    last.extend([point(1), point(-1)]);
    rows.push(last);
    let b = core.b().concat(&IntervalVector::new(vec![point(0)]));
    let c = core.c().concat(&IntervalVector::new(vec![point(1), point(-2)]));
    IlpProblem::new(Form::A, IntervalMatrix::from_rows(rows)?, b, c)
}
