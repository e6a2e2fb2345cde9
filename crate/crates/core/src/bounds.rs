//! Best and worst optimal values and their dual-side formulas.
//!
//! For a primal problem, `f_lo` and `f_hi` are the infimum and supremum of
//! the optimal values over all scenarios (`+inf` for an infeasible
//! scenario, `-inf` for an unbounded one). For form (A) the lower bound
//! equals a single dual program iff the primal is weakly feasible or the
//! dual strongly feasible, and the upper bound equals `g_hi`, the maximum
//! of `max_b b'y` over weakly dual-feasible `y`, iff the gap is strongly
//! zero or `g_hi = +inf`.

use crate::duality_gap::{strongly_zero, StrongOptions, ThreeValued};
use crate::error::{check_cap, power};
use crate::feasibility::weak_feasible_side;
use crate::interval::SignVector;
use crate::lp::{LpProblem, Relation, Sense, VarDomain};
use crate::problem::{Form, IlpProblem, Orientation, Scenario, Side};
use crate::{Error, ExtendedRational, Limits, Result};

fn require(p: &IlpProblem, operation: &'static str, forms: &[Form]) -> Result<()> {
    if p.orientation() == Orientation::Dual {
        return Err(Error::DualOrientation(operation));
    }
    if !forms.contains(&p.form()) {
        return Err(Error::UnsupportedForm {
            operation,
            form: p.form().letter(),
        });
    }
    Ok(())
}

fn primal_value(p: &IlpProblem, s: &Scenario) -> ExtendedRational {
    p.scenario_lp(Side::Primal, s).solve().value
}

/// Program of the best value of form (A): `min c_lo'x | A_lo x <= b_hi,
/// A_hi x >= b_lo, x >= 0`.
fn best_value_lp(p: &IlpProblem) -> LpProblem {
    let lower = p.a().lower();
    let upper = p.a().upper();
    let b_lo = p.b().lower();
    let b_hi = p.b().upper();
    let mut lp = LpProblem::new(Sense::Minimize, p.c().lower(), vec![VarDomain::NonNegative; p.n()])
        .expect("problems have at least one column");
    for i in 0..p.m() {
        lp.add_constraint(lower.row(i).to_vec(), Relation::Le, b_hi[i].clone())
            .expect("row length matches");
        lp.add_constraint(upper.row(i).to_vec(), Relation::Ge, b_lo[i].clone())
            .expect("row length matches");
    }
    lp
}

/// The best optimal value `f_lo` (forms (A) and (C)).
pub fn best_value(p: &IlpProblem) -> Result<ExtendedRational> {
    require(p, "best value", &[Form::A, Form::C])?;
    Ok(match p.form() {
        Form::A => best_value_lp(p).solve().value,
        _ => {
            let s = Scenario {
                a: p.a().lower(),
                b: p.b().upper(),
                c: p.c().lower(),
            };
            primal_value(p, &s)
        }
    })
}

/// Rows whose matrix entries or right-hand side vary.
fn varying_rows(p: &IlpProblem) -> Vec<usize> {
    (0..p.m())
        .filter(|&i| !p.b().get(i).is_degenerate() || (0..p.n()).any(|j| !p.a().get(i, j).is_degenerate()))
        .collect()
}

/// The row-orthant scenario `(A_c - diag(q) dA, b_c + diag(q) db, c_hi)`.
fn row_orthant_scenario(p: &IlpProblem, q: &SignVector) -> Scenario {
    let mut a = p.a().lower();
    let upper = p.a().upper();
    for i in 0..p.m() {
        if q.get(i) == crate::Sign::Minus {
            for j in 0..p.n() {
                a.set(i, j, upper.get(i, j).clone());
            }
        }
    }
    Scenario {
        a,
        b: p.b().vertex(q),
        c: p.c().upper(),
    }
}

/// The worst optimal value `f_hi` (forms (A) and (C)).
///
/// Form (C) is monotone in every datum, so `f_hi` is the value of
/// `(A_hi, b_lo, c_hi)`. Form (A) uses the maximum over the `2^m` row-sign
/// scenarios `(A_c - diag(q) dA, b_c + diag(q) db, c_hi)`; each of them is
/// a scenario, so this never exceeds the true supremum.
/// [`worst_value_validated`] compares it with a grid search.
pub fn worst_value(p: &IlpProblem, limits: &Limits) -> Result<ExtendedRational> {
    require(p, "worst value", &[Form::A, Form::C])?;
    match p.form() {
        Form::A => {
            let rows = varying_rows(p);
            check_cap("row orthant sweep", power(2, rows.len()), limits.max_enum)?;
            let mut best = ExtendedRational::NegInf;
            for q in SignVector::sweep(p.m(), &rows) {
                let v = primal_value(p, &row_orthant_scenario(p, &q));
                if v.is_pos_inf() {
                    return Ok(v);
                }
                best = best.max(v);
            }
            Ok(best)
        }
        _ => {
            let s = Scenario {
                a: p.a().upper(),
                b: p.b().lower(),
                c: p.c().upper(),
            };
            Ok(primal_value(p, &s))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstValue {
    pub value: ExtendedRational,
    pub formula: ExtendedRational,
    /// Largest primal value on the grid.
    pub grid: ExtendedRational,
    /// Set when the grid beat the formula; `value` is then only a lower
    /// estimate of the supremum.
    pub approximate: bool,
}

/// [`worst_value`] checked against every scenario of the depth-`depth` grid.
pub fn worst_value_validated(p: &IlpProblem, depth: u32, limits: &Limits) -> Result<WorstValue> {
    let formula = worst_value(p, limits)?;
    let grid_points = p.grid_selections(depth, limits)?;
    let mut grid = ExtendedRational::NegInf;
    for s in grid_points.iter() {
        let v = primal_value(p, &s);
        let top = v.is_pos_inf();
        grid = grid.max(v);
        if top {
            break;
        }
    }
    let approximate = grid > formula;
    Ok(WorstValue {
        value: formula.clone().max(grid.clone()),
        formula,
        grid,
        approximate,
    })
}

/// The dual of the best-value program of form (A):
/// `max b_hi'y1 - b_lo'y2 | A_lo'y1 - A_hi'y2 <= c_lo, y1, y2 <= 0`.
pub fn rhs_lower_lp(p: &IlpProblem) -> Result<LpProblem> {
    require(p, "lower dual formula", &[Form::A])?;
    let m = p.m();
    let lower = p.a().lower();
    let upper = p.a().upper();
    let mut objective = p.b().upper();
    objective.extend(p.b().lower().into_iter().map(|v| -v));
    let mut lp = LpProblem::new(Sense::Maximize, objective, vec![VarDomain::NonPositive; 2 * m])?;
    let c_lo = p.c().lower();
    for j in 0..p.n() {
        let mut row = lower.column(j);
        row.extend(upper.column(j).into_iter().map(|v| -v));
        lp.add_constraint(row, Relation::Le, c_lo[j].clone())?;
    }
    Ok(lp)
}

pub fn rhs_lower(p: &IlpProblem) -> Result<ExtendedRational> {
    Ok(rhs_lower_lp(p)?.solve().value)
}

/// `g_hi` for form (A): the supremum of `b'y` over `b` in its box and `y`
/// with `A'y <= c` for some `A`, `c`.
///
/// Within a sign orthant `diag(q) y >= 0` the best `b` is `b_c + diag(q) db`
/// and the loosest constraint is `(A_c - diag(q) dA)'y <= c_hi`, so each
/// orthant is one program. Rows with no varying data leave `y_i` free.
pub fn rhs_upper(p: &IlpProblem, limits: &Limits) -> Result<ExtendedRational> {
    require(p, "upper dual formula", &[Form::A])?;
    let rows = varying_rows(p);
    check_cap("dual sign orthant sweep", power(2, rows.len()), limits.max_enum)?;
    let c_hi = p.c().upper();
    let mut best = ExtendedRational::NegInf;
    for q in SignVector::sweep(p.m(), &rows) {
        let s = row_orthant_scenario(p, &q);
        let domains = (0..p.m())
            .map(|i| {
                if !rows.contains(&i) {
                    VarDomain::Free
                } else if q.get(i) == crate::Sign::Plus {
                    VarDomain::NonNegative
                } else {
                    VarDomain::NonPositive
                }
            })
            .collect();
        let mut lp = LpProblem::new(Sense::Maximize, s.b.clone(), domains)?;
        for j in 0..p.n() {
            lp.add_constraint(s.a.column(j), Relation::Le, c_hi[j].clone())?;
        }
        let v = lp.solve().value;
        if v.is_pos_inf() {
            return Ok(v);
        }
        best = best.max(v);
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerCheck {
    pub f_lower: ExtendedRational,
    pub rhs_lower: ExtendedRational,
    pub primal_weakly_feasible: bool,
    /// Decided by feasibility of the program behind `rhs_lower`.
    pub dual_strongly_feasible: bool,
    pub valid: bool,
}

/// The lower formula `f_lo = rhs_lower` and its validity condition.
pub fn check_thm_lower(p: &IlpProblem, limits: &Limits) -> Result<LowerCheck> {
    require(p, "lower formula check", &[Form::A])?;
    let f_lower = best_value(p)?;
    let lp = rhs_lower_lp(p)?;
    let out = lp.solve();
    let primal_weakly_feasible = weak_feasible_side(p, Side::Primal, limits)?.answer;
    let dual_strongly_feasible = out.is_feasible();
    let valid = primal_weakly_feasible || dual_strongly_feasible;
    if valid != (f_lower == out.value) {
        return Err(Error::Inconsistency(format!(
            "lower formula validity {valid} disagrees with f_lo = {f_lower}, rhs = {}",
            out.value
        )));
    }
    Ok(LowerCheck {
        f_lower,
        rhs_lower: out.value,
        primal_weakly_feasible,
        dual_strongly_feasible,
        valid,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperCheck {
    /// `None` when the sweep behind it exceeded the cap.
    pub f_upper: Option<ExtendedRational>,
    pub rhs_upper: ExtendedRational,
    pub strongly_zero: ThreeValued,
    pub valid: ThreeValued,
}

/// The upper formula `f_hi = g_hi`: valid iff the gap is strongly zero or
/// `g_hi = +inf`.
pub fn check_thm_upper(p: &IlpProblem, options: &StrongOptions, limits: &Limits) -> Result<UpperCheck> {
    require(p, "upper formula check", &[Form::A])?;
    let rhs_upper = rhs_upper(p, limits)?;
    let sz = strongly_zero(p, options, limits)?.verdict;
    let f_upper = match worst_value(p, limits) {
        Ok(v) => Some(v),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let valid = if sz == ThreeValued::Yes || rhs_upper.is_pos_inf() {
        ThreeValued::Yes
    } else if sz == ThreeValued::No {
        ThreeValued::No
    } else {
        ThreeValued::Unknown
    };
    if let Some(f) = &f_upper {
        let equal = *f == rhs_upper;
        let contradicts = (valid == ThreeValued::Yes && !equal) || (valid == ThreeValued::No && equal);
        if contradicts {
            return Err(Error::Inconsistency(format!(
                "upper formula validity {valid} disagrees with f_hi = {f}, g_hi = {rhs_upper}"
            )));
        }
    }
    Ok(UpperCheck {
        f_upper,
        rhs_upper,
        strongly_zero: sz,
        valid,
    })
}

/// Everything the bounds command reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub f_lower: ExtendedRational,
    pub f_upper: Option<ExtendedRational>,
    pub lower: LowerCheck,
    pub upper: UpperCheck,
    /// Set when the formula checks ran on the slack form of a (C) problem.
    pub via_slack_form: bool,
}

/// Bounds of a form (A) or (C) problem. A form (C) problem's formula
/// checks run on its slack form, which has the same scenarios' values.
pub fn bounds_report(p: &IlpProblem, options: &StrongOptions, limits: &Limits) -> Result<BoundsReport> {
    require(p, "bounds", &[Form::A, Form::C])?;
    let f_lower = best_value(p)?;
    let f_upper = worst_value(p, limits)?;
    let a_form = p.to_form_a()?;
    let lower = check_thm_lower(&a_form, limits)?;
    let upper = check_thm_upper(&a_form, options, limits)?;
    if p.form() == Form::C && lower.f_lower != f_lower {
        return Err(Error::Inconsistency(format!(
            "slack form best value {} differs from {f_lower}",
            lower.f_lower
        )));
    }
    Ok(BoundsReport {
        f_lower,
        f_upper: Some(f_upper),
        lower,
        upper,
        via_slack_form: p.form() == Form::C,
    })
}
