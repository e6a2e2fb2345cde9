//! Weak and strong feasibility of interval constraint systems.
//!
//! Three system kinds cover every primal and dual program:
//!
//! * [`SystemKind::Eqn`]: `Ax = b, x >= 0`
//! * [`SystemKind::IneqFree`]: `Ax <= b`
//! * [`SystemKind::IneqNonneg`]: `Ax <= b, x >= 0`
//!
//! A dual program is handled through the normalized problem of
//! [`IlpProblem::normalized`]: with `y = -y'` the dual of form (A) is an
//! `IneqFree` system in `(-A', c)`, the dual of (B) an `Eqn` system and the
//! dual of (C) an `IneqNonneg` system. The `*_side` functions return points
//! and scenarios in these normalized coordinates; [`SideSystem::lift`]
//! converts them back.

use num_traits::{Signed, Zero};

use crate::error::{check_cap, power};
use crate::interval::{orthant_matrix, IntervalMatrix, IntervalVector, Matrix, SignVector};
use crate::lp::{dot, LpProblem, Relation, VarDomain};
use crate::problem::{Form, IlpProblem, Side};
use crate::{Error, Limits, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    Eqn,
    IneqFree,
    IneqNonneg,
}

impl SystemKind {
    pub fn of_form(form: Form) -> SystemKind {
        match form {
            Form::A => SystemKind::Eqn,
            Form::B => SystemKind::IneqFree,
            Form::C => SystemKind::IneqNonneg,
        }
    }

    fn relation(self) -> Relation {
        match self {
            SystemKind::Eqn => Relation::Eq,
            _ => Relation::Le,
        }
    }

    fn domain(self) -> VarDomain {
        match self {
            SystemKind::IneqFree => VarDomain::Free,
            _ => VarDomain::NonNegative,
        }
    }
}

/// A real system `(matrix, rhs)` of a given kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemScenario {
    pub matrix: Matrix,
    pub rhs: Vec<Rational>,
}

impl SystemScenario {
    pub fn lp(&self, kind: SystemKind) -> LpProblem {
        system_lp(kind, &self.matrix, &self.rhs)
    }

    pub fn is_feasible(&self, kind: SystemKind) -> bool {
        self.lp(kind).is_feasible()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasWitness {
    /// Solution of the certificate system.
    pub certificate_point: Vec<Rational>,
    /// The corresponding solution of the interval system's variables.
    pub point: Vec<Rational>,
    /// Sign vector of the orthant that succeeded, when a sweep was used.
    pub sign: Option<SignVector>,
    /// A member system solved by `point`, if one is singled out.
    pub scenario: Option<SystemScenario>,
}

#[derive(Debug, Clone)]
pub struct FeasVerdict {
    pub answer: bool,
    pub witness: Option<FeasWitness>,
    /// The concrete program whose feasibility settled the question (the last
    /// one solved, for sweeps).
    pub certificate: Option<LpProblem>,
    /// For a negative strong answer, a member system that is infeasible.
    pub infeasible_scenario: Option<SystemScenario>,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum StrongFeas {
    Decided(FeasVerdict),
    Unknown { reason: String },
}

impl StrongFeas {
    pub fn answer(&self) -> Option<bool> {
        match self {
            StrongFeas::Decided(v) => Some(v.answer),
            StrongFeas::Unknown { .. } => None,
        }
    }

    pub fn verdict(&self) -> Option<&FeasVerdict> {
        match self {
            StrongFeas::Decided(v) => Some(v),
            StrongFeas::Unknown { .. } => None,
        }
    }
}

/// Feasibility program of `matrix * x (rel) rhs` for the kind.
pub fn system_lp(kind: SystemKind, matrix: &Matrix, rhs: &[Rational]) -> LpProblem {
    let mut lp = LpProblem::feasibility(vec![kind.domain(); matrix.cols()])
        .expect("systems have at least one variable");
    for i in 0..matrix.rows() {
        lp.add_constraint(matrix.row(i).to_vec(), kind.relation(), rhs[i].clone())
            .expect("row length matches");
    }
    lp
}

fn check_dims(a: &IntervalMatrix, b: &IntervalVector) -> Result<()> {
    if a.rows() != b.len() || a.cols() == 0 {
        return Err(Error::Dimension(format!(
            "system matrix is {}x{}, right-hand side has {} entries",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    Ok(())
}

fn found(point: Vec<Rational>, certificate: LpProblem, sign: Option<SignVector>, scenario: Option<SystemScenario>) -> FeasVerdict {
    FeasVerdict {
        answer: true,
        witness: Some(FeasWitness {
            certificate_point: point.clone(),
            point,
            sign,
            scenario,
        }),
        certificate: Some(certificate),
        infeasible_scenario: None,
    }
}

fn not_found(certificate: Option<LpProblem>, infeasible_scenario: Option<SystemScenario>) -> FeasVerdict {
    FeasVerdict {
        answer: false,
        witness: None,
        certificate,
        infeasible_scenario,
    }
}

/// Is the system feasible for at least one member `(A, b)`?
pub fn weak_feasible(kind: SystemKind, a: &IntervalMatrix, b: &IntervalVector, limits: &Limits) -> Result<FeasVerdict> {
    check_dims(a, b)?;
    let lower = a.lower();
    let upper = a.upper();
    let b_hi = b.upper();
    match kind {
        SystemKind::Eqn => {
            // lower * x <= b_hi and upper * x >= b_lo with x >= 0
            let b_lo = b.lower();
            let mut lp = LpProblem::feasibility(vec![VarDomain::NonNegative; a.cols()])?;
            for i in 0..a.rows() {
                lp.add_constraint(lower.row(i).to_vec(), Relation::Le, b_hi[i].clone())?;
            }
            for i in 0..a.rows() {
                lp.add_constraint(upper.row(i).to_vec(), Relation::Ge, b_lo[i].clone())?;
            }
            Ok(match lp.feasible() {
                Some(x) => {
                    let scenario = eqn_member(&lower, &upper, &b_lo, &x);
                    found(x, lp, None, Some(scenario))
                }
                None => not_found(Some(lp), None),
            })
        }
        SystemKind::IneqNonneg => {
            let lp = system_lp(kind, &lower, &b_hi);
            Ok(match lp.feasible() {
                Some(x) => found(x, lp, None, Some(SystemScenario { matrix: lower, rhs: b_hi })),
                None => not_found(Some(lp), None),
            })
        }
        SystemKind::IneqFree => {
            let varying = a.varying_columns();
            check_cap("orthant sweep", power(2, varying.len()), limits.max_enum)?;
            let mut last = None;
            for p in SignVector::sweep(a.cols(), &varying) {
                let m = orthant_matrix(a, &p)?;
                let lp = system_lp(kind, &m, &b_hi);
                if let Some(x) = lp.feasible() {
                    let scenario = SystemScenario { matrix: m, rhs: b_hi };
                    return Ok(found(x, lp, Some(p), Some(scenario)));
                }
                last = Some(lp);
            }
            Ok(not_found(last, None))
        }
    }
}

/// A member of `[lower, upper] x = [b_lo, b_hi]` solved by `x >= 0`, given
/// that `lower x <= b_hi` and `upper x >= b_lo`.
fn eqn_member(lower: &Matrix, upper: &Matrix, b_lo: &[Rational], x: &[Rational]) -> SystemScenario {
    let mut matrix = lower.clone();
    let mut rhs = Vec::with_capacity(lower.rows());
    for i in 0..lower.rows() {
        let lo = dot(lower.row(i), x);
        let hi = dot(upper.row(i), x);
        let v = if lo > b_lo[i] { lo.clone() } else { b_lo[i].clone() };
        let span = &hi - &lo;
        let t = if span.is_zero() { Rational::zero() } else { (&v - &lo) / span };
        for j in 0..lower.cols() {
            let e = lower.get(i, j) + &t * (upper.get(i, j) - lower.get(i, j));
            matrix.set(i, j, e);
        }
        rhs.push(v);
    }
    SystemScenario { matrix, rhs }
}

/// Is the system feasible for every member `(A, b)`?
///
/// Exact for the inequality kinds and for `Eqn` with a real matrix; `Eqn`
/// with a genuine interval matrix is reported as unknown.
pub fn strong_feasible(kind: SystemKind, a: &IntervalMatrix, b: &IntervalVector, limits: &Limits) -> Result<StrongFeas> {
    check_dims(a, b)?;
    let lower = a.lower();
    let upper = a.upper();
    let b_lo = b.lower();
    match kind {
        SystemKind::IneqNonneg => {
            let lp = system_lp(kind, &upper, &b_lo);
            Ok(StrongFeas::Decided(match lp.feasible() {
                Some(x) => found(x, lp, None, None),
                None => {
                    let s = SystemScenario { matrix: upper, rhs: b_lo };
                    not_found(Some(lp), Some(s))
                }
            }))
        }
        SystemKind::IneqFree => {
            // upper * x1 - lower * x2 <= b_lo, x1, x2 >= 0; x = x1 - x2
            let n = a.cols();
            let split = upper.hstack(&lower.neg())?;
            let lp = system_lp(SystemKind::IneqNonneg, &split, &b_lo);
            if let Some(z) = lp.feasible() {
                let x = (0..n).map(|j| &z[j] - &z[n + j]).collect();
                let mut v = found(z, lp, None, None);
                if let Some(w) = v.witness.as_mut() {
                    w.point = x;
                }
                return Ok(StrongFeas::Decided(v));
            }
            let s = ineq_free_counterexample(&lower, &upper, &b_lo)?;
            Ok(StrongFeas::Decided(not_found(Some(lp), Some(s))))
        }
        SystemKind::Eqn => {
            if !a.is_degenerate() {
                return Ok(StrongFeas::Unknown {
                    reason: "strong feasibility of equations with an interval matrix is not decided"
                        .into(),
                });
            }
            let varying = b.varying();
            check_cap("right-hand side vertex sweep", power(2, varying.len()), limits.max_enum)?;
            let mut last: Option<(LpProblem, Vec<Rational>)> = None;
            for p in SignVector::sweep(b.len(), &varying) {
                let rhs = b.vertex(&p);
                let lp = system_lp(kind, &lower, &rhs);
                match lp.feasible() {
                    Some(x) => last = Some((lp, x)),
                    None => {
                        let s = SystemScenario { matrix: lower, rhs };
                        return Ok(StrongFeas::Decided(not_found(Some(lp), Some(s))));
                    }
                }
            }
            let (lp, x) = last.expect("a sweep visits at least one vertex");
            Ok(StrongFeas::Decided(found(x, lp, None, None)))
        }
    }
}

/// Builds an infeasible member of `Ax <= b` from a Farkas certificate
/// `y >= 0, upper'y >= 0, lower'y <= 0, b_lo'y < 0`: each column is moved
/// inside its interval until `A'y = 0`, so `Ax <= b_lo` has no solution.
fn ineq_free_counterexample(lower: &Matrix, upper: &Matrix, b_lo: &[Rational]) -> Result<SystemScenario> {
    let m = lower.rows();
    let n = lower.cols();
    let mut farkas = LpProblem::feasibility(vec![VarDomain::NonNegative; m])?;
    for j in 0..n {
        farkas.add_constraint(upper.column(j), Relation::Ge, Rational::zero())?;
        farkas.add_constraint(lower.column(j), Relation::Le, Rational::zero())?;
    }
    farkas.add_constraint(b_lo.to_vec(), Relation::Le, crate::rat(-1))?;
    let y = farkas.feasible().ok_or_else(|| {
        Error::Inconsistency("strong feasibility test and its Farkas alternative both failed".into())
    })?;
    let mut matrix = lower.clone();
    for j in 0..n {
        let lo = dot(&lower.column(j), &y);
        let hi = dot(&upper.column(j), &y);
        let span = &hi - &lo;
        let t = if span.is_zero() { Rational::zero() } else { -lo / span };
        for i in 0..m {
            let e = lower.get(i, j) + &t * (upper.get(i, j) - lower.get(i, j));
            matrix.set(i, j, e);
        }
    }
    debug_assert!((0..n).all(|j| dot(&matrix.column(j), &y).is_zero()));
    debug_assert!(dot(b_lo, &y).is_negative());
    Ok(SystemScenario {
        matrix,
        rhs: b_lo.to_vec(),
    })
}

/// The constraint system of one side of a problem, in normalized form.
#[derive(Debug, Clone)]
pub struct SideSystem {
    pub side: Side,
    pub kind: SystemKind,
    pub matrix: IntervalMatrix,
    pub rhs: IntervalVector,
}

impl SideSystem {
    /// Primal: `(A, b)` of the problem's own kind. Dual: `(-A', c)` of the
    /// dual form's kind, in the variable `y' = -y`.
    pub fn of(p: &IlpProblem, side: Side) -> SideSystem {
        let p = p.primal_oriented();
        match side {
            Side::Primal => SideSystem {
                side,
                kind: SystemKind::of_form(p.form()),
                matrix: p.a().clone(),
                rhs: p.b().clone(),
            },
            Side::Dual => {
                let n = p.dualize().normalized();
                SideSystem {
                    side,
                    kind: SystemKind::of_form(n.form()),
                    matrix: n.a().clone(),
                    rhs: n.b().clone(),
                }
            }
        }
    }

    pub fn weak(&self, limits: &Limits) -> Result<FeasVerdict> {
        weak_feasible(self.kind, &self.matrix, &self.rhs, limits)
    }

    pub fn strong(&self, limits: &Limits) -> Result<StrongFeas> {
        strong_feasible(self.kind, &self.matrix, &self.rhs, limits)
    }

    /// Converts a member system and its solution back to the problem's own
    /// coordinates: the constraint matrix `A`, the side's right-hand side
    /// (`b` or `c`) and the point (`x` or `y`).
    pub fn lift(&self, s: &SystemScenario, point: Option<&[Rational]>) -> (Matrix, Vec<Rational>, Option<Vec<Rational>>) {
        match self.side {
            Side::Primal => (s.matrix.clone(), s.rhs.clone(), point.map(<[_]>::to_vec)),
            Side::Dual => (
                s.matrix.transpose().neg(),
                s.rhs.clone(),
                point.map(|y| y.iter().map(|v| -v.clone()).collect()),
            ),
        }
    }
}

/// Weak feasibility of one side's constraint system.
pub fn weak_feasible_side(p: &IlpProblem, side: Side, limits: &Limits) -> Result<FeasVerdict> {
    SideSystem::of(p, side).weak(limits)
}

/// Strong feasibility of one side's constraint system.
pub fn strong_feasible_side(p: &IlpProblem, side: Side, limits: &Limits) -> Result<StrongFeas> {
    SideSystem::of(p, side).strong(limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::{rat, Scenario};

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(rat(lo), rat(hi)).unwrap()
    }

    fn pt(v: i64) -> Interval {
        Interval::point(rat(v))
    }

    fn mat(rows: Vec<Vec<Interval>>) -> IntervalMatrix {
        IntervalMatrix::from_rows(rows).unwrap()
    }

    fn vecv(v: Vec<Interval>) -> IntervalVector {
        IntervalVector::new(v)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn eqn_infeasible_everywhere() {
        let a = mat(vec![vec![pt(1), pt(-1)], vec![pt(1), pt(-1)]]);
        let b = vecv(vec![pt(0), pt(1)]);
        assert!(!weak_feasible(SystemKind::Eqn, &a, &b, &lim()).unwrap().answer);
    }

    #[test]
    fn ineq_free_orthant_witness() {
        let a = mat(vec![vec![iv(0, 1)]]);
        let b = vecv(vec![iv(-1, 1)]);
        let v = weak_feasible(SystemKind::IneqFree, &a, &b, &lim()).unwrap();
        assert!(v.answer);
        let w = v.witness.unwrap();
        assert_eq!(w.sign.unwrap().to_ints(), vec![1]);
        let s = w.scenario.unwrap();
        assert_eq!(s.matrix.get(0, 0), &rat(0));
        assert_eq!(s.rhs, vec![rat(1)]);
        assert!(s.lp(SystemKind::IneqFree).is_feasible_point(&w.point));
    }

    #[test]
    fn ineq_nonneg_weakly_infeasible() {
        let a = mat(vec![vec![pt(1)]]);
        let b = vecv(vec![iv(-2, -1)]);
        assert!(!weak_feasible(SystemKind::IneqNonneg, &a, &b, &lim()).unwrap().answer);
    }

    #[test]
    fn ineq_nonneg_not_strongly_feasible() {
        let a = mat(vec![vec![iv(0, 1)]]);
        let b = vecv(vec![iv(-1, 1)]);
        let v = strong_feasible(SystemKind::IneqNonneg, &a, &b, &lim()).unwrap();
        let v = v.verdict().unwrap();
        assert!(!v.answer);
        let s = v.infeasible_scenario.as_ref().unwrap();
        assert!(!s.is_feasible(SystemKind::IneqNonneg));
    }

    #[test]
    fn eqn_degenerate_vertex_sweep() {
        let a = mat(vec![vec![pt(1)]]);
        let b = vecv(vec![iv(1, 2)]);
        let v = strong_feasible(SystemKind::Eqn, &a, &b, &lim()).unwrap();
        assert_eq!(v.answer(), Some(true));

        let zero = mat(vec![vec![pt(0)]]);
        let v = strong_feasible(SystemKind::Eqn, &zero, &b, &lim()).unwrap();
        let v = v.verdict().unwrap();
        assert!(!v.answer);
        assert_eq!(v.infeasible_scenario.as_ref().unwrap().rhs, vec![rat(2)]);
    }

    #[test]
    fn eqn_interval_matrix_is_unknown() {
        let a = mat(vec![vec![iv(-1, 1), pt(-1)]]);
        let b = vecv(vec![pt(1)]);
        assert!(matches!(
            strong_feasible(SystemKind::Eqn, &a, &b, &lim()).unwrap(),
            StrongFeas::Unknown { .. }
        ));
    }

    #[test]
    fn ineq_free_strong_and_farkas_counterexample() {
        // x <= [1, 2] with coefficient [1, 2]: x = 0 works for every member.
        let a = mat(vec![vec![iv(1, 2)]]);
        let b = vecv(vec![iv(1, 2)]);
        let v = strong_feasible(SystemKind::IneqFree, &a, &b, &lim()).unwrap();
        assert_eq!(v.answer(), Some(true));

        // [-1, 1] x <= -1 fails when the coefficient is 0.
        let a = mat(vec![vec![iv(-1, 1)]]);
        let b = vecv(vec![pt(-1)]);
        let v = strong_feasible(SystemKind::IneqFree, &a, &b, &lim()).unwrap();
        let v = v.verdict().unwrap();
        assert!(!v.answer);
        let s = v.infeasible_scenario.as_ref().unwrap();
        assert!(a.contains(&s.matrix));
        assert!(b.contains(&s.rhs));
        assert!(!s.is_feasible(SystemKind::IneqFree));

        // two rows, x <= -1 and [-2, 1] x <= ...
        let a = mat(vec![vec![pt(1)], vec![iv(-2, 1)]]);
        let b = vecv(vec![pt(-1), pt(0)]);
        let v = strong_feasible(SystemKind::IneqFree, &a, &b, &lim()).unwrap();
        let v = v.verdict().unwrap();
        assert!(!v.answer);
        let s = v.infeasible_scenario.as_ref().unwrap();
        assert!(a.contains(&s.matrix));
        assert!(!s.is_feasible(SystemKind::IneqFree));
    }

    #[test]
    fn eqn_weak_member_is_interior_when_needed() {
        // [1, 2] x = 1 and x = [7/10, 8/10]: only an interior coefficient works.
        let a = mat(vec![vec![iv(1, 2)], vec![pt(1)]]);
        let b = IntervalVector::new(vec![
            pt(1),
            Interval::new(crate::ratio(7, 10), crate::ratio(8, 10)).unwrap(),
        ]);
        let v = weak_feasible(SystemKind::Eqn, &a, &b, &lim()).unwrap();
        assert!(v.answer);
        let w = v.witness.unwrap();
        let s = w.scenario.unwrap();
        assert!(a.contains(&s.matrix));
        assert!(b.contains(&s.rhs));
        assert!(s.lp(SystemKind::Eqn).is_feasible_point(&w.point));
    }

    #[test]
    fn dual_side_lifts_back_to_the_problem() {
        // form (C): x1 <= [-1, 0], -x2 <= -1; dual y1 <= 1, -y2 <= c2, y <= 0
        let p = IlpProblem::new(
            Form::C,
            mat(vec![vec![pt(1), pt(0)], vec![pt(0), pt(-1)]]),
            vecv(vec![iv(-1, 0), pt(-1)]),
            vecv(vec![pt(1), iv(-1, 1)]),
        )
        .unwrap();
        let sys = SideSystem::of(&p, Side::Dual);
        assert_eq!(sys.kind, SystemKind::IneqNonneg);
        let v = sys.weak(&lim()).unwrap();
        assert!(v.answer);
        let w = v.witness.unwrap();
        let (a, c, y) = sys.lift(w.scenario.as_ref().unwrap(), Some(&w.point));
        let s = Scenario { a, b: p.b().lower(), c };
        let lp = p.scenario_lp(Side::Dual, &s);
        assert!(lp.is_feasible_point(&y.unwrap()));
    }
}
