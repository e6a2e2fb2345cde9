//! Weakly and strongly zero duality gap.
//!
//! A scenario has zero duality gap iff its primal or its dual is feasible.
//! So the gap is weakly zero iff one side is weakly feasible, which is
//! decided exactly. Strongly zero gap is decided exactly when `A` is a real
//! matrix: it holds iff one side is strongly feasible. For interval `A`
//! the decision runs through a ladder of sufficient and necessary
//! conditions and a grid refuter, and may end in [`ThreeValued::Unknown`].

use std::fmt;

use crate::feasibility::{FeasVerdict, SideSystem, StrongFeas, SystemScenario};
use crate::interval::{IntervalVector, Matrix, SignVector};
use crate::oracle::grid_counterexample_strong;
use crate::problem::{Form, IlpProblem, Orientation, Scenario, Side};
use crate::{Error, Limits, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThreeValued {
    Yes,
    No,
    Unknown,
}

impl ThreeValued {
    pub fn or(self, other: ThreeValued) -> ThreeValued {
        use ThreeValued::*;
        match (self, other) {
            (Yes, _) | (_, Yes) => Yes,
            (No, No) => No,
            _ => Unknown,
        }
    }

    pub fn and(self, other: ThreeValued) -> ThreeValued {
        use ThreeValued::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Yes, Yes) => Yes,
            _ => Unknown,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            ThreeValued::Yes => Some(true),
            ThreeValued::No => Some(false),
            ThreeValued::Unknown => None,
        }
    }
}

impl From<bool> for ThreeValued {
    fn from(b: bool) -> Self {
        if b {
            ThreeValued::Yes
        } else {
            ThreeValued::No
        }
    }
}

impl From<Option<bool>> for ThreeValued {
    fn from(b: Option<bool>) -> Self {
        b.map_or(ThreeValued::Unknown, ThreeValued::from)
    }
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreeValued::Yes => "Yes",
            ThreeValued::No => "No",
            ThreeValued::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Weak,
    Strong,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        })
    }
}

/// The clause that settled a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    PrimalWeaklyFeasible,
    DualWeaklyFeasible,
    NeitherWeaklyFeasible,
    RealMatrixPrimalStrong,
    RealMatrixDualStrong,
    RealMatrixNeitherStrong,
    SufficientPrimalStrong,
    SufficientDualStrong,
    /// Primal weakly feasible or dual strongly feasible: failed.
    NecessaryFirst,
    /// Primal strongly feasible or dual weakly feasible: failed.
    NecessarySecond,
    GridCounterexample,
    Undecided,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::PrimalWeaklyFeasible => "weak/primal-weakly-feasible",
            Condition::DualWeaklyFeasible => "weak/dual-weakly-feasible",
            Condition::NeitherWeaklyFeasible => "weak/neither-weakly-feasible",
            Condition::RealMatrixPrimalStrong => "strong/real-matrix/primal-strongly-feasible",
            Condition::RealMatrixDualStrong => "strong/real-matrix/dual-strongly-feasible",
            Condition::RealMatrixNeitherStrong => "strong/real-matrix/neither-strongly-feasible",
            Condition::SufficientPrimalStrong => "strong/sufficient/primal-strongly-feasible",
            Condition::SufficientDualStrong => "strong/sufficient/dual-strongly-feasible",
            Condition::NecessaryFirst => "strong/necessary/primal-weak-or-dual-strong-fails",
            Condition::NecessarySecond => "strong/necessary/primal-strong-or-dual-weak-fails",
            Condition::GridCounterexample => "strong/grid-counterexample",
            Condition::Undecided => "strong/undecided",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionNote {
    pub clause: String,
    pub outcome: ThreeValued,
}

fn note(clause: impl Into<String>, outcome: impl Into<ThreeValued>) -> ConditionNote {
    ConditionNote {
        clause: clause.into(),
        outcome: outcome.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DgWitness {
    /// A member of one side's constraint system with a solution: `a` is the
    /// constraint matrix `A` of the problem, `rhs` is `b` (primal) or `c`
    /// (dual), `point` is `x` or `y`.
    Feasible {
        side: Side,
        sign: Option<SignVector>,
        a: Matrix,
        rhs: Vec<Rational>,
        point: Vec<Rational>,
    },
    /// A scenario whose primal and dual are both infeasible.
    Counterexample(Scenario),
}

#[derive(Debug, Clone)]
pub struct DgReport {
    pub verdict: ThreeValued,
    pub mode: Mode,
    pub fired_condition: Condition,
    pub witness: Option<DgWitness>,
    pub notes: Vec<ConditionNote>,
}

/// Options for [`strongly_zero`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrongOptions {
    /// Depth of the grid refuter run when the conditions are inconclusive;
    /// `None` disables it. Depth `d` samples `2^d + 1` points per interval.
    pub grid_depth: Option<u32>,
}

impl Default for StrongOptions {
    fn default() -> Self {
        StrongOptions { grid_depth: Some(1) }
    }
}

fn side_label(side: Side) -> &'static str {
    match side {
        Side::Primal => "primal",
        Side::Dual => "dual",
    }
}

fn weak_witness(sys: &SideSystem, v: &FeasVerdict) -> Option<DgWitness> {
    let w = v.witness.as_ref()?;
    let s = w.scenario.as_ref()?;
    let (a, rhs, point) = sys.lift(s, Some(&w.point));
    Some(DgWitness::Feasible {
        side: sys.side,
        sign: w.sign.clone(),
        a,
        rhs,
        point: point.unwrap_or_default(),
    })
}

/// Exact: is some scenario's duality gap zero?
///
/// The gap is symmetric in primal and dual, so the orientation of `p` is
/// irrelevant.
pub fn weakly_zero(p: &IlpProblem, limits: &Limits) -> Result<DgReport> {
    // The primal of form (B) needs an orthant sweep; try the one-LP side first.
    let order = if p.form() == Form::B {
        [Side::Dual, Side::Primal]
    } else {
        [Side::Primal, Side::Dual]
    };
    let mut notes = Vec::new();
    for side in order {
        let sys = SideSystem::of(p, side);
        let v = sys.weak(limits)?;
        notes.push(note(format!("{} weakly feasible", side_label(side)), v.answer));
        if v.answer {
            let fired = match side {
                Side::Primal => Condition::PrimalWeaklyFeasible,
                Side::Dual => Condition::DualWeaklyFeasible,
            };
            return Ok(DgReport {
                verdict: ThreeValued::Yes,
                mode: Mode::Weak,
                fired_condition: fired,
                witness: weak_witness(&sys, &v),
                notes,
            });
        }
    }
    Ok(DgReport {
        verdict: ThreeValued::No,
        mode: Mode::Weak,
        fired_condition: Condition::NeitherWeaklyFeasible,
        witness: None,
        notes,
    })
}

/// A scenario for `(A, b)` / `(A, c)` coming from one side's member system.
fn lifted(sys: &SideSystem, s: &SystemScenario) -> (Matrix, Vec<Rational>) {
    let (a, rhs, _) = sys.lift(s, None);
    (a, rhs)
}

fn confirmed_counterexample(p: &IlpProblem, s: Scenario) -> Result<DgWitness> {
    let s = p.scenario(s.a, s.b, s.c)?;
    if p.scenario_lp(Side::Primal, &s).is_feasible() || p.scenario_lp(Side::Dual, &s).is_feasible() {
        return Err(Error::Inconsistency(format!(
            "claimed counterexample has a feasible side: {s}"
        )));
    }
    Ok(DgWitness::Counterexample(s))
}

/// Outcome of the polynomial necessary conditions for strongly zero gap.
#[derive(Debug, Clone)]
pub struct NecessaryReport {
    /// Primal weakly feasible or dual strongly feasible.
    pub first: ThreeValued,
    /// Primal strongly feasible or dual weakly feasible.
    pub second: ThreeValued,
    pub notes: Vec<ConditionNote>,
}

impl NecessaryReport {
    pub fn holds(&self) -> ThreeValued {
        self.first.and(self.second)
    }
}

/// Evaluated sub-conditions, computed once and shared by the ladder.
struct Facts {
    primal: SideSystem,
    dual: SideSystem,
    primal_strong: StrongFeas,
    dual_strong: StrongFeas,
    primal_weak: Option<bool>,
    dual_weak: Option<bool>,
}

impl Facts {
    fn strong(p: &IlpProblem, limits: &Limits) -> Result<Facts> {
        let primal = SideSystem::of(p, Side::Primal);
        let dual = SideSystem::of(p, Side::Dual);
        let primal_strong = primal.strong(limits)?;
        let dual_strong = dual.strong(limits)?;
        Ok(Facts {
            primal,
            dual,
            primal_strong,
            dual_strong,
            primal_weak: None,
            dual_weak: None,
        })
    }

    fn weak(&mut self, limits: &Limits) -> Result<()> {
        if self.primal_weak.is_none() {
            self.primal_weak = Some(self.primal.weak(limits)?.answer);
        }
        if self.dual_weak.is_none() {
            self.dual_weak = Some(self.dual.weak(limits)?.answer);
        }
        Ok(())
    }

    fn necessary(&self) -> NecessaryReport {
        let pw = ThreeValued::from(self.primal_weak);
        let dw = ThreeValued::from(self.dual_weak);
        let ps = ThreeValued::from(self.primal_strong.answer());
        let ds = ThreeValued::from(self.dual_strong.answer());
        let first = pw.or(ds);
        let second = ps.or(dw);
        NecessaryReport {
            first,
            second,
            notes: vec![
                note("primal weakly feasible", pw),
                note("dual weakly feasible", dw),
                note("primal weakly feasible or dual strongly feasible", first),
                note("primal strongly feasible or dual weakly feasible", second),
            ],
        }
    }

    fn strong_notes(&self) -> Vec<ConditionNote> {
        let mut notes = Vec::new();
        for (label, s) in [("primal", &self.primal_strong), ("dual", &self.dual_strong)] {
            let clause = match s {
                StrongFeas::Unknown { reason } => format!("{label} strongly feasible ({reason})"),
                StrongFeas::Decided(_) => format!("{label} strongly feasible"),
            };
            notes.push(note(clause, s.answer()));
        }
        notes
    }

    fn infeasible_member(s: &StrongFeas) -> Option<&SystemScenario> {
        s.verdict().and_then(|v| v.infeasible_scenario.as_ref())
    }

    fn missing(what: &str) -> Error {
        Error::Inconsistency(format!("negative strong answer without an infeasible member ({what})"))
    }
}

/// Evaluates both necessary conditions. Each is three-valued because dual
/// strong feasibility of form (B) and primal strong feasibility of form (A)
/// are undecided for interval matrices.
pub fn necessary_strong(p: &IlpProblem, limits: &Limits) -> Result<NecessaryReport> {
    let mut facts = Facts::strong(p, limits)?;
    facts.weak(limits)?;
    let mut report = facts.necessary();
    let mut notes = facts.strong_notes();
    notes.append(&mut report.notes);
    report.notes = notes;
    Ok(report)
}

/// Does every scenario have zero duality gap?
pub fn strongly_zero(p: &IlpProblem, options: &StrongOptions, limits: &Limits) -> Result<DgReport> {
    let mut facts = Facts::strong(p, limits)?;
    let mut notes = facts.strong_notes();
    let ps = ThreeValued::from(facts.primal_strong.answer());
    let ds = ThreeValued::from(facts.dual_strong.answer());
    let report = |verdict, fired, witness, notes| DgReport {
        verdict,
        mode: Mode::Strong,
        fired_condition: fired,
        witness,
        notes,
    };

    if p.is_degenerate_matrix() {
        if ps == ThreeValued::Yes {
            return Ok(report(ThreeValued::Yes, Condition::RealMatrixPrimalStrong, None, notes));
        }
        if ds == ThreeValued::Yes {
            return Ok(report(ThreeValued::Yes, Condition::RealMatrixDualStrong, None, notes));
        }
        let bs = Facts::infeasible_member(&facts.primal_strong).ok_or_else(|| Facts::missing("primal"))?;
        let cs = Facts::infeasible_member(&facts.dual_strong).ok_or_else(|| Facts::missing("dual"))?;
        let (a, b) = lifted(&facts.primal, bs);
        let (_, c) = lifted(&facts.dual, cs);
        let witness = confirmed_counterexample(p, Scenario { a, b, c })?;
        return Ok(report(
            ThreeValued::No,
            Condition::RealMatrixNeitherStrong,
            Some(witness),
            notes,
        ));
    }

    let sufficient = ps.or(ds);
    let weak_result = facts.weak(limits);
    match weak_result {
        Ok(()) => {
            let mut necessary = facts.necessary();
            notes.append(&mut necessary.notes);
            if sufficient == ThreeValued::Yes && necessary.holds() == ThreeValued::No {
                return Err(Error::Inconsistency(
                    "a sufficient condition holds while a necessary condition fails".into(),
                ));
            }
            if sufficient != ThreeValued::Yes {
                if necessary.first == ThreeValued::No {
                    // Every primal is infeasible; take a dual-infeasible member.
                    let cs = Facts::infeasible_member(&facts.dual_strong)
                        .ok_or_else(|| Facts::missing("dual"))?;
                    let (a, c) = lifted(&facts.dual, cs);
                    let s = Scenario { a, b: p.b().lower(), c };
                    let witness = confirmed_counterexample(p, s)?;
                    return Ok(report(ThreeValued::No, Condition::NecessaryFirst, Some(witness), notes));
                }
                if necessary.second == ThreeValued::No {
                    let bs = Facts::infeasible_member(&facts.primal_strong)
                        .ok_or_else(|| Facts::missing("primal"))?;
                    let (a, b) = lifted(&facts.primal, bs);
                    let s = Scenario { a, b, c: p.c().lower() };
                    let witness = confirmed_counterexample(p, s)?;
                    return Ok(report(ThreeValued::No, Condition::NecessarySecond, Some(witness), notes));
                }
            }
        }
        Err(Error::CapExceeded { what, count, cap }) => {
            notes.push(note(
                format!("necessary conditions skipped: {what} needs {count} steps, cap {cap}"),
                ThreeValued::Unknown,
            ));
        }
        Err(e) => return Err(e),
    }

    if sufficient == ThreeValued::Yes {
        let fired = if ps == ThreeValued::Yes {
            Condition::SufficientPrimalStrong
        } else {
            Condition::SufficientDualStrong
        };
        return Ok(report(ThreeValued::Yes, fired, None, notes));
    }

    if let Some(depth) = options.grid_depth {
        match grid_counterexample_strong(p, depth, limits) {
            Ok(Some(s)) => {
                notes.push(note(format!("grid search at depth {depth}"), ThreeValued::No));
                let witness = confirmed_counterexample(p, s)?;
                return Ok(report(
                    ThreeValued::No,
                    Condition::GridCounterexample,
                    Some(witness),
                    notes,
                ));
            }
            Ok(None) => notes.push(note(
                format!("grid search at depth {depth} found no counterexample"),
                ThreeValued::Unknown,
            )),
            Err(Error::CapExceeded { count, cap, .. }) => notes.push(note(
                format!("grid search at depth {depth} skipped: {count} scenarios, cap {cap}"),
                ThreeValued::Unknown,
            )),
            Err(e) => return Err(e),
        }
    }
    Ok(report(ThreeValued::Unknown, Condition::Undecided, None, notes))
}

fn require_primal(p: &IlpProblem, operation: &'static str) -> Result<()> {
    match p.orientation() {
        Orientation::Primal => Ok(()),
        Orientation::Dual => Err(Error::DualOrientation(operation)),
    }
}

fn at_upper(v: &IntervalVector) -> IntervalVector {
    IntervalVector::thin(&v.upper())
}

fn at_lower(v: &IntervalVector) -> IntervalVector {
    IntervalVector::thin(&v.lower())
}

/// Replaces intervals by the endpoint that decides weakly zero gap:
/// `c := c_hi` for (A), `b := b_hi` for (B), both for (C). The matrix is
/// kept, since the two sides of (C) favour opposite ends of it.
pub fn reduce_weak(p: &IlpProblem) -> Result<IlpProblem> {
    require_primal(p, "weak reduction")?;
    match p.form() {
        Form::A => p.with_c(at_upper(p.c())),
        Form::B => p.with_b(at_upper(p.b())),
        Form::C => p.with_b(at_upper(p.b()))?.with_c(at_upper(p.c())),
    }
}

/// For a real matrix, fixes `c := c_lo` for (A), `b := b_lo` for (B) and
/// both for (C), preserving strongly zero gap.
pub fn reduce_strong_deg(p: &IlpProblem) -> Result<IlpProblem> {
    require_primal(p, "strong reduction")?;
    if !p.is_degenerate_matrix() {
        return Err(Error::NotDegenerate("strong reduction"));
    }
    match p.form() {
        Form::A => p.with_c(at_lower(p.c())),
        Form::B => p.with_b(at_lower(p.b())),
        Form::C => p.with_b(at_lower(p.b()))?.with_c(at_lower(p.c())),
    }
}
