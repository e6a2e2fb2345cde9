//! Interval linear programs in the three canonical forms.
//!
//! | form | primal (min)                  | dual (max)                     |
//! |------|-------------------------------|--------------------------------|
//! | A    | `c'x \| Ax = b, x >= 0`       | `b'y \| A'y <= c`              |
//! | B    | `c'x \| Ax <= b`              | `b'y \| A'y = c, y <= 0`       |
//! | C    | `c'x \| Ax <= b, x >= 0`      | `b'y \| A'y <= c, y <= 0`      |
//!
//! An [`IlpProblem`] always stores the data `(A, b, c)` of the primal column;
//! its [`Orientation`] says which of the two programs it stands for.

use std::fmt;

use num_traits::Zero;

use crate::error::{check_cap, power};
use crate::interval::{Interval, IntervalMatrix, IntervalVector, Matrix};
use crate::lp::{LpProblem, Relation, Sense, VarDomain};
use crate::{Entry, Error, Limits, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    A,
    B,
    C,
}

impl Form {
    pub fn letter(self) -> char {
        match self {
            Form::A => 'A',
            Form::B => 'B',
            Form::C => 'C',
        }
    }

    /// Form of the dual program once rewritten as a minimization with
    /// nonnegative-style variables (`y = -y'`): A and B swap, C stays.
    pub fn dual_form(self) -> Form {
        match self {
            Form::A => Form::B,
            Form::B => Form::A,
            Form::C => Form::C,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The minimization program of the form.
    Primal,
    /// The maximization program of the form (its Table-style dual).
    Dual,
}

/// One of the two programs built from the same data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Primal => "primal",
            Side::Dual => "dual",
        })
    }
}

/// An interval linear program.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IlpProblem {
    form: Form,
    orientation: Orientation,
    a: IntervalMatrix,
    b: IntervalVector,
    c: IntervalVector,
}

impl IlpProblem {
    /// A primal-oriented problem; `A` is `m x n`, `b` has `m` and `c` has `n`
    /// entries, with `m, n >= 1`.
    pub fn new(form: Form, a: IntervalMatrix, b: IntervalVector, c: IntervalVector) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::Dimension("the constraint matrix must be at least 1x1".into()));
        }
        if b.len() != a.rows() {
            return Err(Error::Dimension(format!(
                "b has {} entries, A has {} rows",
                b.len(),
                a.rows()
            )));
        }
        if c.len() != a.cols() {
            return Err(Error::Dimension(format!(
                "c has {} entries, A has {} columns",
                c.len(),
                a.cols()
            )));
        }
        Ok(IlpProblem {
            form,
            orientation: Orientation::Primal,
            a,
            b,
            c,
        })
    }

    /// A problem whose data are all real numbers.
    pub fn thin(form: Form, a: &Matrix, b: &[Rational], c: &[Rational]) -> Result<Self> {
        Self::new(
            form,
            IntervalMatrix::thin(a),
            IntervalVector::thin(b),
            IntervalVector::thin(c),
        )
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn a(&self) -> &IntervalMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntervalVector {
        &self.b
    }

    pub fn c(&self) -> &IntervalVector {
        &self.c
    }

    /// Number of rows of `A`.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Number of columns of `A`.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn is_degenerate_matrix(&self) -> bool {
        self.a.is_degenerate()
    }

    pub fn is_thin(&self) -> bool {
        self.a.is_degenerate() && self.b.is_degenerate() && self.c.is_degenerate()
    }

    /// Count of entries with nonzero radius across `A`, `b` and `c`.
    pub fn nondegenerate_entries(&self) -> usize {
        self.entries()
            .filter(|(_, iv)| !iv.is_degenerate())
            .count()
    }

    /// Every datum in enumeration order: `A` row-major, then `b`, then `c`.
    pub fn entries(&self) -> impl Iterator<Item = (Entry, &Interval)> + '_ {
        let n = self.n();
        let a = self
            .a
            .entries()
            .iter()
            .enumerate()
            .map(move |(k, iv)| (Entry::A(k / n, k % n), iv));
        let b = self.b.iter().enumerate().map(|(i, iv)| (Entry::B(i), iv));
        let c = self.c.iter().enumerate().map(|(j, iv)| (Entry::C(j), iv));
        a.chain(b).chain(c)
    }

    pub fn with_orientation(&self, orientation: Orientation) -> IlpProblem {
        IlpProblem {
            orientation,
            ..self.clone()
        }
    }

    /// The same data read as the minimization program.
    pub fn primal_oriented(&self) -> IlpProblem {
        self.with_orientation(Orientation::Primal)
    }

    /// The other program of the pair. The data are reused unchanged, so this
    /// is an involution.
    pub fn dualize(&self) -> IlpProblem {
        let orientation = match self.orientation {
            Orientation::Primal => Orientation::Dual,
            Orientation::Dual => Orientation::Primal,
        };
        self.with_orientation(orientation)
    }

    /// Rewrites a dual-oriented problem as an equivalent primal-oriented one
    /// via `y = -y'`: `max b'y | <dual of form X>` becomes the primal of form
    /// `X.dual_form()` with data `(-A', c, b)`. Its optimal value is the
    /// negated dual value and its feasible scenarios correspond one to one.
    /// Primal-oriented problems are returned unchanged.
    pub fn normalized(&self) -> IlpProblem {
        match self.orientation {
            Orientation::Primal => self.clone(),
            Orientation::Dual => IlpProblem {
                form: self.form.dual_form(),
                orientation: Orientation::Primal,
                a: self.a.transpose().neg(),
                b: self.c.clone(),
                c: self.b.clone(),
            },
        }
    }

    pub fn with_a(&self, a: IntervalMatrix) -> Result<IlpProblem> {
        let mut p = Self::new(self.form, a, self.b.clone(), self.c.clone())?;
        p.orientation = self.orientation;
        Ok(p)
    }

    pub fn with_b(&self, b: IntervalVector) -> Result<IlpProblem> {
        let mut p = Self::new(self.form, self.a.clone(), b, self.c.clone())?;
        p.orientation = self.orientation;
        Ok(p)
    }

    pub fn with_c(&self, c: IntervalVector) -> Result<IlpProblem> {
        let mut p = Self::new(self.form, self.a.clone(), self.b.clone(), c)?;
        p.orientation = self.orientation;
        Ok(p)
    }

    /// Embeds a form-(C) problem into form (A) with slack columns:
    /// `min c'x + 0's | Ax + s = b, x, s >= 0`. Every scenario keeps its
    /// primal feasible set (projected), optimal value and dual program.
    pub fn to_form_a(&self) -> Result<IlpProblem> {
        match self.form {
            Form::A => Ok(self.clone()),
            Form::B => Err(Error::UnsupportedForm {
                operation: "slack embedding into form (A)",
                form: 'B',
            }),
            Form::C => {
                let m = self.m();
                let n = self.n();
                let mut rows = self.a.to_rows();
                for (i, row) in rows.iter_mut().enumerate() {
                    for k in 0..m {
                        let v = if k == i { crate::rat(1) } else { Rational::zero() };
                        row.push(Interval::point(v));
                    }
                }
                let a = IntervalMatrix::from_rows(rows)?;
                let mut c = self.c.entries().to_vec();
                c.extend((0..m).map(|_| Interval::point(Rational::zero())));
                debug_assert_eq!(a.cols(), n + m);
                let mut p = Self::new(Form::A, a, self.b.clone(), IntervalVector::new(c))?;
                p.orientation = self.orientation;
                Ok(p)
            }
        }
    }

    /// Builds a scenario after checking entrywise membership.
    pub fn scenario(&self, a: Matrix, b: Vec<Rational>, c: Vec<Rational>) -> Result<Scenario> {
        if let Err((i, j)) = self.a.check_member(&a) {
            if a.rows() != self.m() || a.cols() != self.n() {
                return Err(Error::Dimension(format!(
                    "scenario matrix is {}x{}, problem is {}x{}",
                    a.rows(),
                    a.cols(),
                    self.m(),
                    self.n()
                )));
            }
            return Err(Error::NotInInterval {
                entry: Entry::A(i, j),
                value: a.get(i, j).to_string(),
                interval: self.a.get(i, j).to_string(),
            });
        }
        if let Err(i) = self.b.check_member(&b) {
            if b.len() != self.m() {
                return Err(Error::Dimension(format!("scenario b has {} entries", b.len())));
            }
            return Err(Error::NotInInterval {
                entry: Entry::B(i),
                value: b[i].to_string(),
                interval: self.b.get(i).to_string(),
            });
        }
        if let Err(j) = self.c.check_member(&c) {
            if c.len() != self.n() {
                return Err(Error::Dimension(format!("scenario c has {} entries", c.len())));
            }
            return Err(Error::NotInInterval {
                entry: Entry::C(j),
                value: c[j].to_string(),
                interval: self.c.get(j).to_string(),
            });
        }
        Ok(Scenario { a, b, c })
    }

    /// The linear program this problem stands for at the given data.
    pub fn realize(&self, a: &Matrix, b: &[Rational], c: &[Rational]) -> Result<LpProblem> {
        let s = self.scenario(a.clone(), b.to_vec(), c.to_vec())?;
        let side = match self.orientation {
            Orientation::Primal => Side::Primal,
            Orientation::Dual => Side::Dual,
        };
        Ok(side_lp(self.form, side, &s))
    }

    /// Primal or dual program of a scenario of this problem's data.
    pub fn scenario_lp(&self, side: Side, s: &Scenario) -> LpProblem {
        side_lp(self.form, side, s)
    }

    /// All scenarios with every entry at an endpoint.
    pub fn endpoint_selections(&self, limits: &Limits) -> Result<ScenarioGrid> {
        let axes: Vec<(Entry, Vec<Rational>)> = self
            .entries()
            .filter(|(_, iv)| !iv.is_degenerate())
            .map(|(e, iv)| (e, vec![iv.lo().clone(), iv.hi().clone()]))
            .collect();
        check_cap("endpoint enumeration", power(2, axes.len()), limits.max_enum)?;
        Ok(ScenarioGrid::new(self, axes))
    }

    /// Scenarios on the grid with `2^depth + 1` points per varying entry.
    pub fn grid_selections(&self, depth: u32, limits: &Limits) -> Result<ScenarioGrid> {
        let axes: Vec<(Entry, Vec<Rational>)> = self
            .entries()
            .filter(|(_, iv)| !iv.is_degenerate())
            .map(|(e, iv)| (e, iv.grid(depth)))
            .collect();
        let points = (1u128 << depth.min(100)).saturating_add(1);
        let mut count: u128 = 1;
        for _ in 0..axes.len() {
            count = count.saturating_mul(points);
        }
        check_cap("grid enumeration", count, limits.max_enum)?;
        Ok(ScenarioGrid::new(self, axes))
    }
}

/// The `(side, form)` program of one scenario.
fn side_lp(form: Form, side: Side, s: &Scenario) -> LpProblem {
    let m = s.a.rows();
    let n = s.a.cols();
    match side {
        Side::Primal => {
            let (relation, domain) = match form {
                Form::A => (Relation::Eq, VarDomain::NonNegative),
                Form::B => (Relation::Le, VarDomain::Free),
                Form::C => (Relation::Le, VarDomain::NonNegative),
            };
            let mut lp = LpProblem::new(Sense::Minimize, s.c.clone(), vec![domain; n])
                .expect("scenario dimensions are validated");
            for i in 0..m {
                lp.add_constraint(s.a.row(i).to_vec(), relation, s.b[i].clone())
                    .expect("scenario dimensions are validated");
            }
            lp
        }
        Side::Dual => {
            let (relation, domain) = match form {
                Form::A => (Relation::Le, VarDomain::Free),
                Form::B => (Relation::Eq, VarDomain::NonPositive),
                Form::C => (Relation::Le, VarDomain::NonPositive),
            };
            let mut lp = LpProblem::new(Sense::Maximize, s.b.clone(), vec![domain; m])
                .expect("scenario dimensions are validated");
            for j in 0..n {
                lp.add_constraint(s.a.column(j), relation, s.c[j].clone())
                    .expect("scenario dimensions are validated");
            }
            lp
        }
    }
}

impl fmt::Display for IlpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orientation = match self.orientation {
            Orientation::Primal => "primal",
            Orientation::Dual => "dual",
        };
        write!(
            f,
            "form ({}) {orientation}, A = {}, b = {}, c = {}",
            self.form, self.a, self.b, self.c
        )
    }
}

/// One real realization `(A, b, c)` of the interval data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub a: Matrix,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl Scenario {
    /// All values in enumeration order: `A` row-major, `b`, `c`.
    pub fn values(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = (0..self.a.rows())
            .flat_map(|i| self.a.row(i).to_vec())
            .collect();
        v.extend(self.b.iter().cloned());
        v.extend(self.c.iter().cloned());
        v
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Rational]| {
            let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(", "))
        };
        write!(f, "A = {}, b = {}, c = {}", self.a, show(&self.b), show(&self.c))
    }
}

/// A finite product of per-entry choices; entries not listed stay at their
/// (degenerate) value.
///
/// Iteration is lexicographic over the listed entries in problem order, each
/// entry's choices ascending, the last entry varying fastest. The grid is
/// restartable: every call to [`ScenarioGrid::iter`] starts from the
/// beginning.
#[derive(Debug, Clone)]
pub struct ScenarioGrid {
    base: Scenario,
    axes: Vec<(Entry, Vec<Rational>)>,
}

impl ScenarioGrid {
    fn new(p: &IlpProblem, axes: Vec<(Entry, Vec<Rational>)>) -> Self {
        let base = Scenario {
            a: p.a.lower(),
            b: p.b.lower(),
            c: p.c.lower(),
        };
        ScenarioGrid { base, axes }
    }

    pub fn axes(&self) -> &[(Entry, Vec<Rational>)] {
        &self.axes
    }

    pub fn count(&self) -> u128 {
        self.axes
            .iter()
            .fold(1u128, |acc, (_, v)| acc.saturating_mul(v.len() as u128))
    }

    pub fn scenario_at(&self, digits: &[usize]) -> Scenario {
        let mut s = self.base.clone();
        for ((entry, choices), &d) in self.axes.iter().zip(digits) {
            let v = choices[d].clone();
            match *entry {
                Entry::A(i, j) => s.a.set(i, j, v),
                Entry::B(i) => s.b[i] = v,
                Entry::C(j) => s.c[j] = v,
            }
        }
        s
    }

    /// Digit vectors in iteration order.
    pub fn digits(&self) -> GridDigits {
        GridDigits {
            radices: self.axes.iter().map(|(_, v)| v.len()).collect(),
            current: Some(vec![0; self.axes.len()]),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Scenario> + '_ {
        self.digits().map(move |d| self.scenario_at(&d))
    }
}

/// Mixed-radix counter over a [`ScenarioGrid`].
#[derive(Debug, Clone)]
pub struct GridDigits {
    radices: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Iterator for GridDigits {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut k = next.len();
        let mut carried = true;
        while carried && k > 0 {
            k -= 1;
            next[k] += 1;
            if next[k] == self.radices[k] {
                next[k] = 0;
            } else {
                carried = false;
            }
        }
        if !carried {
            self.current = Some(next);
        }
        Some(out)
    }
}
