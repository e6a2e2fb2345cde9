#![allow(dead_code)]

use ilpdg::lp::{LpProblem, Relation, Sense, VarDomain};
use ilpdg::{rat, ratio, Form, IlpProblem, Interval, IntervalMatrix, IntervalVector, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn iv(lo: Rational, hi: Rational) -> Interval {
    Interval::new(lo, hi).unwrap()
}

pub fn ivi(lo: i64, hi: i64) -> Interval {
    iv(rat(lo), rat(hi))
}

pub fn pt(v: i64) -> Interval {
    Interval::point(rat(v))
}

pub fn problem(form: Form, a: Vec<Vec<Interval>>, b: Vec<Interval>, c: Vec<Interval>) -> IlpProblem {
    IlpProblem::new(
        form,
        IntervalMatrix::from_rows(a).unwrap(),
        IntervalVector::new(b),
        IntervalVector::new(c),
    )
    .unwrap()
}

/// Interval with endpoints drawn from {-2, ..., 2}.
pub fn random_interval(r: &mut ChaCha8Rng) -> Interval {
    let x: i64 = r.gen_range(-2..=2);
    let y: i64 = r.gen_range(-2..=2);
    ivi(x.min(y), x.max(y))
}

pub fn random_point(r: &mut ChaCha8Rng) -> Interval {
    pt(r.gen_range(-2..=2))
}

/// Random problem with `m, n` in `1..=max_dim`.
pub fn random_problem(r: &mut ChaCha8Rng, form: Form, max_dim: usize, real_matrix: bool) -> IlpProblem {
    let m = r.gen_range(1..=max_dim);
    let n = r.gen_range(1..=max_dim);
    random_problem_sized(r, form, m, n, real_matrix)
}

pub fn random_problem_sized(r: &mut ChaCha8Rng, form: Form, m: usize, n: usize, real_matrix: bool) -> IlpProblem {
    let a = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| if real_matrix { random_point(r) } else { random_interval(r) })
                .collect()
        })
        .collect();
    let b = (0..m).map(|_| random_interval(r)).collect();
    let c = (0..n).map(|_| random_interval(r)).collect();
    problem(form, a, b, c)
}

/// Interval with endpoints drawn from {-2, -1, 0}.
pub fn random_nonpositive_interval(r: &mut ChaCha8Rng) -> Interval {
    let x: i64 = r.gen_range(-2..=0);
    let y: i64 = r.gen_range(-2..=0);
    ivi(x.min(y), x.max(y))
}

/// Like [`random_problem`] but with nonpositive `b` and `c`, which makes
/// both sides infeasible far more often.
pub fn random_problem_skewed(r: &mut ChaCha8Rng, form: Form, max_dim: usize) -> IlpProblem {
    let m = r.gen_range(1..=max_dim);
    let n = r.gen_range(1..=max_dim);
    let a = (0..m).map(|_| (0..n).map(|_| random_interval(r)).collect()).collect();
    let b = (0..m).map(|_| random_nonpositive_interval(r)).collect();
    let c = (0..n).map(|_| random_nonpositive_interval(r)).collect();
    problem(form, a, b, c)
}

/// Random problem with at most `max_varying` non-degenerate entries.
pub fn random_problem_sparse(r: &mut ChaCha8Rng, form: Form, max_dim: usize, max_varying: usize) -> IlpProblem {
    let p = random_problem(r, form, max_dim, false);
    let mut a = p.a().to_rows();
    let mut b = p.b().entries().to_vec();
    let mut c = p.c().entries().to_vec();
    // (0 = A, 1 = b, 2 = c, index, column)
    let mut slots: Vec<(u8, usize, usize)> = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_degenerate() {
                slots.push((0, i, j));
            }
        }
    }
    slots.extend(b.iter().enumerate().filter(|(_, e)| !e.is_degenerate()).map(|(i, _)| (1, i, 0)));
    slots.extend(c.iter().enumerate().filter(|(_, e)| !e.is_degenerate()).map(|(j, _)| (2, j, 0)));
    while slots.len() > max_varying {
        let k = r.gen_range(0..slots.len());
        let (kind, i, j) = slots.swap_remove(k);
        match kind {
            0 => a[i][j] = Interval::point(a[i][j].lo().clone()),
            1 => b[i] = Interval::point(b[i].lo().clone()),
            _ => c[i] = Interval::point(c[i].lo().clone()),
        }
    }
    problem(form, a, b, c)
}

/// The four worked examples.
pub mod examples {
    use super::*;

    /// x1 <= b1, -x2 <= -1, min x1 + c2 x2, x >= 0.
    pub fn two_by_two(b1: Interval, c2: Interval) -> IlpProblem {
        problem(
            Form::C,
            vec![vec![pt(1), pt(0)], vec![pt(0), pt(-1)]],
            vec![b1, pt(-1)],
            vec![pt(1), c2],
        )
    }

    pub fn weak_not_strong() -> IlpProblem {
        two_by_two(ivi(-1, 0), ivi(-1, 1))
    }

    pub fn never_zero() -> IlpProblem {
        two_by_two(iv(rat(-1), ratio(-1, 2)), iv(rat(-1), ratio(-1, 2)))
    }

    pub fn strongly_zero_variant() -> IlpProblem {
        two_by_two(ivi(-1, 0), ivi(0, 1))
    }

    /// min -x2 | [-1, 1] x1 - x2 = 1, x >= 0.
    pub fn interval_equation() -> IlpProblem {
        problem(Form::A, vec![vec![ivi(-1, 1), pt(-1)]], vec![pt(1)], vec![pt(0), pt(-1)])
    }

    /// min c x | [0, 1] x <= [-1, 1], c in [-1, 1].
    pub fn zero_coefficient() -> IlpProblem {
        problem(Form::B, vec![vec![ivi(0, 1)]], vec![ivi(-1, 1)], vec![ivi(-1, 1)])
    }

    /// x1 - x2 = 0, x1 - x2 = 1 with c1 in [-1, 0].
    pub fn contradictory_equations() -> IlpProblem {
        problem(
            Form::A,
            vec![vec![pt(1), pt(-1)], vec![pt(1), pt(-1)]],
            vec![pt(0), pt(1)],
            vec![ivi(-1, 0), pt(0)],
        )
    }
}

/// Random LP with mixed relations and variable domains.
pub fn random_lp(r: &mut ChaCha8Rng) -> LpProblem {
    let n = r.gen_range(1..=4);
    let rows = r.gen_range(0..=4);
    let sense = if r.gen_bool(0.5) { Sense::Minimize } else { Sense::Maximize };
    let domains = (0..n)
        .map(|_| match r.gen_range(0..4) {
            0 => VarDomain::Free,
            1 => VarDomain::NonPositive,
            _ => VarDomain::NonNegative,
        })
        .collect();
    let objective = (0..n).map(|_| rat(r.gen_range(-3..=3))).collect();
    let mut lp = LpProblem::new(sense, objective, domains).unwrap();
    for _ in 0..rows {
        let coeffs = (0..n).map(|_| rat(r.gen_range(-3..=3))).collect();
        let rel = match r.gen_range(0..3) {
            0 => Relation::Le,
            1 => Relation::Eq,
            _ => Relation::Ge,
        };
        lp.add_constraint(coeffs, rel, rat(r.gen_range(-4..=4))).unwrap();
    }
    lp
}

/// The textbook dual of an LP, built from sign rules only.
///
/// For `min c'x`: a `<=` row gets `y <= 0`, a `>=` row `y >= 0`, an equation
/// a free `y`; a variable `x >= 0` gives `A'y <= c`, `x <= 0` gives `>=`,
/// free `x` gives `=`. A maximization is dualized as `-min(-c'x)`.
pub fn textbook_dual(lp: &LpProblem) -> LpProblem {
    let maximize = lp.sense() == Sense::Maximize;
    let c: Vec<Rational> = lp
        .objective()
        .iter()
        .map(|v| if maximize { -v.clone() } else { v.clone() })
        .collect();
    let rows = lp.constraints();
    let domains: Vec<VarDomain> = rows
        .iter()
        .map(|row| match row.relation {
            Relation::Le => VarDomain::NonPositive,
            Relation::Ge => VarDomain::NonNegative,
            Relation::Eq => VarDomain::Free,
        })
        .collect();
    let b: Vec<Rational> = rows.iter().map(|row| row.rhs.clone()).collect();
    let (sense, objective) = if maximize {
        // max c'x = -min(-c'x) = -max b'y = min -b'y
        (Sense::Minimize, b.iter().map(|v| -v.clone()).collect())
    } else {
        (Sense::Maximize, b)
    };
    // A problem without rows still needs one dual variable: use a zero row.
    let (domains, objective, columns): (Vec<VarDomain>, Vec<Rational>, Vec<Vec<Rational>>) = if rows.is_empty() {
        (
            vec![VarDomain::Free],
            vec![rat(0)],
            (0..lp.num_vars()).map(|_| vec![rat(0)]).collect(),
        )
    } else {
        (
            domains,
            objective,
            (0..lp.num_vars())
                .map(|j| rows.iter().map(|row| row.coeffs[j].clone()).collect())
                .collect(),
        )
    };
    let mut dual = LpProblem::new(sense, objective, domains).unwrap();
    for (j, d) in lp.domains().iter().enumerate() {
        let rel = match d {
            VarDomain::NonNegative => Relation::Le,
            VarDomain::NonPositive => Relation::Ge,
            VarDomain::Free => Relation::Eq,
        };
        dual.add_constraint(columns[j].clone(), rel, c[j].clone()).unwrap();
    }
    dual
}
