use std::collections::HashSet;

use ilpdg::bounds::{best_value, rhs_upper, worst_value};
use ilpdg::duality_gap::{strongly_zero, weakly_zero, DgWitness, StrongOptions, ThreeValued};
use ilpdg::feasibility::{strong_feasible, weak_feasible, SystemKind};
use ilpdg::format::{parse_problem, write_problem};
use ilpdg::interval::orthant_matrix;
use ilpdg::lp::{LpProblem, LpStatus, Relation, Sense, VarDomain};
use ilpdg::oracle::{enumerate_values, grid_counterexample_strong};
use ilpdg::{
    rat, ratio, ExtendedRational, Form, IlpProblem, Interval, IntervalMatrix, IntervalVector,
    Limits, Side, SignVector,
};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval> {
    (-2i64..=2, -2i64..=2).prop_map(|(x, y)| Interval::new(rat(x.min(y)), rat(x.max(y))).unwrap())
}

fn point() -> impl Strategy<Value = Interval> {
    (-2i64..=2).prop_map(|v| Interval::point(rat(v)))
}

fn form() -> impl Strategy<Value = Form> {
    prop_oneof![Just(Form::A), Just(Form::B), Just(Form::C)]
}

fn kind() -> impl Strategy<Value = SystemKind> {
    prop_oneof![
        Just(SystemKind::Eqn),
        Just(SystemKind::IneqFree),
        Just(SystemKind::IneqNonneg)
    ]
}

fn problem_with(form: impl Strategy<Value = Form>, max_dim: usize, real_matrix: bool) -> impl Strategy<Value = IlpProblem> {
    (form, 1..=max_dim, 1..=max_dim).prop_flat_map(move |(f, m, n)| {
        let entry = if real_matrix { point().boxed() } else { interval().boxed() };
        (
            proptest::collection::vec(proptest::collection::vec(entry, n), m),
            proptest::collection::vec(interval(), m),
            proptest::collection::vec(interval(), n),
        )
            .prop_map(move |(a, b, c)| {
                IlpProblem::new(
                    f,
                    IntervalMatrix::from_rows(a).unwrap(),
                    IntervalVector::new(b),
                    IntervalVector::new(c),
                )
                .unwrap()
            })
    })
}

fn problem() -> impl Strategy<Value = IlpProblem> {
    problem_with(form(), 3, false)
}

fn small_problem() -> impl Strategy<Value = IlpProblem> {
    problem_with(form(), 2, false)
}

fn lim() -> Limits {
    Limits::default()
}

fn interval_multiset(p: &IlpProblem) -> Vec<String> {
    let mut v: Vec<String> = p.entries().map(|(_, iv)| iv.to_string()).collect();
    v.sort();
    v
}

fn small_lp() -> impl Strategy<Value = LpProblem> {
    (1usize..=3, 0usize..=3).prop_flat_map(|(n, rows)| {
        let domain = prop_oneof![
            Just(VarDomain::NonNegative),
            Just(VarDomain::NonPositive),
            Just(VarDomain::Free)
        ];
        let relation = prop_oneof![Just(Relation::Le), Just(Relation::Eq), Just(Relation::Ge)];
        (
            any::<bool>(),
            proptest::collection::vec(-3i64..=3, n),
            proptest::collection::vec(domain, n),
            proptest::collection::vec(
                (proptest::collection::vec(-3i64..=3, n), relation, -4i64..=4),
                rows,
            ),
        )
            .prop_map(|(max, obj, domains, rows)| {
                let sense = if max { Sense::Maximize } else { Sense::Minimize };
                let mut lp = LpProblem::new(sense, obj.into_iter().map(rat).collect(), domains).unwrap();
                for (coeffs, rel, rhs) in rows {
                    lp.add_constraint(coeffs.into_iter().map(rat).collect(), rel, rat(rhs))
                        .unwrap();
                }
                lp
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_status_ignores_positive_row_scaling(lp in small_lp(), k in 1i64..=5, d in 1i64..=3) {
        let factor = ratio(k, d);
        let mut scaled = LpProblem::new(lp.sense(), lp.objective().to_vec(), lp.domains().to_vec()).unwrap();
        for row in lp.constraints() {
            let coeffs = row.coeffs.iter().map(|v| v * &factor).collect();
            scaled.add_constraint(coeffs, row.relation, &row.rhs * &factor).unwrap();
        }
        let a = lp.solve();
        let b = scaled.solve();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn lp_trichotomy_is_exclusive(lp in small_lp()) {
        let out = lp.solve();
        prop_assert_eq!(out.status == LpStatus::Infeasible, lp.feasible().is_none());
        prop_assert_eq!(out.point.is_some(), out.status == LpStatus::Optimal);
        if let Some(x) = lp.feasible() {
            prop_assert!(lp.is_feasible_point(&x));
        }
        if let Some(x) = &out.point {
            prop_assert!(lp.is_feasible_point(x));
            prop_assert_eq!(ExtendedRational::Finite(lp.objective_value(x)), out.value.clone());
        }
        prop_assert_eq!(lp.solve(), out);
    }

    #[test]
    fn center_radius_round_trip(iv in interval()) {
        prop_assert_eq!(iv.center() - iv.radius(), iv.lo().clone());
        prop_assert_eq!(iv.center() + iv.radius(), iv.hi().clone());
        prop_assert!(iv.radius() >= rat(0));
    }

    #[test]
    fn orthant_matrices_are_members(p in problem(), bits in proptest::collection::vec(any::<bool>(), 3)) {
        let signs: Vec<i32> = (0..p.n()).map(|j| if bits[j] { 1 } else { -1 }).collect();
        let s = SignVector::from_ints(&signs).unwrap();
        let m = orthant_matrix(p.a(), &s).unwrap();
        prop_assert!(p.a().contains(&m));
    }

    #[test]
    fn endpoint_selections_are_distinct_members(p in small_problem()) {
        let grid = p.endpoint_selections(&lim()).unwrap();
        let all: Vec<_> = grid.iter().collect();
        prop_assert_eq!(all.len(), 1usize << p.nondegenerate_entries());
        let mut seen = HashSet::new();
        for s in &all {
            prop_assert!(p.scenario(s.a.clone(), s.b.clone(), s.c.clone()).is_ok());
            prop_assert!(seen.insert(s.values()));
        }
        // restartable
        prop_assert_eq!(grid.iter().count(), all.len());
    }

    #[test]
    fn dualize_keeps_the_interval_data(p in problem()) {
        let d = p.dualize();
        prop_assert_eq!(interval_multiset(&p), interval_multiset(&d));
        prop_assert_eq!(d.dualize(), p.clone());
        let n = d.normalized();
        prop_assert_eq!((n.m(), n.n()), (p.n(), p.m()));
        prop_assert_eq!(n.dualize().normalized(), p);
    }

    #[test]
    fn files_round_trip(p in problem()) {
        prop_assert_eq!(parse_problem(&write_problem(&p)).unwrap(), p);
    }

    #[test]
    fn weak_feasibility_matches_endpoint_members(p in small_problem(), k in kind()) {
        prop_assume!(k != SystemKind::Eqn);
        let v = weak_feasible(k, p.a(), p.b(), &lim()).unwrap();
        let as_form = IlpProblem::new(
            match k { SystemKind::IneqFree => Form::B, _ => Form::C },
            p.a().clone(),
            p.b().clone(),
            p.c().clone(),
        ).unwrap();
        let oracle = as_form
            .endpoint_selections(&lim())
            .unwrap()
            .iter()
            .any(|s| as_form.scenario_lp(Side::Primal, &s).is_feasible());
        prop_assert_eq!(v.answer, oracle);
        if let Some(w) = &v.witness {
            let s = w.scenario.as_ref().unwrap();
            prop_assert!(p.a().contains(&s.matrix));
            prop_assert!(p.b().contains(&s.rhs));
            prop_assert!(s.lp(k).is_feasible_point(&w.point));
            if let Some(cert) = &v.certificate {
                prop_assert!(cert.is_feasible_point(&w.certificate_point));
            }
        }
    }

    #[test]
    fn eqn_weak_members_are_genuine(p in small_problem()) {
        let v = weak_feasible(SystemKind::Eqn, p.a(), p.b(), &lim()).unwrap();
        if let Some(w) = &v.witness {
            let s = w.scenario.as_ref().unwrap();
            prop_assert!(p.a().contains(&s.matrix));
            prop_assert!(p.b().contains(&s.rhs));
            prop_assert!(s.lp(SystemKind::Eqn).is_feasible_point(&w.point));
        }
    }

    #[test]
    fn widening_the_upper_rhs_keeps_weak_feasibility(p in small_problem(), k in kind(), extra in 0i64..=2) {
        let before = weak_feasible(k, p.a(), p.b(), &lim()).unwrap().answer;
        let widened: IntervalVector = p
            .b()
            .iter()
            .map(|iv| Interval::new(iv.lo().clone(), iv.hi() + rat(extra)).unwrap())
            .collect();
        let after = weak_feasible(k, p.a(), &widened, &lim()).unwrap().answer;
        prop_assert!(!before || after);
    }

    #[test]
    fn reported_orthant_is_the_first_success(p in small_problem()) {
        let v = weak_feasible(SystemKind::IneqFree, p.a(), p.b(), &lim()).unwrap();
        let varying = p.a().varying_columns();
        let first = SignVector::sweep(p.n(), &varying).find(|s| {
            let m = orthant_matrix(p.a(), s).unwrap();
            ilpdg::feasibility::system_lp(SystemKind::IneqFree, &m, &p.b().upper()).is_feasible()
        });
        prop_assert_eq!(v.witness.and_then(|w| w.sign), first);
    }

    #[test]
    fn strong_feasibility_is_sound_on_the_grid(p in small_problem(), k in kind()) {
        let v = strong_feasible(k, p.a(), p.b(), &lim()).unwrap();
        let Some(v) = v.verdict() else { return Ok(()); };
        let as_form = IlpProblem::new(
            match k { SystemKind::Eqn => Form::A, SystemKind::IneqFree => Form::B, SystemKind::IneqNonneg => Form::C },
            p.a().clone(),
            p.b().clone(),
            p.c().clone(),
        ).unwrap();
        if v.answer {
            let grid = as_form.grid_selections(1, &lim()).unwrap();
            for s in grid.iter() {
                prop_assert!(as_form.scenario_lp(Side::Primal, &s).is_feasible());
            }
        } else {
            let s = v.infeasible_scenario.as_ref().unwrap();
            prop_assert!(p.a().contains(&s.matrix));
            prop_assert!(p.b().contains(&s.rhs));
            prop_assert!(!s.is_feasible(k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn weakly_zero_is_symmetric_under_dualization(p in problem()) {
        let direct = weakly_zero(&p, &lim()).unwrap().verdict;
        let normalized = weakly_zero(&p.dualize().normalized(), &lim()).unwrap().verdict;
        prop_assert_eq!(direct, normalized);
    }

    #[test]
    fn weak_witnesses_solve_a_member(p in problem()) {
        let r = weakly_zero(&p, &lim()).unwrap();
        if r.verdict == ThreeValued::Yes {
            let Some(DgWitness::Feasible { side, a, rhs, point, .. }) = r.witness else {
                return Err(TestCaseError::fail("Yes without a feasible witness"));
            };
            let (b, c) = match side {
                Side::Primal => (rhs, p.c().lower()),
                Side::Dual => (p.b().lower(), rhs),
            };
            let s = p.scenario(a, b, c).unwrap();
            prop_assert!(p.scenario_lp(side, &s).is_feasible_point(&point));
        }
    }

    #[test]
    fn strong_verdicts_are_sound(p in small_problem()) {
        let r = strongly_zero(&p, &StrongOptions::default(), &lim()).unwrap();
        match r.verdict {
            ThreeValued::Yes => {
                prop_assert_eq!(weakly_zero(&p, &lim()).unwrap().verdict, ThreeValued::Yes);
                prop_assert!(grid_counterexample_strong(&p, 1, &lim()).unwrap().is_none());
            }
            ThreeValued::No => {
                let Some(DgWitness::Counterexample(s)) = r.witness else {
                    return Err(TestCaseError::fail("No without a counterexample"));
                };
                prop_assert!(!p.scenario_lp(Side::Primal, &s).is_feasible());
                prop_assert!(!p.scenario_lp(Side::Dual, &s).is_feasible());
            }
            ThreeValued::Unknown => prop_assert!(!p.is_degenerate_matrix()),
        }
    }

    #[test]
    fn real_matrix_strong_verdicts_match_the_grid(p in problem_with(form(), 2, true)) {
        let r = strongly_zero(&p, &StrongOptions { grid_depth: None }, &lim()).unwrap();
        let grid = grid_counterexample_strong(&p, 1, &lim()).unwrap();
        prop_assert_eq!(r.verdict == ThreeValued::No, grid.is_some());
    }

    #[test]
    fn refuter_output_has_no_feasible_side(p in small_problem(), depth in 0u32..=2) {
        if let Some(s) = grid_counterexample_strong(&p, depth, &lim()).unwrap() {
            prop_assert!(!p.scenario_lp(Side::Primal, &s).is_feasible());
            prop_assert!(!p.scenario_lp(Side::Dual, &s).is_feasible());
        }
    }

    #[test]
    fn value_bounds_enclose_endpoint_values(p in problem_with(prop_oneof![Just(Form::A), Just(Form::C)], 2, false)) {
        let f_lo = best_value(&p).unwrap();
        let f_hi = worst_value(&p, &lim()).unwrap();
        let values = enumerate_values(&p, &lim()).unwrap();
        let endpoint: Vec<ExtendedRational> =
            values.per_scenario.iter().map(|(_, primal, _)| primal.value.clone()).collect();
        let lo = ExtendedRational::min_of(endpoint.iter().cloned());
        let hi = ExtendedRational::max_of(endpoint.iter().cloned());
        prop_assert!(f_lo <= lo);
        prop_assert!(f_hi >= hi);
        prop_assert!(f_lo <= f_hi);
        if p.form() == Form::C {
            prop_assert_eq!(f_lo, lo);
            prop_assert_eq!(f_hi, hi);
        }
    }

    #[test]
    fn upper_bounds_respect_weak_duality(p in problem_with(Just(Form::A), 2, false)) {
        let f_hi = worst_value(&p, &lim()).unwrap();
        let g_hi = rhs_upper(&p, &lim()).unwrap();
        prop_assert!(f_hi >= g_hi);
        // g_hi is at least every endpoint scenario's dual value.
        let values = enumerate_values(&p, &lim()).unwrap();
        for (_, _, dual) in &values.per_scenario {
            prop_assert!(g_hi >= dual.value);
        }
    }
}
