//! Rendering of analysis results as JSON values. Every rational is a string.

use ilpdg::bounds::BoundsReport;
use ilpdg::duality_gap::{DgReport, DgWitness, ThreeValued};
use ilpdg::feasibility::{FeasVerdict, SideSystem, StrongFeas, SystemScenario};
use ilpdg::oracle::{FeasibleScenario, ValueSummary};
use ilpdg::{ExtendedRational, IlpProblem, Matrix, Rational, Scenario, SignVector};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn rational(v: &Rational) -> Value {
    Value::String(v.to_string())
}

pub fn extended(v: &ExtendedRational) -> Value {
    Value::String(v.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

fn sign(s: &SignVector) -> Value {
    json!(s.to_ints())
}

pub fn three(v: ThreeValued) -> Value {
    Value::String(v.to_string())
}

pub fn digest(p: &IlpProblem) -> Value {
    json!({
        "form": p.form().letter().to_string(),
        "m": p.m(),
        "n": p.n(),
        "nondegenerate_entries": p.nondegenerate_entries(),
    })
}

pub fn scenario(s: &Scenario) -> Value {
    json!({ "A": matrix(&s.a), "b": vector(&s.b), "c": vector(&s.c) })
}

/// A member of a side's system, expressed in the problem's own data: `A`
/// with `b` for the primal side, `A` with `c` for the dual side.
fn side_member(sys: &SideSystem, s: &SystemScenario, point: Option<&[Rational]>) -> Value {
    let (a, rhs, point) = sys.lift(s, point);
    let mut out = Map::new();
    out.insert("A".into(), matrix(&a));
    out.insert(rhs_key(sys).into(), vector(&rhs));
    if let Some(x) = point {
        out.insert(point_key(sys).into(), vector(&x));
    }
    Value::Object(out)
}

fn rhs_key(sys: &SideSystem) -> &'static str {
    match sys.side {
        ilpdg::Side::Primal => "b",
        ilpdg::Side::Dual => "c",
    }
}

fn point_key(sys: &SideSystem) -> &'static str {
    match sys.side {
        ilpdg::Side::Primal => "x",
        ilpdg::Side::Dual => "y",
    }
}

pub fn weak_feas(sys: &SideSystem, v: &FeasVerdict) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), three(v.answer.into()));
    let witness = v.witness.as_ref().and_then(|w| {
        let s = w.scenario.as_ref()?;
        let mut member = side_member(sys, s, Some(&w.point));
        if let (Some(sv), Value::Object(m)) = (&w.sign, &mut member) {
            m.insert("sign".into(), sign(sv));
        }
        Some(member)
    });
    out.insert("witness".into(), witness.unwrap_or(Value::Null));
    Value::Object(out)
}

pub fn strong_feas(sys: &SideSystem, v: &StrongFeas) -> Value {
    let mut out = Map::new();
    match v {
        StrongFeas::Unknown { reason } => {
            out.insert("verdict".into(), three(ThreeValued::Unknown));
            out.insert("reason".into(), Value::String(reason.clone()));
        }
        StrongFeas::Decided(d) => {
            out.insert("verdict".into(), three(d.answer.into()));
            let member = d
                .infeasible_scenario
                .as_ref()
                .map(|s| side_member(sys, s, None))
                .unwrap_or(Value::Null);
            out.insert("infeasible_member".into(), member);
        }
    }
    Value::Object(out)
}

pub fn dg(r: &DgReport) -> Value {
    let witness = match &r.witness {
        None => Value::Null,
        Some(DgWitness::Feasible { side, sign: sv, a, rhs, point }) => {
            let (rhs_key, point_key) = match side {
                ilpdg::Side::Primal => ("b", "x"),
                ilpdg::Side::Dual => ("c", "y"),
            };
            let mut m = Map::new();
            m.insert("kind".into(), json!("feasible"));
            m.insert("side".into(), json!(side.to_string()));
            m.insert("A".into(), matrix(a));
            m.insert(rhs_key.into(), vector(rhs));
            m.insert(point_key.into(), vector(point));
            if let Some(sv) = sv {
                m.insert("sign".into(), sign(sv));
            }
            Value::Object(m)
        }
        Some(DgWitness::Counterexample(s)) => {
            let mut v = scenario(s);
            v["kind"] = json!("counterexample");
            v
        }
    };
    let notes: Vec<Value> = r
        .notes
        .iter()
        .map(|n| json!({ "clause": n.clause, "outcome": three(n.outcome) }))
        .collect();
    json!({
        "verdict": three(r.verdict),
        "mode": r.mode.to_string(),
        "fired_condition": r.fired_condition.id(),
        "witness": witness,
        "notes": notes,
    })
}

pub fn bounds(r: &BoundsReport) -> Value {
    json!({
        "f_lower": extended(&r.f_lower),
        "f_upper": r.f_upper.as_ref().map_or(Value::Null, extended),
        "rhs_lower": extended(&r.lower.rhs_lower),
        "rhs_upper": extended(&r.upper.rhs_upper),
        "lower_formula_valid": r.lower.valid,
        "upper_formula_valid": three(r.upper.valid),
        "primal_weakly_feasible": r.lower.primal_weakly_feasible,
        "dual_strongly_feasible": r.lower.dual_strongly_feasible,
        "strongly_zero": three(r.upper.strongly_zero),
        "via_slack_form": r.via_slack_form,
    })
}

pub fn oracle(
    weak: Option<&FeasibleScenario>,
    counterexample: Option<&Scenario>,
    depth: u32,
    values: &ValueSummary,
) -> Value {
    let weak_witness = weak.map_or(Value::Null, |f| {
        let mut v = scenario(&f.scenario);
        v["side"] = json!(f.side.to_string());
        v["point"] = vector(&f.point);
        v
    });
    let finite = &values.finite_values;
    json!({
        "weakly_zero": three(weak.is_some().into()),
        "weak_witness": weak_witness,
        "grid_depth": depth,
        "strong_counterexample": counterexample.map_or(Value::Null, scenario),
        "strongly_zero_on_grid": three(counterexample.is_none().into()),
        "endpoint_scenarios": values.per_scenario.len(),
        "endpoint_values": {
            "has_pos_inf": values.has_pos_inf,
            "has_neg_inf": values.has_neg_inf,
            "finite_min": finite.iter().min().map_or(Value::Null, rational),
            "finite_max": finite.iter().max().map_or(Value::Null, rational),
        },
        "endpoint_scenarios_with_gap": values.scenarios_with_gap().count(),
    })
}

/// Plain-text rendering: one `key: value` line per field, nested objects
/// indented, arrays of scalars inline.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let Value::Object(map) = v else {
        out.push_str(&format!("{}{}\n", " ".repeat(indent), inline(v)));
        return;
    };
    // Verdict line first, the rest in key order.
    let keys = map
        .keys()
        .filter(|k| *k == "verdict")
        .chain(map.keys().filter(|k| *k != "verdict"));
    for k in keys {
        let value = &map[k];
        let pad = " ".repeat(indent);
        match value {
            Value::Object(inner) if !inner.is_empty() => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_text(value, indent + 2, out);
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{pad}{k}:\n"));
                for item in items {
                    out.push_str(&format!("{pad}  -\n"));
                    write_text(item, indent + 4, out);
                }
            }
            _ => out.push_str(&format!("{pad}{k}: {}\n", inline(value))),
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_puts_the_verdict_first() {
        let v = json!({ "a": 1, "verdict": "Yes", "b": { "c": ["1/2", "-3"] } });
        assert_eq!(text(&v), "verdict: Yes\na: 1\nb:\n  c: [1/2, -3]\n");
    }

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational(&ilpdg::ratio(-2, 6)), json!("-1/3"));
        assert_eq!(extended(&ExtendedRational::PosInf), json!("+inf"));
    }
}
