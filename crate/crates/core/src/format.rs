//! JSON problem files.
//!
//! ```json
//! { "form": "C", "A": [["1", "0"], ["0", "-1"]], "b": [["-1", "0"], "-1"], "c": ["1", ["-1", "1"]] }
//! ```
//!
//! Each datum is a string scalar (a degenerate interval) or a `[lo, hi]`
//! pair of strings. Strings are parsed exactly by [`parse_rational`], so
//! `"0.1"` is one tenth and `"1/3"` is one third. JSON numbers are rejected
//! to keep binary floating point out of the data.

use serde::{Deserialize, Serialize};

use crate::interval::{Interval, IntervalMatrix, IntervalVector};
use crate::problem::{Form, IlpProblem};
use crate::{parse_rational, Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    form: String,
    #[serde(rename = "A")]
    a: Vec<Vec<Datum>>,
    b: Vec<Datum>,
    c: Vec<Datum>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Datum {
    Scalar(String),
    Pair([String; 2]),
}

impl Datum {
    fn to_interval(&self) -> Result<Interval> {
        match self {
            Datum::Scalar(s) => Ok(Interval::point(parse_rational(s)?)),
            Datum::Pair([lo, hi]) => Interval::new(parse_rational(lo)?, parse_rational(hi)?),
        }
    }

    fn from_interval(iv: &Interval) -> Datum {
        if iv.is_degenerate() {
            Datum::Scalar(iv.lo().to_string())
        } else {
            Datum::Pair([iv.lo().to_string(), iv.hi().to_string()])
        }
    }
}

/// Parses a problem file. The result is primal-oriented.
pub fn parse_problem(text: &str) -> Result<IlpProblem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "{e} (each datum must be a string such as \"0.5\" or a pair [\"lo\", \"hi\"])"
        ))
    })?;
    let form = match file.form.as_str() {
        "A" => Form::A,
        "B" => Form::B,
        "C" => Form::C,
        other => return Err(Error::Parse(format!("unknown form {other:?}, expected A, B or C"))),
    };
    let rows = file
        .a
        .iter()
        .map(|row| row.iter().map(Datum::to_interval).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Dimension("A must have at least one row".into()));
    }
    let a = IntervalMatrix::from_rows(rows)?;
    let b = file
        .b
        .iter()
        .map(Datum::to_interval)
        .collect::<Result<IntervalVector>>()?;
    let c = file
        .c
        .iter()
        .map(Datum::to_interval)
        .collect::<Result<IntervalVector>>()?;
    IlpProblem::new(form, a, b, c)
}

/// The file representation of a problem. Dual-oriented problems are written
/// in their normalized primal form, so the output always parses back.
pub fn to_json(p: &IlpProblem) -> serde_json::Value {
    let p = p.normalized();
    let file = ProblemFile {
        form: p.form().letter().to_string(),
        a: p
            .a()
            .to_rows()
            .iter()
            .map(|row| row.iter().map(Datum::from_interval).collect())
            .collect(),
        b: p.b().iter().map(Datum::from_interval).collect(),
        c: p.c().iter().map(Datum::from_interval).collect(),
    };
    serde_json::to_value(file).expect("problem files always serialize")
}

/// Pretty-printed file contents with a trailing newline.
pub fn write_problem(p: &IlpProblem) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(p)).expect("values always serialize");
    s.push('\n');
    s
}
