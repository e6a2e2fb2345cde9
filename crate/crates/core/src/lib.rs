//! Duality gap analysis for interval linear programs.
//!
//! An interval linear program (ILP) is a family of ordinary linear programs
//! whose data `A`, `b`, `c` range independently over closed rational
//! intervals. This crate decides, exactly:
//!
//! * weak and strong feasibility of the constraint systems ([`feasibility`]),
//! * whether the duality gap is zero for some scenario (weakly zero) or for
//!   every scenario (strongly zero) ([`duality_gap`]),
//! * the best and worst optimal values and the dual-side formulas that
//!   describe them, together with the conditions under which those formulas
//!   are valid ([`bounds`]).
//!
//! Every decision is backed by exact rational linear programs ([`lp`]). The
//! [`oracle`] module enumerates concrete scenarios as an independent ground
//! truth for testing.

#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod duality_gap;
mod error;
mod extended;
pub mod feasibility;
pub mod format;
pub mod interval;
pub mod lp;
pub mod oracle;
pub mod problem;

pub use error::{Entry, Error, Result};
pub use extended::ExtendedRational;
pub use interval::{Interval, IntervalMatrix, IntervalVector, Matrix, Sign, SignVector};
pub use problem::{Form, IlpProblem, Orientation, Scenario, Side};

use num_bigint::BigInt;
use num_traits::Zero;

/// Exact rational scalar used for every datum and every solution value.
pub type Rational = num_rational::BigRational;

/// Enumeration limits shared by every exponential sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of sign vectors, vertices or grid scenarios a single
    /// sweep may visit before refusing.
    pub max_enum: u64,
}

impl Limits {
    pub const DEFAULT_MAX_ENUM: u64 = 1 << 20;

    pub fn new(max_enum: u64) -> Self {
        Limits { max_enum }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: Self::DEFAULT_MAX_ENUM,
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses an exact rational from `"-3"`, `"3.25"`, `".5"` or `"-1/3"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = parse_integer(num.trim()).ok_or_else(bad)?;
        let den: BigInt = parse_integer(den.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    let unsigned = digits.strip_prefix('-').unwrap_or(digits);
    if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}
