use std::fmt;

use thiserror::Error;

/// Position of a single datum inside an interval linear program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    A(usize, usize),
    B(usize),
    C(usize),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::A(i, j) => write!(f, "A[{i}][{j}]"),
            Entry::B(i) => write!(f, "b[{i}]"),
            Entry::C(j) => write!(f, "c[{j}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("empty interval: lower bound {lo} exceeds upper bound {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("{entry} = {value} lies outside its interval {interval}")]
    NotInInterval {
        entry: Entry,
        value: String,
        interval: String,
    },

    #[error("{what} needs {count} cases, above the enumeration cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: u64,
    },

    #[error("{operation} is not supported for form ({form})")]
    UnsupportedForm {
        operation: &'static str,
        form: char,
    },

    #[error("{0} requires a primal-oriented problem")]
    DualOrientation(&'static str),

    #[error("{0} requires a degenerate (real) constraint matrix")]
    NotDegenerate(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// `2^k` (or `base^k`) as a saturating count, for cap checks.
pub(crate) fn power(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

pub(crate) fn check_cap(what: &'static str, count: u128, cap: u64) -> Result<()> {
    if count > cap as u128 {
        Err(Error::CapExceeded { what, count, cap })
    } else {
        Ok(())
    }
}
