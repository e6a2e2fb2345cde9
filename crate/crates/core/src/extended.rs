//! Values on the extended real axis.

use std::fmt;

use num_traits::Zero;

use crate::Rational;

/// A value in `{-inf} ∪ Q ∪ {+inf}`.
///
/// Variant order gives the total order `NegInf < Finite(_) < PosInf`, so the
/// derived `Ord` is the order of the extended axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtendedRational {
    /// `min` over the empty set.
    pub const EMPTY_MIN: ExtendedRational = ExtendedRational::PosInf;
    /// `max` over the empty set.
    pub const EMPTY_MAX: ExtendedRational = ExtendedRational::NegInf;

    pub fn finite(value: Rational) -> Self {
        ExtendedRational::Finite(value)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, ExtendedRational::PosInf)
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, ExtendedRational::NegInf)
    }

    /// Maximum of an iterator, with `max ∅ = -inf`.
    pub fn max_of<I: IntoIterator<Item = ExtendedRational>>(values: I) -> Self {
        values.into_iter().max().unwrap_or(Self::EMPTY_MAX)
    }

    /// Minimum of an iterator, with `min ∅ = +inf`.
    pub fn min_of<I: IntoIterator<Item = ExtendedRational>>(values: I) -> Self {
        values.into_iter().min().unwrap_or(Self::EMPTY_MIN)
    }

    /// Parses `"+inf"`, `"-inf"` or anything [`crate::parse_rational`] accepts.
    pub fn parse(s: &str) -> crate::Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "∞" => Ok(ExtendedRational::PosInf),
            "-inf" | "−∞" => Ok(ExtendedRational::NegInf),
            other => crate::parse_rational(other).map(ExtendedRational::Finite),
        }
    }
}

impl std::ops::Neg for ExtendedRational {
    type Output = ExtendedRational;

    fn neg(self) -> Self::Output {
        match self {
            ExtendedRational::NegInf => ExtendedRational::PosInf,
            ExtendedRational::PosInf => ExtendedRational::NegInf,
            ExtendedRational::Finite(v) => {
                if v.is_zero() {
                    ExtendedRational::Finite(v)
                } else {
                    ExtendedRational::Finite(-v)
                }
            }
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(value: Rational) -> Self {
        ExtendedRational::Finite(value)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInf => f.write_str("-inf"),
            ExtendedRational::PosInf => f.write_str("+inf"),
            ExtendedRational::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn order_of_extended_axis() {
        let values = [
            ExtendedRational::PosInf,
            ExtendedRational::Finite(rat(3)),
            ExtendedRational::NegInf,
            ExtendedRational::Finite(rat(-7)),
        ];
        let mut sorted = values.to_vec();
        sorted.sort();
        assert_eq!(
            sorted,
            vec![
                ExtendedRational::NegInf,
                ExtendedRational::Finite(rat(-7)),
                ExtendedRational::Finite(rat(3)),
                ExtendedRational::PosInf,
            ]
        );
    }

    #[test]
    fn empty_set_conventions() {
        assert_eq!(ExtendedRational::max_of(Vec::new()), ExtendedRational::NegInf);
        assert_eq!(ExtendedRational::min_of(Vec::new()), ExtendedRational::PosInf);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["+inf", "-inf", "1/3", "-2", "0"] {
            let v = ExtendedRational::parse(s).unwrap();
            assert_eq!(ExtendedRational::parse(&v.to_string()).unwrap(), v);
        }
    }
}
