//! Interval data: scalars, vectors and matrices, plus real matrices and sign
//! vectors used to pick endpoints.

use std::fmt;

use num_traits::{One, Zero};

use crate::{ratio, Error, Rational, Result};

/// A closed rational interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(value: Rational) -> Self {
        Interval {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Degeneracy is exact: the radius is zero.
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn center(&self) -> Rational {
        (&self.lo + &self.hi) * ratio(1, 2)
    }

    pub fn radius(&self) -> Rational {
        (&self.hi - &self.lo) * ratio(1, 2)
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// `{-v : v in self}`.
    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// `2^depth + 1` evenly spaced points from `lo` to `hi`, ascending. Depth 0
    /// gives the two endpoints. A degenerate interval yields its single point.
    pub fn grid(&self, depth: u32) -> Vec<Rational> {
        if self.is_degenerate() {
            return vec![self.lo.clone()];
        }
        let steps: i64 = 1 << depth.min(30);
        let width = &self.hi - &self.lo;
        (0..=steps)
            .map(|k| &self.lo + &width * ratio(k, steps))
            .collect()
    }

    /// Selects `lo` for [`Sign::Plus`] and `hi` for [`Sign::Minus`], i.e.
    /// `center - sign * radius`.
    pub fn endpoint(&self, sign: Sign) -> &Rational {
        match sign {
            Sign::Plus => &self.lo,
            Sign::Minus => &self.hi,
        }
    }
}

impl From<Rational> for Interval {
    fn from(value: Rational) -> Self {
        Interval::point(value)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("matrix rows have different lengths".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|i| crate::lp::dot(self.row(i), x)).collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack of matrices with different row counts".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// A rectangular grid of intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn from_rows(rows: Vec<Vec<Interval>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("interval matrix rows have different lengths".into()));
        }
        Ok(IntervalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Row-major entries; `data.len()` must equal `rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, data: Vec<Interval>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} interval matrix",
                data.len()
            )));
        }
        Ok(IntervalMatrix { rows, cols, data })
    }

    pub fn from_bounds(lower: &Matrix, upper: &Matrix) -> Result<Self> {
        if lower.rows() != upper.rows() || lower.cols() != upper.cols() {
            return Err(Error::Dimension("bound matrices differ in shape".into()));
        }
        let data = lower
            .data
            .iter()
            .zip(&upper.data)
            .map(|(l, u)| Interval::new(l.clone(), u.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalMatrix {
            rows: lower.rows(),
            cols: lower.cols(),
            data,
        })
    }

    pub fn thin(m: &Matrix) -> Self {
        IntervalMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data.iter().cloned().map(Interval::point).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Interval {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Interval] {
        &self.data
    }

    fn map(&self, f: impl Fn(&Interval) -> Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn lower(&self) -> Matrix {
        self.map(|iv| iv.lo.clone())
    }

    pub fn upper(&self) -> Matrix {
        self.map(|iv| iv.hi.clone())
    }

    /// `A_c = (lower + upper) / 2`.
    pub fn center(&self) -> Matrix {
        self.map(Interval::center)
    }

    /// `ΔA = (upper - lower) / 2`, entrywise nonnegative.
    pub fn radius(&self) -> Matrix {
        self.map(Interval::radius)
    }

    pub fn is_degenerate(&self) -> bool {
        self.data.iter().all(Interval::is_degenerate)
    }

    /// Entry-by-entry membership; returns the first offending `(row, col)`.
    pub fn check_member(&self, m: &Matrix) -> std::result::Result<(), (usize, usize)> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return Err((m.rows(), m.cols()));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).contains(m.get(i, j)) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.check_member(m).is_ok()
    }

    pub fn transpose(&self) -> IntervalMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntervalMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `[-upper, -lower]`.
    pub fn neg(&self) -> IntervalMatrix {
        IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Interval::neg).collect(),
        }
    }

    /// Columns whose entries are all degenerate do not depend on a sign choice.
    pub fn varying_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_degenerate()))
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Interval>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }
}

impl fmt::Display for IntervalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalVector(Vec<Interval>);

impl IntervalVector {
    pub fn new(entries: Vec<Interval>) -> Self {
        IntervalVector(entries)
    }

    pub fn thin(values: &[Rational]) -> Self {
        IntervalVector(values.iter().cloned().map(Interval::point).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &Interval {
        &self.0[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.0.iter()
    }

    pub fn entries(&self) -> &[Interval] {
        &self.0
    }

    pub fn lower(&self) -> Vec<Rational> {
        self.0.iter().map(|iv| iv.lo.clone()).collect()
    }

    pub fn upper(&self) -> Vec<Rational> {
        self.0.iter().map(|iv| iv.hi.clone()).collect()
    }

    pub fn center(&self) -> Vec<Rational> {
        self.0.iter().map(Interval::center).collect()
    }

    pub fn radius(&self) -> Vec<Rational> {
        self.0.iter().map(Interval::radius).collect()
    }

    pub fn neg(&self) -> IntervalVector {
        IntervalVector(self.0.iter().map(Interval::neg).collect())
    }

    pub fn is_degenerate(&self) -> bool {
        self.0.iter().all(Interval::is_degenerate)
    }

    /// Indices of entries with nonzero radius.
    pub fn varying(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| !self.0[i].is_degenerate())
            .collect()
    }

    pub fn check_member(&self, v: &[Rational]) -> std::result::Result<(), usize> {
        if v.len() != self.0.len() {
            return Err(v.len());
        }
        match self.0.iter().zip(v).position(|(iv, x)| !iv.contains(x)) {
            Some(i) => Err(i),
            None => Ok(()),
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.check_member(v).is_ok()
    }

    /// `center + diag(p) * radius`: `+1` selects the upper endpoint.
    pub fn vertex(&self, p: &SignVector) -> Vec<Rational> {
        self.0
            .iter()
            .zip(p.iter())
            .map(|(iv, s)| match s {
                Sign::Plus => iv.hi.clone(),
                Sign::Minus => iv.lo.clone(),
            })
            .collect()
    }

    pub fn concat(&self, other: &IntervalVector) -> IntervalVector {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        IntervalVector(v)
    }
}

impl FromIterator<Interval> for IntervalVector {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalVector(iter.into_iter().collect())
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", cells.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_rational(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }
}

/// A vector in `{+1, -1}^k`.
///
/// Sweeps enumerate sign vectors lexicographically with `+1` ordered before
/// `-1`; `+1` in column `j` of an orthant matrix selects the lower endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignVector(signs)
    }

    pub fn from_ints(values: &[i32]) -> Result<Self> {
        values
            .iter()
            .map(|&v| match v {
                1 => Ok(Sign::Plus),
                -1 => Ok(Sign::Minus),
                other => Err(Error::Parse(format!("sign entry must be +1 or -1, got {other}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }

    pub fn all_plus(k: usize) -> Self {
        SignVector(vec![Sign::Plus; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn to_ints(&self) -> Vec<i32> {
        self.0
            .iter()
            .map(|s| match s {
                Sign::Plus => 1,
                Sign::Minus => -1,
            })
            .collect()
    }

    /// All sign vectors of length `len` that agree with `+1` outside
    /// `varying`, in sweep order. The sequence has `2^varying.len()` items.
    pub fn sweep(len: usize, varying: &[usize]) -> SignSweep {
        SignSweep {
            len,
            varying: varying.to_vec(),
            next: Some(0),
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Sign::Plus => "+1",
                Sign::Minus => "-1",
            })
            .collect();
        write!(f, "({})", cells.join(", "))
    }
}

/// Iterator behind [`SignVector::sweep`].
#[derive(Debug, Clone)]
pub struct SignSweep {
    len: usize,
    varying: Vec<usize>,
    next: Option<u128>,
}

impl Iterator for SignSweep {
    type Item = SignVector;

    fn next(&mut self) -> Option<SignVector> {
        let k = self.varying.len();
        let code = self.next?;
        let mut signs = vec![Sign::Plus; self.len];
        // The first varying position is the most significant digit.
        for (rank, &pos) in self.varying.iter().enumerate() {
            if (code >> (k - 1 - rank)) & 1 == 1 {
                signs[pos] = Sign::Minus;
            }
        }
        let last = if k >= 128 { u128::MAX } else { (1u128 << k) - 1 };
        self.next = if code == last { None } else { Some(code + 1) };
        Some(SignVector(signs))
    }
}

/// `A_c - ΔA diag(p)`: column `j` sits at the lower endpoints when
/// `p_j = +1` and at the upper endpoints when `p_j = -1`.
pub fn orthant_matrix(m: &IntervalMatrix, p: &SignVector) -> Result<Matrix> {
    if p.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "sign vector of length {} for a matrix with {} columns",
            p.len(),
            m.cols()
        )));
    }
    Ok(Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        m.get(i, j).endpoint(p.get(j)).clone()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(rat(lo), rat(hi)).unwrap()
    }

    #[test]
    fn center_and_radius() {
        let m = IntervalMatrix::from_rows(vec![vec![iv(0, 1), iv(3, 3), iv(-1, 1)]]).unwrap();
        assert_eq!(m.center().row(0), &[ratio(1, 2), rat(3), rat(0)]);
        assert_eq!(m.radius().row(0), &[ratio(1, 2), rat(0), rat(1)]);
        for (i, entry) in m.entries().iter().enumerate() {
            let (c, r) = (m.center().row(0)[i].clone(), m.radius().row(0)[i].clone());
            assert_eq!(&(&c - &r), entry.lo());
            assert_eq!(&(&c + &r), entry.hi());
        }
    }

    #[test]
    fn empty_interval_is_rejected() {
        assert!(matches!(
            Interval::new(rat(1), rat(0)),
            Err(Error::EmptyInterval { .. })
        ));
    }

    #[test]
    fn orthant_matrix_picks_endpoints() {
        let m = IntervalMatrix::from_rows(vec![vec![iv(0, 1)]]).unwrap();
        let plus = SignVector::from_ints(&[1]).unwrap();
        let minus = SignVector::from_ints(&[-1]).unwrap();
        assert_eq!(orthant_matrix(&m, &plus).unwrap().get(0, 0), &rat(0));
        assert_eq!(orthant_matrix(&m, &minus).unwrap().get(0, 0), &rat(1));

        let sym = IntervalMatrix::from_rows(vec![vec![iv(-1, 1)]]).unwrap();
        let picked = orthant_matrix(&sym, &plus).unwrap();
        assert_eq!(picked.get(0, 0), &rat(-1));
        assert!(sym.contains(&picked));

        assert!(orthant_matrix(&m, &SignVector::all_plus(2)).is_err());
    }

    #[test]
    fn sweep_order_is_lexicographic_plus_first() {
        let all: Vec<Vec<i32>> = SignVector::sweep(2, &[0, 1]).map(|p| p.to_ints()).collect();
        assert_eq!(all, vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]);
        let partial: Vec<Vec<i32>> = SignVector::sweep(3, &[1]).map(|p| p.to_ints()).collect();
        assert_eq!(partial, vec![vec![1, 1, 1], vec![1, -1, 1]]);
        assert_eq!(SignVector::sweep(4, &[]).count(), 1);
    }

    #[test]
    fn grid_points_are_even_and_exact() {
        assert_eq!(iv(0, 1).grid(0), vec![rat(0), rat(1)]);
        assert_eq!(iv(0, 1).grid(1), vec![rat(0), ratio(1, 2), rat(1)]);
        assert_eq!(iv(-1, 1).grid(2).len(), 5);
        assert_eq!(iv(2, 2).grid(3), vec![rat(2)]);
    }

    #[test]
    fn transpose_and_negation_keep_intervals() {
        let m = IntervalMatrix::from_rows(vec![vec![iv(0, 1), iv(2, 3)]]).unwrap();
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (2, 1));
        assert_eq!(t.get(1, 0), &iv(2, 3));
        assert_eq!(m.neg().get(0, 1), &iv(-3, -2));
        assert_eq!(m.neg().neg(), m);
    }
}
