//! Square matrices acting on column vectors, stored row-major.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;
pub type FloatMatrix = Matrix<f64>;

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Degenerate("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_flat(n: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        Ok(Matrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Entries flattened row-major; the coordinates of the matrix in `n²`-space.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n].clone()).collect();
        Matrix { n, entries }
    }
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(x.len(), self.n);
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Matrix { n: self.n, entries }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a * c)
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + c * b).collect();
        Matrix { n: self.n, entries }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    /// Trace pairing `Σ_ij self_ij · other_ij`.
    pub fn pair(&self, other: &Self) -> Rational {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> FloatMatrix {
        self.map(to_f64)
    }
}

impl FloatMatrix {
    pub fn zero_f64(n: usize) -> Self {
        Matrix { n, entries: vec![0.0; n * n] }
    }

    pub fn identity_f64(n: usize) -> Self {
        let mut m = Self::zero_f64(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn scale_f64(&self, c: f64) -> Self {
        self.map(|a| a * c)
    }

    pub fn add_f64(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Matrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn entries_mut(&mut self) -> &mut [f64] {
        &mut self.entries
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// An operator on an `n`-dimensional space, exact or floating.
///
/// Floating entries force the sampled path.
#[derive(Clone, Debug, PartialEq)]
pub enum Operator {
    Exact(RatMatrix),
    Approx(FloatMatrix),
}

impl Operator {
    pub fn n(&self) -> usize {
        match self {
            Operator::Exact(m) => m.n(),
            Operator::Approx(m) => m.n(),
        }
    }

    pub fn to_f64(&self) -> FloatMatrix {
        match self {
            Operator::Exact(m) => m.to_f64(),
            Operator::Approx(m) => m.clone(),
        }
    }
}

impl From<RatMatrix> for Operator {
    fn from(m: RatMatrix) -> Self {
        Operator::Exact(m)
    }
}

impl From<FloatMatrix> for Operator {
    fn from(m: FloatMatrix) -> Self {
        Operator::Approx(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int_vec;

    #[test]
    fn apply_and_pairing() {
        let t = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(t.apply(&int_vec(&[1, -1])), int_vec(&[-1, -1]));
        assert_eq!(t.pair(&RatMatrix::unit(2, 1, 0)), int(3));
        assert_eq!(t.transpose().get(0, 1), &int(3));
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3)]]).is_err());
    }
}
