//! Exact rational linear algebra and lattice helpers.
//!
//! Everything here works over arbitrary-precision integers and rationals, so
//! results are exact and there is no tolerance anywhere downstream.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number (always in lowest terms, positive denominator).
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("vector length {found} does not match ambient rank {expected}")]
    Length { expected: usize, found: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("zero vector has no primitive generator")]
    ZeroVector,
}

/// A lattice point with arbitrary-precision coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn negated(&self) -> IntVector {
        IntVector(self.0.iter().map(|c| -c).collect())
    }

    /// Gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().cloned().map(Rational::from_integer).collect()
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Divides `v` by the gcd of its coordinates, keeping the sign.
pub fn primitive(v: &IntVector) -> Result<IntVector, LinAlgError> {
    let g = v.content();
    if g.is_zero() {
        return Err(LinAlgError::ZeroVector);
    }
    Ok(IntVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinAlgError> {
        if rows * cols != entries.len() {
            return Err(LinAlgError::Shape { rows, cols, len: entries.len() });
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    /// Builds a matrix from rows; `cols` disambiguates the empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::Ragged { row: i, expected: cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(RatMatrix { rows: n, cols, entries })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    /// Pivots are the first nonzero entry found scanning down each column.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &factor * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "[{}]", self.row(i).iter().join(", "))?;
        }
        Ok(())
    }
}

/// Expresses `target` in the span of `basis`.
///
/// Returns `Ok(None)` when `target` is outside the span. The basis must be
/// linearly independent so the coefficients are unique.
pub fn solve_unique(basis: &[IntVector], target: &IntVector) -> Result<Option<Vec<Rational>>, LinAlgError> {
    let d = target.len();
    if let Some(bad) = basis.iter().find(|b| b.len() != d) {
        return Err(LinAlgError::Length { expected: d, found: bad.len() });
    }
    let k = basis.len();
    // augmented system [b_1 ... b_k | target], one row per coordinate
    let mut m = RatMatrix::zeros(d, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, c) in b.coords().iter().enumerate() {
            m.set(i, j, Rational::from_integer(c.clone()));
        }
    }
    for (i, c) in target.coords().iter().enumerate() {
        m.set(i, k, Rational::from_integer(c.clone()));
    }
    let pivots = m.rref();
    let basis_rank = pivots.iter().filter(|&&p| p < k).count();
    if basis_rank < k {
        return Err(LinAlgError::DependentBasis);
    }
    if pivots.contains(&k) {
        return Ok(None);
    }
    Ok(Some((0..k).map(|i| m.get(i, k).clone()).collect()))
}

/// Rank of a list of integer vectors (as rows).
pub fn int_rank(vectors: &[IntVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let rows = vectors.iter().map(IntVector::to_rationals).collect();
    RatMatrix::from_rows(first.len(), rows).map_or(0, |m| m.rank())
}

/// Decides whether some `x` in the standard simplex `{x >= 0, sum x = 1}`
/// satisfies `row . x >= 0` for every given row.
///
/// The feasible region is a polytope, so it is nonempty iff it has a vertex;
/// vertices are found by making `k - 1` constraints tight alongside the
/// simplex equation.
pub fn feasible_on_simplex(rows: &[Vec<Rational>], k: usize) -> bool {
    if k == 0 {
        return false;
    }
    let mut constraints: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut e = vec![Rational::zero(); k];
            e[i] = Rational::one();
            e
        })
        .collect();
    constraints.extend(rows.iter().cloned());
    let satisfied = |x: &[Rational]| {
        constraints.iter().all(|g| !g.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>().is_negative())
    };
    for tight in (0..constraints.len()).combinations(k - 1) {
        let mut m = RatMatrix::zeros(k, k + 1);
        for (r, &ci) in tight.iter().enumerate() {
            for (j, a) in constraints[ci].iter().enumerate() {
                m.set(r, j, a.clone());
            }
        }
        for j in 0..k {
            m.set(k - 1, j, Rational::one());
        }
        m.set(k - 1, k, Rational::one());
        let pivots = m.rref();
        if pivots.len() != k || pivots.contains(&k) {
            continue;
        }
        let x: Vec<Rational> = (0..k).map(|i| m.get(i, k).clone()).collect();
        if satisfied(&x) {
            return true;
        }
    }
    false
}
