//! Exact rational linear algebra.
//!
//! Everything here works over [`Rational`], an arbitrary-precision fraction
//! kept in lowest terms with a positive denominator. Elimination picks the
//! first nonzero pivot in each column; there is no numerical pivoting.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always reduced, denominator positive.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats as `"num/den"`, dropping `/1` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("cannot parse rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self> {
        let ncols = columns.len();
        let nrows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::DimensionMismatch {
                    expected: nrows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Row-reduces in place, returning the pivot columns and the sign of
    /// the row permutation applied.
    fn eliminate(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                negated = !negated;
            }
            let pivot = self[(r, c)].clone();
            for i in r + 1..self.rows {
                if self[(i, c)].is_zero() {
                    continue;
                }
                let factor = &self[(i, c)] / &pivot;
                for j in c..self.cols {
                    let delta = &factor * &self[(r, j)];
                    self[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, negated)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let (pivots, negated) = m.eliminate();
        if pivots.len() < self.rows {
            return Ok(Rational::zero());
        }
        let mut det = (0..self.rows).fold(Rational::one(), |acc, i| acc * &m[(i, i)]);
        if negated {
            det = -det;
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0.len()
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n)] = b[i].clone();
        }
        let (pivots, _) = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = aug[(i, n)].clone();
            for j in i + 1..n {
                acc -= &aug[(i, j)] * &x[j];
            }
            x[i] = acc / &aug[(i, i)];
        }
        Ok(x)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[Vec<Rational>]) -> Result<usize> {
    let (first, rest) = points.split_first().ok_or(Error::Empty)?;
    let dim = first.len();
    let mut rows = Vec::with_capacity(rest.len());
    for p in rest {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        rows.push(p.iter().zip(first).map(|(a, b)| a - b).collect());
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(RatMatrix::from_rows(rows)?.rank())
}

/// Volume of `conv(points)` relative to the probability simplex that
/// contains them, i.e. `|det|` of the matrix with the points as columns.
pub fn simplex_volume_ratio(points: &[Vec<Rational>]) -> Result<Rational> {
    let dim = points.first().ok_or(Error::Empty)?.len();
    if points.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: points.len(),
        });
    }
    for (index, p) in points.iter().enumerate() {
        let in_simplex = p.len() == dim
            && p.iter().all(|v| !v.is_negative())
            && p.iter().sum::<Rational>().is_one();
        if !in_simplex {
            return Err(Error::NotInSimplex { index });
        }
    }
    Ok(RatMatrix::from_columns(points)?.determinant()?.abs())
}
