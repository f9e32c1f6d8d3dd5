use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::modular::{rank_at_point, LARGE_PRIME};
use super::LaurentPoly;
use crate::error::{Error, Result};

/// Dense matrix of Laurent polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// The submatrix on the given row and column index lists, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &PolyMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(row + r, col + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(row + r, col + c)].clone())
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = LaurentPoly::zero();
            for k in 0..self.cols {
                let a = &self[(r, k)];
                let b = &other[(k, c)];
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub(crate) fn rows_vec(&self) -> Vec<Vec<LaurentPoly>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).take(self.rows).collect()
    }

    /// Builds from row vectors of equal length `cols`.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Determinant by evaluation and interpolation.
    ///
    /// Row (or column) powers of `t` are factored out so every entry lies in
    /// `Z[t]`, the integer determinant is taken at `D + 1` consecutive integer
    /// nodes starting at 2 (`D` a degree bound), and the polynomial is
    /// reconstructed exactly.
    pub fn det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        if self.rows_vec().iter().any(|r| r.iter().all(LaurentPoly::is_zero)) {
            return Ok(LaurentPoly::zero());
        }
        let by_rows = DegreeShift::rows(self);
        let by_cols = DegreeShift::rows(&self.transpose());
        let (work, shift) = if by_rows.bound <= by_cols.bound {
            (self.clone(), by_rows)
        } else {
            (self.transpose(), by_cols)
        };
        let shifted = Self::from_fn(n, n, |r, c| work[(r, c)].shift(-shift.lows[r]));
        let nodes: Vec<BigInt> = (0..=shift.bound).map(|i| BigInt::from(2 + i as i64)).collect();
        let values: Vec<BigInt> = nodes
            .par_iter()
            .map(|x| {
                let mut a: Vec<Vec<BigInt>> = (0..n)
                    .map(|r| (0..n).map(|c| shifted[(r, c)].eval_poly(x)).collect())
                    .collect();
                bareiss_det(&mut a)
            })
            .collect();
        let poly = interpolate_consecutive(2, &values);
        Ok(poly.shift(shift.lows.iter().sum()))
    }

    /// Determinant by fraction-free (Bareiss) elimination over `Z[t, t^-1]`.
    /// Reference path for [`det`](Self::det).
    pub fn det_symbolic(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut a = self.rows_vec();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| (a[r][k].span(), r));
            let Some(pr) = pivot else {
                return Ok(LaurentPoly::zero());
            };
            if pr != k {
                a.swap(pr, k);
                negate = !negate;
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            rest.par_iter_mut().for_each(|row| {
                let factor = row[k].clone();
                for c in k + 1..n {
                    let v = &(&pivot_row[k] * &row[c]) - &(&factor * &pivot_row[c]);
                    row[c] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
                row[k] = LaurentPoly::zero();
            });
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank over the rational function field `Q(t)`.
    ///
    /// A modular evaluation gives a certified lower bound; when it already
    /// reaches `min(rows, cols)` that is the answer, otherwise the rank is
    /// settled by fraction-free elimination.
    pub fn rank_over_function_field(&self) -> usize {
        let full = self.rows.min(self.cols);
        if full == 0 {
            return 0;
        }
        if rank_at_point(self, 1_000_003, LARGE_PRIME) == full {
            return full;
        }
        self.rank_exact()
    }

    /// Rank by fraction-free elimination with exact pivoting; no shortcuts.
    pub fn rank_exact(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.rows_vec();
        let mut rank = 0;
        let mut prev = LaurentPoly::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let pivot = (rank..m)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| (a[r][col].span(), r));
            let Some(pr) = pivot else { continue };
            a.swap(rank, pr);
            let (top, rest) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            rest.par_iter_mut().for_each(|row| {
                let factor = row[col].clone();
                for c in col + 1..n {
                    let v = &(&pivot_row[col] * &row[c]) - &(&factor * &pivot_row[c]);
                    row[c] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
                row[col] = LaurentPoly::zero();
            });
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }
}

struct DegreeShift {
    lows: Vec<i64>,
    bound: usize,
}

impl DegreeShift {
    /// Per-row lowest exponents and the sum of per-row degree spans.
    fn rows(m: &PolyMatrix) -> Self {
        let mut lows = Vec::with_capacity(m.rows);
        let mut bound = 0usize;
        for r in 0..m.rows {
            let row = &m.data[r * m.cols..(r + 1) * m.cols];
            let lo = row.iter().filter_map(|e| e.low_degree()).min().unwrap_or(0);
            let hi = row.iter().filter_map(|e| e.high_degree()).max().unwrap_or(lo);
            lows.push(lo);
            bound += (hi - lo) as usize;
        }
        Self { lows, bound }
    }
}

/// Exact integer determinant by Bareiss elimination; consumes `a`.
pub fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pr) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pr != k {
            a.swap(pr, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                for c in k + 1..n {
                    row[c] = &row[c] * &pivot_row[k] / &prev;
                }
                continue;
            }
            for c in k + 1..n {
                let v = &pivot_row[k] * &row[c] - &row[k] * &pivot_row[c];
                row[c] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = top[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The unique polynomial of degree `< values.len()` through
/// `(x0 + i, values[i])`; panics if it does not have integer coefficients.
pub(crate) fn interpolate_consecutive(x0: i64, values: &[BigInt]) -> LaurentPoly {
    let m = values.len();
    if m == 0 {
        return LaurentPoly::zero();
    }
    // forward differences
    let mut diffs = values.to_vec();
    let mut lead = Vec::with_capacity(m);
    for k in 0..m {
        lead.push(diffs[0].clone());
        for i in 0..m - 1 - k {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    // p(x) = sum_k lead[k] * C(x - x0, k); scale by (m-1)! to stay integral
    let mut fact = vec![BigInt::one(); m];
    for k in 1..m {
        fact[k] = &fact[k - 1] * BigInt::from(k as u64);
    }
    let total = &fact[m - 1];
    let mut acc = vec![BigInt::zero(); m];
    let mut falling = vec![BigInt::one()]; // prod_{j<k} (x - x0 - j)
    for k in 0..m {
        if !lead[k].is_zero() {
            let w = &lead[k] * (total / &fact[k]);
            for (i, c) in falling.iter().enumerate() {
                acc[i] += &w * c;
            }
        }
        if k + 1 < m {
            let root = BigInt::from(x0 + k as i64);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &root;
            }
            falling = next;
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            let (q, r) = num_integer::Integer::div_rem(&c, total);
            assert!(r.is_zero(), "interpolant is not integral");
            q
        })
        .collect();
    LaurentPoly::from_coeffs(0, coeffs)
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = LaurentPoly;
    fn index(&self, (r, c): (usize, usize)) -> &LaurentPoly {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut LaurentPoly {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
