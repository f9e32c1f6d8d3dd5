//! Coefficient reduction modulo a prime and linear algebra over `F_p(t)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{LaurentPoly, PolyMatrix};
use crate::error::{Error, Result};

/// A prime below 2^61 used for randomized rank lower bounds.
pub const LARGE_PRIME: u64 = (1 << 61) - 1;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    mod_pow(a, p - 2, p)
}

pub(crate) fn reduce_bigint(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A Laurent polynomial with coefficients in `F_p`, canonical like [`LaurentPoly`].
#[derive(Clone, PartialEq, Eq)]
pub struct ModLaurent {
    low: i64,
    coeffs: Vec<u64>,
    modulus: u64,
}

impl ModLaurent {
    pub fn zero(modulus: u64) -> Self {
        Self {
            low: 0,
            coeffs: Vec::new(),
            modulus,
        }
    }

    fn from_coeffs(low: i64, mut coeffs: Vec<u64>, modulus: u64) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == coeffs.len() {
            return Self::zero(modulus);
        }
        coeffs.drain(..lead);
        Self {
            low: low + lead as i64,
            coeffs,
            modulus,
        }
    }

    pub fn reduce(p: &LaurentPoly, modulus: u64) -> Self {
        let coeffs = p.coeffs().iter().map(|c| reduce_bigint(c, modulus)).collect();
        Self::from_coeffs(p.low_degree().unwrap_or(0), coeffs, modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Coefficients in `[0, p)`, lowest degree first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.low += k;
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let p = self.modulus;
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            let neg = other.coeffs.iter().map(|&c| (p - c) % p).collect();
            return Self::from_coeffs(other.low, neg, p);
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let mut coeffs = vec![0u64; (high - low) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = (self.low - low) as usize + i;
            coeffs[k] = (coeffs[k] + c) % p;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let k = (other.low - low) as usize + i;
            coeffs[k] = (coeffs[k] + p - c) % p;
        }
        Self::from_coeffs(low, coeffs, p)
    }

    fn mul(&self, other: &Self) -> Self {
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let bound = u128::MAX - (p as u128) * (p as u128);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot += a as u128 * b as u128;
                if *slot >= bound {
                    *slot %= p as u128;
                }
            }
        }
        let coeffs = acc.into_iter().map(|c| (c % p as u128) as u64).collect();
        Self::from_coeffs(self.low + other.low, coeffs, p)
    }

    /// Exact quotient; the divisor must divide.
    fn div_exact(&self, divisor: &Self) -> Self {
        let p = self.modulus;
        assert!(!divisor.is_zero(), "division by zero in F_p[t]");
        if self.is_zero() {
            return Self::zero(p);
        }
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        assert!(n >= m, "inexact division in F_p[t]");
        let inv = mod_inv(divisor.coeffs[m - 1], p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; n - m + 1];
        for k in (0..=n - m).rev() {
            let q = mul_mod(rem[k + m - 1], inv, p);
            if q == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mul_mod(q, d, p)) % p;
            }
            quot[k] = q;
        }
        debug_assert!(rem.iter().all(|&c| c == 0), "inexact division in F_p[t]");
        Self::from_coeffs(self.low - divisor.low, quot, p)
    }
}

impl fmt::Debug for ModLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = LaurentPoly::from_coeffs(
            self.low,
            self.coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        );
        write!(f, "{lifted} (mod {})", self.modulus)
    }
}

/// Dense matrix over `F_p[t, t^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPolyMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<ModLaurent>,
}

impl ModPolyMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> &ModLaurent {
        &self.data[r * self.cols + c]
    }

    /// Rank over the field `F_p(t)` by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let p = self.modulus;
        // clear negative exponents row by row; rank is unchanged
        let mut a: Vec<Vec<ModLaurent>> = (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let low = row.iter().filter_map(|e| e.low_degree()).min().unwrap_or(0);
                row.iter().map(|e| e.shift(-low)).collect()
            })
            .collect();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = ModLaurent::from_coeffs(0, vec![1], p);
        for col in 0..n {
            if rank == m {
                break;
            }
            let pivot = (rank..m)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| a[r][col].coeffs.len());
            let Some(pr) = pivot else { continue };
            a.swap(rank, pr);
            let piv = a[rank][col].clone();
            for r in rank + 1..m {
                let factor = a[r][col].clone();
                for c in col + 1..n {
                    let v = piv.mul(&a[r][c]).sub(&factor.mul(&a[rank][c]));
                    a[r][c] = v.div_exact(&prev);
                }
                a[r][col] = ModLaurent::zero(p);
            }
            prev = piv;
            rank += 1;
        }
        rank
    }
}

/// Entrywise reduction of coefficients modulo the prime `ell`.
pub fn reduce_mod(m: &PolyMatrix, ell: u64) -> Result<ModPolyMatrix> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    Ok(ModPolyMatrix {
        rows: m.rows(),
        cols: m.cols(),
        modulus: ell,
        data: m.entries().iter().map(|e| ModLaurent::reduce(e, ell)).collect(),
    })
}

/// Rank of `m` over `F_ell(t)` (equivalently over `F_ell((t))`).
pub fn rank_mod(m: &PolyMatrix, ell: u64) -> Result<usize> {
    Ok(reduce_mod(m, ell)?.rank())
}

/// Rank of the scalar matrix `m(x)` over `F_p`. A lower bound for the rank
/// over `Q(t)` for every choice of `x != 0`.
pub fn rank_at_point(m: &PolyMatrix, x: u64, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)].eval_mod(x, p)).collect())
        .collect();
    scalar_rank_mod(&mut a, p)
}

pub(crate) fn scalar_rank_mod(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = mod_inv(a[rank][col], p);
        for r in rank + 1..rows {
            let f = mul_mod(a[r][col], inv, p);
            if f == 0 {
                continue;
            }
            for c in col..cols {
                let sub = mul_mod(f, a[rank][c], p);
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(rows: usize, cols: usize, entries: &[&str]) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, |r, c| entries[r * cols + c].parse().unwrap())
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(5) && is_prime(13) && is_prime(LARGE_PRIME));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(3215031751));
    }

    #[test]
    fn reduction_examples() {
        let m = pm(1, 1, &["2 + t"]);
        let r = reduce_mod(&m, 2).unwrap();
        assert_eq!(r.get(0, 0).coeffs(), &[1]);
        assert_eq!(r.get(0, 0).low_degree(), Some(1));
        assert_eq!(r.rank(), 1);

        let five = pm(1, 1, &["5"]);
        assert!(reduce_mod(&five, 5).unwrap().get(0, 0).is_zero());
        assert_eq!(rank_mod(&five, 5).unwrap(), 0);
        assert!(matches!(rank_mod(&five, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn rank_drops_under_reduction() {
        // det = t^2 + 4t + 1, nonzero mod 3
        let m = pm(2, 2, &["t + 1", "2*t^-1", "t", "t + 3"]);
        assert_eq!(rank_mod(&m, 3).unwrap(), 2);
        let dep = pm(2, 2, &["t + 1", "t", "3*t + 3", "3*t + 2"]);
        assert_eq!(rank_mod(&dep, 2).unwrap(), 1);
        assert_eq!(rank_mod(&dep, 7).unwrap(), 2);
    }
}
