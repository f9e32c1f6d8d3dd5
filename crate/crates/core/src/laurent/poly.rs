use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer Laurent polynomial in `t`.
///
/// Stored as the exponent of the lowest term plus the dense coefficient run
/// up to the highest term. Both ends of the run are nonzero; zero is the
/// empty run with `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// Builds `sum_i coeffs[i] * t^(low + i)`, trimming zero ends.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Exponent of the lowest-degree term, `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `high_degree - low_degree`; zero for the zero polynomial.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Coefficient of the lowest-degree term.
    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// A unit of `Z[t, t^-1]`: `±t^k`.
    pub fn is_laurent_unit(&self) -> bool {
        self.is_monomial() && self.coeffs[0].abs().is_one()
    }

    /// A unit of the Novikov ring `Z((t))`: nonzero with lowest coefficient `±1`.
    pub fn is_novikov_unit(&self) -> bool {
        self.lowest_coeff().is_some_and(|c| c.abs().is_one())
    }

    /// Monicness in the Novikov sense. Same predicate as
    /// [`is_novikov_unit`](Self::is_novikov_unit), but zero is rejected.
    pub fn is_monic(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("monicness is undefined for 0"));
        }
        Ok(self.is_novikov_unit())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The substitution `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        match self.high_degree() {
            None => Self::zero(),
            Some(hi) => Self {
                low: -hi,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Representative of the class `{±t^k * self}` with lowest degree 0 and
    /// positive lowest coefficient.
    pub fn unit_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let sign = self.coeffs[0].is_negative();
        Self {
            low: 0,
            coeffs: if sign {
                self.coeffs.iter().map(|c| -c).collect()
            } else {
                self.coeffs.clone()
            },
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.unit_normalized() == other.unit_normalized()
    }

    /// Evaluates at an integer point. Requires no negative exponents.
    pub fn eval_poly(&self, x: &BigInt) -> BigInt {
        assert!(
            self.is_zero() || self.low >= 0,
            "eval_poly on a polynomial with negative exponents"
        );
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.low > 0 {
            acc *= num_traits::pow(x.clone(), self.low as usize);
        }
        acc
    }

    /// Evaluates at `x` in `F_p` (`x` nonzero when negative exponents occur).
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        use super::modular::{mod_inv, mod_pow, reduce_bigint};
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = ((acc as u128 * x as u128 + reduce_bigint(c, p) as u128) % p as u128) as u64;
        }
        let factor = if self.low >= 0 {
            mod_pow(x, self.low as u64, p)
        } else {
            mod_pow(mod_inv(x, p), (-self.low) as u64, p)
        };
        ((acc as u128 * factor as u128) % p as u128) as u64
    }

    /// Exact quotient in `Z[t, t^-1]`, `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let d = &divisor.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for c in &self.coeffs {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            return Some(Self {
                low: self.low - divisor.low,
                coeffs: out,
            });
        }
        // Both operands have nonzero constant term after the shift, so long
        // division from the top in Z[t] decides divisibility.
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        if n < m {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let lead = &divisor.coeffs[m - 1];
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - divisor.low, quot))
    }

    /// Adds `c * t^exp` in place.
    pub(crate) fn add_scaled_monomial(&mut self, c: &BigInt, exp: i64) {
        if c.is_zero() {
            return;
        }
        let high = match self.high_degree() {
            Some(h) if exp >= self.low && exp <= h => h,
            _ => {
                *self = &*self + &Self::monomial(c.clone(), exp);
                return;
            }
        };
        let idx = (exp - self.low) as usize;
        self.coeffs[idx] += c;
        if self.coeffs[idx].is_zero() && (exp == self.low || exp == high) {
            *self = Self::from_coeffs(self.low, std::mem::take(&mut self.coeffs));
        }
    }
}

fn add_impl(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b.clone() } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high_degree().unwrap().max(b.high_degree().unwrap());
    let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - low) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.low - low) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::from_coeffs(low, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.coeffs.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total: by lowest degree, then coefficient run.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for LaurentPoly {
    /// `c_low*t^low + ... + c_high*t^high`, lowest degree first, unit
    /// coefficients and `^1` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "{var}")?,
                (_, false) => write!(f, "{a}*{var}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the display form and the usual shorthands (`t`, `-t^2`, `3*t`, `2t^-1`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::PolyParse(format!("{msg} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            let is_sign = ch == '+' || ch == '-';
            if is_sign && prev != Some('^') {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if prev.is_some() && prev != Some('+') && prev != Some('-') {
                    return Err(bad("dangling sign"));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        terms.push((neg, cur));

        let mut acc = LaurentPoly::zero();
        for (neg, term) in terms {
            let (coef_str, exp) = match term.find('t') {
                None => (term.as_str(), 0i64),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.trim_start_matches('(')
                            .trim_end_matches(')')
                            .parse::<i64>()
                            .map_err(|_| bad("bad exponent"))?
                    } else {
                        return Err(bad("unexpected text after t"));
                    };
                    (term[..pos].trim_end_matches('*'), exp)
                }
            };
            let mut c = if coef_str.is_empty() {
                BigInt::one()
            } else {
                coef_str
                    .parse::<BigInt>()
                    .map_err(|_| bad("bad coefficient"))?
            };
            if neg {
                c = -c;
            }
            acc = &acc + &LaurentPoly::monomial(c, exp);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    low: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::from_coeffs(raw.low, coeffs))
    }
}
