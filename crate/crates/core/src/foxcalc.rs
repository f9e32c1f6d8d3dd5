//! Fox free differential calculus on the integral group ring of a free group.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::presentation::{FreeWord, GeneratorId, Letter, Presentation};

/// Finite formal sum `sum c_w w` with integer coefficients over reduced words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(FreeWord::identity())
    }

    pub fn word(w: FreeWord) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: FreeWord, c: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a word.
    pub fn left_mul_word(&self, w: &FreeWord) -> Self {
        let mut out = Self::zero();
        for (v, c) in &self.terms {
            out.add_term(w.mul(v), c.clone());
        }
        out
    }

    /// Image under the augmentation to the integers.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Push forward along `xi`, as a map from exponents to coefficients.
    pub fn abelianize(&self, xi: &[i64]) -> BTreeMap<i64, BigInt> {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (w, c) in &self.terms {
            *out.entry(w.exponent_sum(xi)).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayElem { elem: self, names }
    }
}

struct DisplayElem<'a> {
    elem: &'a GroupRingElem,
    names: &'a [String],
}

impl fmt::Display for DisplayElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.elem.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "[{}]", w.display_with(self.names))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Fox derivative of `w` with respect to generator `gen`.
///
/// Uses `d(uv) = d(u) + u d(v)`, `d(x) = 1`, `d(x^-1) = -x^-1`, reading the
/// word left to right while tracking the prefix.
pub fn fox_derivative(w: &FreeWord, gen: GeneratorId) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l.gen == gen {
            if l.sign > 0 {
                out.add_term(FreeWord::new(prefix.iter().copied()), BigInt::one());
            } else {
                let with = FreeWord::new(prefix.iter().copied().chain([l]));
                out.add_term(with, -BigInt::one());
            }
        }
        prefix.push(l);
    }
    out
}

/// Fox Jacobian, indexed `[relator][generator]`.
pub fn jacobian(p: &Presentation) -> Vec<Vec<GroupRingElem>> {
    p.relators()
        .iter()
        .map(|r| {
            (0..p.generator_count())
                .map(|j| fox_derivative(r, GeneratorId(j)))
                .collect()
        })
        .collect()
}

/// Checks the fundamental formula `sum_j d(w)/dx_j (x_j - 1) = w - 1` in the
/// free group ring.
pub fn fundamental_check(w: &FreeWord) -> bool {
    let generator_count = w.generators().map(|g| g.0 + 1).max().unwrap_or(0);
    let mut lhs = GroupRingElem::zero();
    for j in 0..generator_count {
        let d = fox_derivative(w, GeneratorId(j));
        if d.is_zero() {
            continue;
        }
        let x_minus_one = GroupRingElem::word(FreeWord::generator(j)).sub(&GroupRingElem::one());
        lhs = lhs.add(&d.mul(&x_minus_one));
    }
    let rhs = GroupRingElem::word(w.clone()).sub(&GroupRingElem::one());
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(usize, i8)]) -> FreeWord {
        FreeWord::from_pairs(pairs)
    }

    #[test]
    fn derivative_of_letters() {
        let x = GeneratorId(0);
        assert_eq!(fox_derivative(&w(&[(0, 1)]), x), GroupRingElem::one());
        assert_eq!(
            fox_derivative(&w(&[(0, -1)]), x),
            GroupRingElem::term(w(&[(0, -1)]), BigInt::from(-1))
        );
        assert!(fox_derivative(&w(&[(1, 1)]), x).is_zero());
    }

    #[test]
    fn commutator() {
        // d/dx (x y x^-1 y^-1) = 1 - x y x^-1
        let c = w(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        let expected = GroupRingElem::one().sub(&GroupRingElem::word(w(&[(0, 1), (1, 1), (0, -1)])));
        assert_eq!(fox_derivative(&c, GeneratorId(0)), expected);
        assert!(fundamental_check(&c));
        assert_eq!(fox_derivative(&c, GeneratorId(0)).augmentation(), BigInt::zero());
    }

    #[test]
    fn power_derivative() {
        // d/dx x^3 = 1 + x + x^2
        let d = fox_derivative(&w(&[(0, 1), (0, 1), (0, 1)]), GeneratorId(0));
        assert_eq!(d.len(), 3);
        assert_eq!(d.abelianize(&[1]).keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn display() {
        let names = vec!["a".to_string(), "b".to_string()];
        let c = w(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        let d = fox_derivative(&c, GeneratorId(0));
        assert_eq!(d.display_with(&names).to_string(), "[1] - [a b a^-1]");
    }
}
