//! Twisted Alexander invariants as Reidemeister torsion, and the monicness
//! obstruction to fibring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::novikov::{build_complex, default_minor, TwistedComplex};
use crate::presentation::Presentation;
use crate::reps::MatrixRep;

/// `numerator / denominator`, defined up to multiplication by `+-t^k`.
///
/// The numerator is the determinant of the twisted Fox Jacobian with one
/// generator's rows and the dropped relators' columns removed; the
/// denominator is the determinant of that generator's `rho(s) t - I` block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedAlexander {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    pub dropped_generator: usize,
    pub dropped_relators: Vec<usize>,
}

impl TwistedAlexander {
    /// Exact quotient, when the denominator divides the numerator in
    /// `Z[t, t^-1]`.
    pub fn quotient(&self) -> Option<LaurentPoly> {
        self.numerator.div_exact(&self.denominator)
    }

    /// Same invariant after cross-multiplication, up to `+-t^k`.
    pub fn equivalent(&self, other: &TwistedAlexander) -> bool {
        (&self.numerator * &other.denominator).eq_up_to_unit(&(&other.numerator * &self.denominator))
    }
}

/// Whether the torsion, as an element of `Z((t))`, has lowest coefficient
/// `+-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonicVerdict {
    Monic,
    NotMonic,
}

impl MonicVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            MonicVerdict::Monic => "monic",
            MonicVerdict::NotMonic => "not-monic",
        }
    }

    /// What the verdict says about fibring.
    pub fn fibering_implication(self) -> &'static str {
        match self {
            MonicVerdict::Monic => "monic: no obstruction to fibring from this representation",
            MonicVerdict::NotMonic => "not monic: Novikov homology is nonzero, so the link is not fibred",
        }
    }
}

/// Computes the invariant from the complex of `p` and `r`.
///
/// `drop_relators` must leave exactly `g - 1` relators. For a knot's
/// Wirtinger presentation any single relator may be dropped; for connected
/// sums drop one relator from each summand.
pub fn twisted_alexander(
    p: &Presentation,
    r: &MatrixRep,
    drop_gen: usize,
    drop_relators: &[usize],
) -> Result<TwistedAlexander> {
    let c = build_complex(p, r)?;
    twisted_alexander_from_complex(&c, drop_gen, drop_relators)
}

/// As [`twisted_alexander`], reusing a built complex.
pub fn twisted_alexander_from_complex(
    c: &TwistedComplex,
    drop_gen: usize,
    drop_relators: &[usize],
) -> Result<TwistedAlexander> {
    if drop_gen >= c.generators {
        return Err(Error::InvalidArgument(format!("no generator {drop_gen}")));
    }
    if let Some(&bad) = drop_relators.iter().find(|&&i| i >= c.relators) {
        return Err(Error::InvalidArgument(format!("no relator {bad}")));
    }
    let keep: Vec<usize> = (0..c.relators).filter(|i| !drop_relators.contains(i)).collect();
    if keep.len() + 1 != c.generators {
        return Err(Error::InvalidArgument(format!(
            "{} relators remain for {} generators; need one fewer than the generators",
            keep.len(),
            c.generators
        )));
    }
    let denominator = c.d1_block(drop_gen).det()?;
    if denominator.is_zero() {
        return Err(Error::ZeroPolynomial("denominator vanishes for this generator"));
    }
    let numerator = c.minor(drop_gen, &keep).det()?;
    if numerator.is_zero() {
        return Err(Error::AlexanderUndefined(
            "complex is not acyclic over the function field; use the Novikov profile instead".into(),
        ));
    }
    let mut dropped: Vec<usize> = drop_relators.to_vec();
    dropped.sort_unstable();
    dropped.dedup();
    Ok(TwistedAlexander {
        numerator,
        denominator,
        dropped_generator: drop_gen,
        dropped_relators: dropped,
    })
}

/// Default drop choice for a complex: the last generator with a unit `d1`
/// block and the relators left out by the greedy minor selection (the last
/// relator of a knot's Wirtinger presentation, one relator per summand of
/// a connected sum).
pub fn default_drops(c: &TwistedComplex) -> Option<(usize, Vec<usize>)> {
    let (gen, keep) = default_minor(c)?;
    let dropped = (0..c.relators).filter(|i| !keep.contains(i)).collect();
    Some((gen, dropped))
}

/// [`twisted_alexander`] with [`default_drops`].
pub fn twisted_alexander_default(p: &Presentation, r: &MatrixRep) -> Result<TwistedAlexander> {
    let c = build_complex(p, r)?;
    let (gen, drops) = default_drops(&c).ok_or_else(|| {
        Error::AlexanderUndefined(
            "no nonsingular square minor; use the Novikov profile instead".into(),
        )
    })?;
    twisted_alexander_from_complex(&c, gen, &drops)
}

/// Monic iff numerator and denominator have lowest coefficients of equal
/// absolute value; the lowest coefficient of the quotient in `Z((t))` is
/// their ratio.
pub fn monic_verdict(a: &TwistedAlexander) -> Result<MonicVerdict> {
    let (Some(top), Some(bottom)) = (a.numerator.lowest_coeff(), a.denominator.lowest_coeff())
    else {
        return Err(Error::AlexanderUndefined("zero numerator or denominator".into()));
    };
    Ok(if top.magnitude() == bottom.magnitude() {
        MonicVerdict::Monic
    } else {
        MonicVerdict::NotMonic
    })
}

/// Display-ready view of an invariant with its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderSummary {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    /// Numerator and denominator shifted to lowest degree 0 with positive
    /// lowest coefficient.
    pub normalized: String,
    pub verdict: MonicVerdict,
    pub implication: String,
}

pub fn summarize(a: &TwistedAlexander) -> Result<AlexanderSummary> {
    let verdict = monic_verdict(a)?;
    Ok(AlexanderSummary {
        numerator: a.numerator.clone(),
        denominator: a.denominator.clone(),
        normalized: format!(
            "({}) / ({})",
            a.numerator.unit_normalized(),
            a.denominator.unit_normalized()
        ),
        verdict,
        implication: verdict.fibering_implication().to_string(),
    })
}

/// Gluing formula for a connected sum along the meridian annulus:
/// `tau12 = tau1 tau2 det(rho(mu) t - I)`, checked cross-multiplied up to
/// `+-t^k`.
///
/// The meridian factor is taken to be `a12.denominator`, which is right
/// whenever the dropped generator of the sum is a meridian, as every
/// Wirtinger generator of a knot is. Equivalently the numerators multiply
/// once the denominators agree.
pub fn tau_product_check(a1: &TwistedAlexander, a2: &TwistedAlexander, a12: &TwistedAlexander) -> bool {
    let lhs = &(&a12.numerator * &a1.denominator) * &a2.denominator;
    let rhs = &(&(&a1.numerator * &a2.numerator) * &a12.denominator) * &a12.denominator;
    lhs.eq_up_to_unit(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::presentation::connected_sum;

    fn classical(p: &Presentation) -> TwistedAlexander {
        twisted_alexander_default(p, &MatrixRep::trivial(p.generator_count(), 1)).unwrap()
    }

    #[test]
    fn trefoil_classical() {
        let a = classical(&fixtures::trefoil());
        assert!(a.numerator.eq_up_to_unit(&"t^2 - t + 1".parse().unwrap()));
        assert!(a.denominator.eq_up_to_unit(&"t - 1".parse().unwrap()));
        assert_eq!(monic_verdict(&a).unwrap(), MonicVerdict::Monic);
        let s = summarize(&a).unwrap();
        assert_eq!(s.normalized, "(1 - t + t^2) / (1 - t)");
    }

    #[test]
    fn unknot_classical() {
        let a = classical(&fixtures::unknot());
        assert!(a.numerator.is_one());
        assert_eq!(monic_verdict(&a).unwrap(), MonicVerdict::Monic);
    }

    #[test]
    fn drop_choice_checks() {
        let t = fixtures::trefoil();
        let r = MatrixRep::trivial(3, 1);
        assert!(twisted_alexander(&t, &r, 0, &[]).is_err());
        assert!(twisted_alexander(&t, &r, 5, &[0]).is_err());
        let a = twisted_alexander(&t, &r, 0, &[1]).unwrap();
        assert!(a.equivalent(&classical(&t)));
    }

    #[test]
    fn sum_of_trefoils_multiplies() {
        let t = fixtures::trefoil();
        let s = connected_sum(&t, &t).unwrap();
        let a = classical(&t);
        let a12 = classical(&s);
        // one relator from each summand
        assert_eq!(a12.dropped_relators, vec![2, 5]);
        assert!(tau_product_check(&a, &a, &a12));
        assert!(!tau_product_check(&a, &classical(&fixtures::unknot()), &a12));
    }
}
