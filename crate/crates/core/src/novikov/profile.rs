use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::reduce::{replay, unit_pivot_reduce};
use super::{d1_epi_check, TwistedComplex};
use crate::error::{Error, Result};
use crate::laurent::modular::{rank_at_point, LARGE_PRIME};
use crate::laurent::{rank_mod, LaurentPoly};

pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Evaluation point for the greedy minor selection.
const PROBE_POINT: u64 = 1_000_003;

/// Independently checkable evidence for a bound on the torsion number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The square minor of `d2` (rows of `dropped_generator` removed,
    /// columns of `kept_relators` kept) has Novikov-unit determinant, so
    /// first homology vanishes.
    Acyclic {
        dropped_generator: usize,
        kept_relators: Vec<usize>,
        determinant: LaurentPoly,
    },
    /// Same minor with a nonzero non-unit determinant. First homology is
    /// torsion with this order, provided the dropped relators follow from
    /// the kept ones (any single relator of a knot's Wirtinger presentation
    /// does), so the torsion needs at least one generator.
    TorsionNonUnit {
        dropped_generator: usize,
        kept_relators: Vec<usize>,
        determinant: LaurentPoly,
    },
    /// Reducing the homology presentation mod `prime` lowers its rank from
    /// `generic_rank` to `rank_mod`; each lost rank is an invariant factor
    /// divisible by `prime`, hence a non-unit.
    ModEllFitting {
        dropped_generator: usize,
        prime: u64,
        generic_rank: usize,
        rank_mod: usize,
        lower_bound: usize,
    },
    /// Unit pivots reduce the homology presentation to a
    /// `residual_rows x residual_cols` matrix; at most `residual_rows`
    /// generators are needed, `free_rank` of them free.
    UnitPivotReduction {
        dropped_generator: usize,
        pivots: Vec<(usize, usize)>,
        residual_rows: usize,
        residual_cols: usize,
        free_rank: usize,
        upper_bound: usize,
        complete: bool,
    },
    /// Bounds multiplied over a connected sum of `copies` copies of one knot
    /// with the product representation; `base` certifies a single copy.
    ScaledSum { copies: usize, base: Vec<Certificate> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Acyclic { .. } => "acyclic",
            Certificate::TorsionNonUnit { .. } => "torsion-non-unit",
            Certificate::ModEllFitting { .. } => "mod-ell-fitting",
            Certificate::UnitPivotReduction { .. } => "unit-pivot-reduction",
            Certificate::ScaledSum { .. } => "scaled-sum",
        }
    }
}

/// Novikov Betti and torsion numbers in degrees 1 and 2.
///
/// Degree 1 is computed; degree 2 follows from `b2 = b1`, `q2 = 0`, which
/// hold for every link complement. The degree-0 numbers vanish once `d1` is
/// onto.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NovikovProfile {
    pub n: usize,
    pub b: BTreeMap<u32, usize>,
    pub q_lower: BTreeMap<u32, usize>,
    pub q_upper: BTreeMap<u32, Option<usize>>,
    pub q_exact: BTreeMap<u32, Option<usize>>,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl NovikovProfile {
    pub(crate) fn assemble(
        n: usize,
        b1: usize,
        q_lower: usize,
        q_upper: Option<usize>,
        certificates: Vec<Certificate>,
        notes: Vec<String>,
    ) -> Self {
        let q_exact = q_upper.filter(|&u| u == q_lower);
        Self {
            n,
            b: BTreeMap::from([(1, b1), (2, b1)]),
            q_lower: BTreeMap::from([(1, q_lower)]),
            q_upper: BTreeMap::from([(1, q_upper)]),
            q_exact: BTreeMap::from([(1, q_exact)]),
            certificates,
            notes,
        }
    }

    pub fn b1(&self) -> usize {
        self.b[&1]
    }

    pub fn q1_lower(&self) -> usize {
        self.q_lower[&1]
    }

    pub fn q1_upper(&self) -> Option<usize> {
        self.q_upper[&1]
    }

    pub fn q1_exact(&self) -> Option<usize> {
        self.q_exact[&1]
    }

    /// Homology vanishes in degree 1 (and hence in every degree).
    pub fn is_acyclic(&self) -> bool {
        self.b1() == 0 && self.q1_exact() == Some(0)
    }

    /// Consistency of the stored numbers: `b2 = b1`, lower bound at most
    /// the upper bound, exact value only when the two meet.
    pub fn check_invariants(&self) -> Result<()> {
        if self.b.get(&2) != self.b.get(&1) {
            return Err(Error::Invariant("b2 differs from b1".into()));
        }
        if let Some(u) = self.q1_upper() {
            if self.q1_lower() > u {
                return Err(Error::Invariant(format!(
                    "torsion lower bound {} exceeds upper bound {u}",
                    self.q1_lower()
                )));
            }
        }
        if let Some(e) = self.q1_exact() {
            if e != self.q1_lower() || Some(e) != self.q1_upper() {
                return Err(Error::Invariant("exact torsion number disagrees with bounds".into()));
            }
        }
        Ok(())
    }
}

/// Knobs for [`compute_profile_with`].
#[derive(Clone, Debug)]
pub struct ProfileOptions {
    pub primes: Vec<u64>,
    /// Generator whose rows are removed; must have a unit `d1` block.
    /// Defaults to the last such generator.
    pub drop_generator: Option<usize>,
    /// Relators left out of the square minor. Defaults to a greedy choice
    /// that keeps relators in order while they add rank, which drops the
    /// last relator of a knot's Wirtinger presentation.
    pub drop_relators: Option<Vec<usize>>,
    pub reduction: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            primes: DEFAULT_PRIMES.to_vec(),
            drop_generator: None,
            drop_relators: None,
            reduction: true,
        }
    }
}

pub fn compute_profile(c: &TwistedComplex) -> NovikovProfile {
    compute_profile_with(c, &ProfileOptions::default()).expect("default options are valid")
}

/// Computes `b1` exactly and brackets `q1` with certificates.
pub fn compute_profile_with(c: &TwistedComplex, opts: &ProfileOptions) -> Result<NovikovProfile> {
    let n = c.n;
    let drop_gen = match opts.drop_generator {
        Some(j) => {
            if j >= c.generators {
                return Err(Error::InvalidArgument(format!("no generator {j}")));
            }
            if !c.d1_block(j).det()?.is_novikov_unit() {
                return Err(Error::InvalidArgument(format!(
                    "generator {j} has a non-unit d1 block"
                )));
            }
            Some(j)
        }
        None => d1_epi_check(c).map(|(j, _)| j),
    };
    let Some(drop_gen) = drop_gen else {
        // d1 is not onto: report ranks only
        let r1 = c.d1.rank_over_function_field();
        let r2 = c.d2.rank_over_function_field();
        let b1 = n * c.generators - r1 - r2;
        let notes = vec![format!(
            "no generator has a unit d1 block; b0 = {}, torsion not bracketed",
            n - r1
        )];
        return Ok(NovikovProfile::assemble(n, b1, 0, None, Vec::new(), notes));
    };

    let m = c.homology_presentation(drop_gen);
    let rows = m.rows();
    let generic_rank = m.rank_over_function_field();
    let b1 = rows - generic_rank;

    let keep = match &opts.drop_relators {
        Some(drop) => {
            if let Some(&bad) = drop.iter().find(|&&i| i >= c.relators) {
                return Err(Error::InvalidArgument(format!("no relator {bad}")));
            }
            let keep: Vec<usize> = (0..c.relators).filter(|i| !drop.contains(i)).collect();
            (keep.len() + 1 == c.generators).then_some(keep)
        }
        None => greedy_relators(c, drop_gen),
    };

    let (minor_cert, (fitting, reduction)) = rayon::join(
        || {
            if b1 != 0 {
                return None;
            }
            let keep = keep?;
            let det = c.minor(drop_gen, &keep).det().ok()?;
            if det.is_zero() {
                None
            } else if det.is_novikov_unit() {
                Some(Certificate::Acyclic {
                    dropped_generator: drop_gen,
                    kept_relators: keep,
                    determinant: det,
                })
            } else {
                Some(Certificate::TorsionNonUnit {
                    dropped_generator: drop_gen,
                    kept_relators: keep,
                    determinant: det,
                })
            }
        },
        || {
            rayon::join(
                || {
                    use rayon::prelude::*;
                    opts.primes
                        .par_iter()
                        .filter_map(|&ell| {
                            let r = rank_mod(&m, ell).ok()?;
                            (r < generic_rank).then(|| Certificate::ModEllFitting {
                                dropped_generator: drop_gen,
                                prime: ell,
                                generic_rank,
                                rank_mod: r,
                                lower_bound: generic_rank - r,
                            })
                        })
                        .collect::<Vec<_>>()
                },
                || {
                    opts.reduction.then(|| {
                        let red = unit_pivot_reduce(&m);
                        let residual_rows = red.residual.rows();
                        Certificate::UnitPivotReduction {
                            dropped_generator: drop_gen,
                            pivots: red.pivots,
                            residual_rows,
                            residual_cols: red.residual.cols(),
                            free_rank: b1,
                            upper_bound: residual_rows - b1,
                            complete: red.complete,
                        }
                    })
                },
            )
        },
    );

    let mut certificates = Vec::new();
    let mut lower = 0;
    let mut upper = rows - b1;
    if let Some(cert) = minor_cert {
        match &cert {
            Certificate::Acyclic { .. } => upper = 0,
            Certificate::TorsionNonUnit { .. } => lower = lower.max(1),
            _ => unreachable!(),
        }
        certificates.push(cert);
    }
    for cert in fitting {
        if let Certificate::ModEllFitting { lower_bound, .. } = cert {
            lower = lower.max(lower_bound);
        }
        certificates.push(cert);
    }
    if let Some(cert) = reduction {
        if let Certificate::UnitPivotReduction { upper_bound, .. } = cert {
            upper = upper.min(upper_bound);
        }
        certificates.push(cert);
    }
    let mut notes = Vec::new();
    if b1 == 0 && keep_is_missing(&certificates) {
        notes.push("no nonsingular square minor found for the torsion determinant".into());
    }
    let profile = NovikovProfile::assemble(n, b1, lower, Some(upper), certificates, notes);
    profile.check_invariants()?;
    Ok(profile)
}

fn keep_is_missing(certs: &[Certificate]) -> bool {
    !certs.iter().any(|c| {
        matches!(
            c,
            Certificate::Acyclic { .. } | Certificate::TorsionNonUnit { .. }
        )
    })
}

/// Relator blocks kept in order while each adds full rank `n` at a probe
/// point; `None` unless exactly `g - 1` blocks reach full rank.
pub(crate) fn greedy_relators(c: &TwistedComplex, drop_gen: usize) -> Option<Vec<usize>> {
    let target = c.generators.checked_sub(1)?;
    let mut keep: Vec<usize> = Vec::new();
    let mut rank = 0;
    for i in 0..c.relators {
        if keep.len() == target {
            break;
        }
        keep.push(i);
        let r = rank_at_point(&c.minor(drop_gen, &keep), PROBE_POINT, LARGE_PRIME);
        if r == rank + c.n {
            rank = r;
        } else {
            keep.pop();
        }
    }
    (keep.len() == target && rank == target * c.n).then_some(keep)
}

/// Re-derives a certificate from the complex.
///
/// The torsion-non-unit kind rests on the dropped relators being
/// consequences of the kept ones, which this check takes as given; all
/// arithmetic content (unit blocks, determinants, ranks, pivot replay) is
/// recomputed.
pub fn verify_certificate(cert: &Certificate, c: &TwistedComplex) -> bool {
    let unit_block = |j: usize| {
        j < c.generators && c.d1_block(j).det().is_ok_and(|d| d.is_novikov_unit())
    };
    match cert {
        Certificate::Acyclic {
            dropped_generator,
            kept_relators,
            determinant,
        }
        | Certificate::TorsionNonUnit {
            dropped_generator,
            kept_relators,
            determinant,
        } => {
            if !unit_block(*dropped_generator)
                || kept_relators.len() + 1 != c.generators
                || kept_relators.iter().any(|&i| i >= c.relators)
            {
                return false;
            }
            let Ok(det) = c.minor(*dropped_generator, kept_relators).det() else {
                return false;
            };
            let expect_unit = matches!(cert, Certificate::Acyclic { .. });
            det == *determinant && !det.is_zero() && det.is_novikov_unit() == expect_unit
        }
        Certificate::ModEllFitting {
            dropped_generator,
            prime,
            generic_rank,
            rank_mod: r,
            lower_bound,
        } => {
            if !unit_block(*dropped_generator) {
                return false;
            }
            let m = c.homology_presentation(*dropped_generator);
            let Ok(actual) = rank_mod(&m, *prime) else {
                return false;
            };
            m.rank_over_function_field() == *generic_rank
                && actual == *r
                && *lower_bound == generic_rank - r
                && *lower_bound > 0
        }
        Certificate::UnitPivotReduction {
            dropped_generator,
            pivots,
            residual_rows,
            residual_cols,
            free_rank,
            upper_bound,
            ..
        } => {
            if !unit_block(*dropped_generator) {
                return false;
            }
            let m = c.homology_presentation(*dropped_generator);
            let Some(res) = replay(&m, pivots) else {
                return false;
            };
            res.rows() == *residual_rows
                && res.cols() == *residual_cols
                && m.rows() - m.rank_over_function_field() == *free_rank
                && *upper_bound == residual_rows - free_rank
        }
        Certificate::ScaledSum { base, .. } => base.iter().all(|b| verify_certificate(b, c)),
    }
}
