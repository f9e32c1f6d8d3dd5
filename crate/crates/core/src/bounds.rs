//! Morse–Novikov number bounds from Novikov profiles, connected-sum
//! scaling, and the aggregated report.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::alexander::AlexanderSummary;
use crate::error::{Error, Result};
use crate::novikov::{Certificate, NovikovProfile};
use crate::presentation::Presentation;
use crate::reps::Convention;

pub const REPORT_SCHEMA: &str = "v1";

/// A nonnegative rational in lowest terms, serialized as `"p/q"` (or `"p"`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational {
    numer: u64,
    denom: u64,
}

impl Rational {
    /// Panics on a zero denominator.
    pub fn new(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        let g = numer.gcd(&denom);
        Self {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn numer(&self) -> u64 {
        self.numer
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn ceil(&self) -> u64 {
        self.numer.div_ceil(self.denom)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let numer = a.parse().map_err(|_| bad())?;
        let denom: u64 = b.parse().map_err(|_| bad())?;
        if denom == 0 {
            return Err(bad());
        }
        Ok(Self::new(numer, denom))
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Numbers a bound was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub b1: usize,
    pub q1_lower: usize,
    /// Kinds of the certificates behind `q1_lower`.
    pub certificates: Vec<String>,
}

/// An upper bound supplied by the user, with its citation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: u64,
    pub note: String,
}

impl std::str::FromStr for UpperBound {
    type Err = Error;

    /// `"20"` or `"20 (citation text)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        let value = s[..split]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("upper bound must start with an integer: {s:?}")))?;
        let rest = s[split..].trim();
        let note = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest)
            .trim()
            .to_string();
        Ok(Self { value, note })
    }
}

/// Lower bounds on the numbers of index-1 and index-2 critical points of a
/// regular circle-valued Morse map, and on their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MNBound {
    pub n: usize,
    pub m1_lb: u64,
    pub m2_lb: u64,
    pub mn_lb: u64,
    /// `2 (b1 + q1) / n` before rounding each index up.
    pub raw: Rational,
    pub provenance: Provenance,
    pub upper: Option<UpperBound>,
    /// The user upper bound is below the certified lower bound.
    pub contradiction: bool,
}

impl MNBound {
    pub fn with_upper(mut self, upper: Option<UpperBound>) -> Self {
        self.contradiction = upper.as_ref().is_some_and(|u| u.value < self.mn_lb);
        self.upper = upper;
        self
    }
}

/// `m_i >= (b1 + q1) / n` for `i = 1, 2`, each rounded up.
pub fn mn_lower_bound(profile: &NovikovProfile) -> MNBound {
    let n = profile.n.max(1) as u64;
    let b1 = profile.b1();
    let q1 = profile.q1_lower();
    let per_index = Rational::new((b1 + q1) as u64, n);
    let m = per_index.ceil();
    MNBound {
        n: profile.n,
        m1_lb: m,
        m2_lb: m,
        mn_lb: 2 * m,
        raw: Rational::new(2 * (b1 + q1) as u64, n),
        provenance: Provenance {
            b1,
            q1_lower: q1,
            certificates: lower_bound_sources(&profile.certificates),
        },
        upper: None,
        contradiction: false,
    }
}

fn lower_bound_sources(certs: &[Certificate]) -> Vec<String> {
    certs
        .iter()
        .filter(|c| {
            matches!(
                c,
                Certificate::TorsionNonUnit { .. }
                    | Certificate::ModEllFitting { .. }
                    | Certificate::ScaledSum { .. }
            )
        })
        .map(|c| c.kind().to_string())
        .collect()
}

/// Profile of the `copies`-fold connected sum of a knot with itself, under
/// the product representation: every number multiplies by `copies`.
///
/// Scaling a scaled profile multiplies the copy counts, so scaling by `a`
/// then `b` equals scaling by `a * b`; scaling by 1 is the identity.
pub fn connected_sum_scale(profile: &NovikovProfile, copies: usize) -> Result<NovikovProfile> {
    if copies < 1 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    if copies == 1 {
        return Ok(profile.clone());
    }
    let mut out = profile.clone();
    out.b.values_mut().for_each(|v| *v *= copies);
    out.q_lower.values_mut().for_each(|v| *v *= copies);
    out.q_upper.values_mut().flatten().for_each(|v| *v *= copies);
    out.q_exact.values_mut().flatten().for_each(|v| *v *= copies);
    out.certificates = match profile.certificates.as_slice() {
        [Certificate::ScaledSum { copies: k, base }] => vec![Certificate::ScaledSum {
            copies: k * copies,
            base: base.clone(),
        }],
        base => vec![Certificate::ScaledSum {
            copies,
            base: base.to_vec(),
        }],
    };
    out.check_invariants()?;
    Ok(out)
}

/// Conventions needed to rebuild the matrices bit for bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    /// Representations are right actions: `rho(uv) = rho(v) rho(u)`.
    pub representation: String,
    /// How permutation matrices are stored.
    pub matrix_convention: String,
    /// Permutation matrices send basis vector `e_i` to `e_{sigma(i)}`.
    pub permutation_matrix: String,
    /// `rel: u = v` is stored as the relator `u^-1 v`.
    pub relator_orientation: String,
    /// Rows of this generator are removed from the torsion minor, or none
    /// when chosen per representation.
    pub dropped_generator: Option<usize>,
    pub dropped_relators: Option<Vec<usize>>,
}

impl Conventions {
    pub fn new(
        convention: Convention,
        dropped_generator: Option<usize>,
        dropped_relators: Option<Vec<usize>>,
    ) -> Self {
        Self {
            representation: "right".into(),
            matrix_convention: convention.as_str().into(),
            permutation_matrix: "e_i -> e_sigma(i)".into(),
            relator_orientation: "u = v stored as u^-1 v".into(),
            dropped_generator,
            dropped_relators,
        }
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Self::new(Convention::AsGiven, None, None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSummary {
    pub generators: usize,
    pub relators: usize,
    pub meridian: Option<String>,
}

impl From<&Presentation> for PresentationSummary {
    fn from(p: &Presentation) -> Self {
        Self {
            generators: p.generator_count(),
            relators: p.relator_count(),
            meridian: p.meridian().map(|m| p.name(m).to_string()),
        }
    }
}

/// One representation's results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepEntry {
    pub label: String,
    pub dim: usize,
    /// Generator images, when the representation is a permutation one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
    pub profile: NovikovProfile,
    pub bound: MNBound,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<AlexanderSummary>,
}

impl RepEntry {
    pub fn new(label: impl Into<String>, profile: NovikovProfile) -> Self {
        Self {
            label: label.into(),
            dim: profile.n,
            images: None,
            bound: mn_lower_bound(&profile),
            profile,
            alexander: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub presentation: PresentationSummary,
    /// Number of connected-sum copies the bounds refer to.
    pub copies: usize,
    pub conventions: Conventions,
    pub representations: Vec<RepEntry>,
    /// Index of the representation giving the best lower bound.
    pub best: Option<usize>,
    pub lower_bound: u64,
    pub raw_lower_bound: Rational,
    pub upper: Option<UpperBound>,
    pub contradiction: bool,
    pub conclusion: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Aggregates per-representation results; the best lower bound is the
/// maximum over representations (first one on ties).
pub fn report(
    p: &PresentationSummary,
    copies: usize,
    conventions: Conventions,
    mut reps: Vec<RepEntry>,
    upper: Option<UpperBound>,
) -> Report {
    for r in &mut reps {
        r.bound = r.bound.clone().with_upper(upper.clone());
    }
    let best = (0..reps.len()).fold(None, |best: Option<usize>, i| match best {
        Some(b) if (reps[b].bound.mn_lb, reps[b].bound.raw) >= (reps[i].bound.mn_lb, reps[i].bound.raw) => {
            Some(b)
        }
        _ => Some(i),
    });
    let (lower, raw) = best.map_or((0, Rational::new(0, 1)), |b| (reps[b].bound.mn_lb, reps[b].bound.raw));
    let mut notes = Vec::new();
    if reps.is_empty() {
        notes.push("no representation supplied or found; the lower bound is trivial".into());
    }
    if copies > 1 {
        notes.push(format!(
            "bounds refer to the {copies}-fold connected sum with the product representation"
        ));
    }
    let contradiction = upper.as_ref().is_some_and(|u| u.value < lower);
    let conclusion = match &upper {
        Some(u) if contradiction => format!(
            "contradiction: supplied upper bound {} is below the certified lower bound {lower}",
            u.value
        ),
        Some(u) if u.value == lower && copies == 1 => format!("MN = {lower}"),
        Some(u) => format!("{lower} <= MN <= {}", u.value),
        None => format!("MN >= {lower}"),
    };
    Report {
        schema: REPORT_SCHEMA.into(),
        presentation: p.clone(),
        copies,
        conventions,
        representations: reps,
        best,
        lower_bound: lower,
        raw_lower_bound: raw,
        upper,
        contradiction,
        conclusion,
        notes,
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let pr = &self.presentation;
        let _ = writeln!(
            s,
            "presentation: {} generators, {} relators, meridian {}",
            pr.generators,
            pr.relators,
            pr.meridian.as_deref().unwrap_or("-")
        );
        if self.copies > 1 {
            let _ = writeln!(s, "connected sum of {} copies", self.copies);
        }
        for (i, r) in self.representations.iter().enumerate() {
            let p = &r.profile;
            let mark = if self.best == Some(i) { " (best)" } else { "" };
            let _ = writeln!(s, "representation {}{mark}: dimension {}", r.label, r.dim);
            if let Some(images) = &r.images {
                let _ = writeln!(s, "  images: {}", images.join(" "));
            }
            let q = match (p.q1_exact(), p.q1_upper()) {
                (Some(e), _) => format!("q1 = {e}"),
                (None, Some(u)) => format!("{} <= q1 <= {u}", p.q1_lower()),
                (None, None) => format!("q1 >= {}", p.q1_lower()),
            };
            let _ = writeln!(s, "  b1 = {}, {q}", p.b1());
            for c in &p.certificates {
                let _ = writeln!(s, "  certificate: {}", describe(c));
            }
            let b = &r.bound;
            let _ = writeln!(
                s,
                "  m1 >= {}, m2 >= {}, MN >= {} (raw {})",
                b.m1_lb, b.m2_lb, b.mn_lb, b.raw
            );
            if let Some(a) = &r.alexander {
                let _ = writeln!(s, "  twisted Alexander: {}", a.normalized);
                let _ = writeln!(s, "  {}", a.implication);
            }
            for n in &p.notes {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        if let Some(u) = &self.upper {
            if u.note.is_empty() {
                let _ = writeln!(s, "upper bound: {}", u.value);
            } else {
                let _ = writeln!(s, "upper bound: {} ({})", u.value, u.note);
            }
        }
        let _ = writeln!(
            s,
            "lower bound: {} (raw {})",
            self.lower_bound, self.raw_lower_bound
        );
        let _ = writeln!(s, "conclusion: {}", self.conclusion);
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn describe(c: &Certificate) -> String {
    match c {
        Certificate::Acyclic { determinant, .. } => format!("acyclic, unit minor {determinant}"),
        Certificate::TorsionNonUnit { determinant, .. } => {
            format!("torsion-non-unit, minor {determinant}")
        }
        Certificate::ModEllFitting { prime, lower_bound, .. } => {
            format!("mod-ell-fitting at {prime}, q1 >= {lower_bound}")
        }
        Certificate::UnitPivotReduction {
            residual_rows,
            residual_cols,
            upper_bound,
            ..
        } => format!("unit-pivot-reduction to {residual_rows}x{residual_cols}, q1 <= {upper_bound}"),
        Certificate::ScaledSum { copies, base } => {
            let kinds: Vec<&str> = base.iter().map(Certificate::kind).collect();
            format!("scaled-sum over {copies} copies of [{}]", kinds.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn profile(n: usize, b1: usize, q_lower: usize, q_upper: Option<usize>) -> NovikovProfile {
        NovikovProfile {
            n,
            b: BTreeMap::from([(1, b1), (2, b1)]),
            q_lower: BTreeMap::from([(1, q_lower)]),
            q_upper: BTreeMap::from([(1, q_upper)]),
            q_exact: BTreeMap::from([(1, q_upper.filter(|&u| u == q_lower))]),
            certificates: vec![Certificate::TorsionNonUnit {
                dropped_generator: 0,
                kept_relators: vec![],
                determinant: "5 - t".parse().unwrap(),
            }],
            notes: vec![],
        }
    }

    #[test]
    fn single_torsion_generator_in_dimension_five() {
        let b = mn_lower_bound(&profile(5, 0, 1, Some(1)));
        assert_eq!(b.raw.to_string(), "2/5");
        assert_eq!((b.m1_lb, b.m2_lb, b.mn_lb), (1, 1, 2));
        assert_eq!(b.provenance.certificates, vec!["torsion-non-unit"]);
    }

    #[test]
    fn free_part_counts() {
        let b = mn_lower_bound(&profile(1, 3, 0, Some(0)));
        assert_eq!((b.m1_lb, b.m2_lb, b.mn_lb), (3, 3, 6));
        assert_eq!(b.raw, Rational::new(6, 1));
        let z = mn_lower_bound(&profile(1, 0, 0, Some(0)));
        assert_eq!(z.mn_lb, 0);
    }

    #[test]
    fn scaling() {
        let p = profile(5, 0, 1, Some(1));
        assert_eq!(connected_sum_scale(&p, 1).unwrap(), p);
        assert!(connected_sum_scale(&p, 0).is_err());
        let s = connected_sum_scale(&p, 10).unwrap();
        assert_eq!(s.q1_lower(), 10);
        assert_eq!(s.q1_exact(), Some(10));
        assert_eq!(mn_lower_bound(&s).raw.to_string(), "4");
        let twice = connected_sum_scale(&connected_sum_scale(&p, 2).unwrap(), 5).unwrap();
        assert_eq!(twice, s);
    }

    #[test]
    fn upper_bound_parsing() {
        let u: UpperBound = "20 (handle construction)".parse().unwrap();
        assert_eq!(u.value, 20);
        assert_eq!(u.note, "handle construction");
        assert_eq!("7".parse::<UpperBound>().unwrap().note, "");
        assert!("many".parse::<UpperBound>().is_err());
    }

    #[test]
    fn report_brackets() {
        let summary = PresentationSummary {
            generators: 11,
            relators: 11,
            meridian: Some("s1".into()),
        };
        let reps = vec![
            RepEntry::new("trivial", profile(1, 0, 0, Some(0))),
            RepEntry::new("h", profile(5, 0, 1, Some(1))),
        ];
        let upper = "2 (construction)".parse().ok();
        let r = report(&summary, 1, Conventions::default(), reps, upper);
        assert_eq!(r.best, Some(1));
        assert_eq!(r.lower_bound, 2);
        assert_eq!(r.conclusion, "MN = 2");
        assert!(!r.contradiction);
        let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_text().contains("conclusion: MN = 2"));

        let low = report(&summary, 1, Conventions::default(), vec![], "1".parse().ok());
        assert_eq!(low.lower_bound, 0);
        assert!(!low.notes.is_empty());
        let bad = report(
            &summary,
            1,
            Conventions::default(),
            vec![RepEntry::new("h", profile(5, 0, 1, Some(1)))],
            "1".parse().ok(),
        );
        assert!(bad.contradiction);
        assert!(bad.representations[0].bound.contradiction);
    }
}
