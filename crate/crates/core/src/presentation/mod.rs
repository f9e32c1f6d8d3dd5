//! Group presentations of link complements: parsing, validation, braid
//! closures, and connected sums.

mod braid;
mod parse;
mod word;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use braid::{braid_to_wirtinger, BraidWord};
pub use parse::{parse_presentation, parse_presentation_with_warnings};
pub use word::{FreeWord, GeneratorId, Letter};

use crate::error::{Error, Result};

/// Generators, relators, and the augmentation `xi` to the integers.
///
/// Every relator is freely reduced and has `xi`-sum zero. Redundant relators
/// are kept as given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<FreeWord>,
    xi: Vec<i64>,
    meridian: Option<GeneratorId>,
}

impl Presentation {
    /// Checks balance of every relator against `xi`.
    pub fn new(
        names: Vec<String>,
        relators: Vec<FreeWord>,
        xi: Vec<i64>,
        meridian: Option<GeneratorId>,
    ) -> Result<Self> {
        if xi.len() != names.len() {
            return Err(Error::InvalidArgument(format!(
                "xi has {} values for {} generators",
                xi.len(),
                names.len()
            )));
        }
        for (index, r) in relators.iter().enumerate() {
            if let Some(g) = r.generators().find(|g| g.0 >= names.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", g.0)));
            }
            let sum = r.exponent_sum(&xi);
            if sum != 0 {
                return Err(Error::Imbalanced { index, sum });
            }
        }
        if let Some(m) = meridian {
            if m.0 >= names.len() {
                return Err(Error::UnknownGenerator(format!("#{}", m.0)));
            }
        }
        Ok(Self {
            names,
            relators,
            xi,
            meridian,
        })
    }

    /// Presentation with `xi = 1` on every generator.
    pub fn wirtinger(
        names: Vec<String>,
        relators: Vec<FreeWord>,
        meridian: Option<GeneratorId>,
    ) -> Result<Self> {
        let xi = vec![1; names.len()];
        Self::new(names, relators, xi, meridian)
    }

    /// One generator, no relators: the group of the unknot.
    pub fn unknot() -> Self {
        Self::wirtinger(vec!["s1".into()], vec![], Some(GeneratorId(0))).unwrap()
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: GeneratorId) -> &str {
        &self.names[g.0]
    }

    pub fn find(&self, name: &str) -> Option<GeneratorId> {
        self.names.iter().position(|n| n == name).map(GeneratorId)
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    pub fn xi_of(&self, w: &FreeWord) -> i64 {
        w.exponent_sum(&self.xi)
    }

    pub fn meridian(&self) -> Option<GeneratorId> {
        self.meridian
    }

    pub fn with_meridian(mut self, m: GeneratorId) -> Self {
        assert!(m.0 < self.names.len());
        self.meridian = Some(m);
        self
    }

    /// `xi` is identically 1, as for any Wirtinger presentation.
    pub fn has_unit_xi(&self) -> bool {
        self.xi.iter().all(|&x| x == 1)
    }

    /// Copy with relator `index` removed.
    pub fn without_relator(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.relators.remove(index);
        out
    }

    /// Serializes in the presentation-file grammar; `parse_presentation`
    /// reads it back to an equal value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "generators: {}", self.names.join(" ")).unwrap();
        if let Some(m) = self.meridian {
            writeln!(s, "meridian: {}", self.names[m.0]).unwrap();
        }
        if !self.has_unit_xi() {
            let parts: Vec<String> = self
                .names
                .iter()
                .zip(&self.xi)
                .map(|(n, x)| format!("{n}={x}"))
                .collect();
            writeln!(s, "xi: {}", parts.join(" ")).unwrap();
        }
        for r in &self.relators {
            writeln!(s, "relator: {}", r.display_with(&self.names)).unwrap();
        }
        s
    }
}

/// Per-relator diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub index: usize,
    pub length: usize,
    pub xi_sum: i64,
    pub reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub relators: Vec<RelatorCheck>,
    /// Number of relator letters using each generator.
    pub generator_usage: Vec<usize>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn all_balanced(&self) -> bool {
        self.relators.iter().all(|r| r.xi_sum == 0)
    }
}

/// Diagnoses a presentation without changing it.
pub fn validate(p: &Presentation) -> ValidationReport {
    let mut usage = vec![0usize; p.generator_count()];
    let mut warnings = Vec::new();
    if p.generator_count() == 0 {
        warnings.push("empty group: no generators".to_string());
    }
    let relators = p
        .relators
        .iter()
        .enumerate()
        .map(|(index, r)| {
            for g in r.generators() {
                usage[g.0] += 1;
            }
            RelatorCheck {
                index,
                length: r.len(),
                xi_sum: p.xi_of(r),
                reduced: FreeWord::is_reduced_slice(r.letters()),
            }
        })
        .collect::<Vec<_>>();
    for (i, &u) in usage.iter().enumerate() {
        if u == 0 && p.relator_count() > 0 {
            warnings.push(format!("generator {} does not occur in any relator", p.names[i]));
        }
    }
    for r in &relators {
        if r.xi_sum != 0 {
            warnings.push(format!("relator {} has xi-sum {}", r.index, r.xi_sum));
        }
    }
    ValidationReport {
        relators,
        generator_usage: usage,
        warnings,
    }
}

/// Connected sum along the designated meridians.
///
/// Generators of `p1` and `p2` get the suffixes `_1` and `_2`; the relators
/// of both are kept and one relator `m1^-1 m2` identifies the meridians.
pub fn connected_sum(p1: &Presentation, p2: &Presentation) -> Result<Presentation> {
    let m1 = p1.meridian.ok_or(Error::MissingMeridian)?;
    let m2 = p2.meridian.ok_or(Error::MissingMeridian)?;
    let g1 = p1.generator_count();
    let mut names: Vec<String> = p1.names.iter().map(|n| format!("{n}_1")).collect();
    names.extend(p2.names.iter().map(|n| format!("{n}_2")));
    let mut relators: Vec<FreeWord> = p1.relators.clone();
    relators.extend(
        p2.relators
            .iter()
            .map(|r| r.relabel(|g| GeneratorId(g.0 + g1))),
    );
    relators.push(FreeWord::new([
        Letter {
            gen: m1,
            sign: -1,
        },
        Letter {
            gen: GeneratorId(m2.0 + g1),
            sign: 1,
        },
    ]));
    let mut xi = p1.xi.clone();
    xi.extend(&p2.xi);
    Presentation::new(names, relators, xi, Some(m1))
}

/// Connected sum of `n` copies, folded from the left.
pub fn connected_power(p: &Presentation, n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    let mut acc = p.clone();
    for _ in 1..n {
        acc = connected_sum(&acc, p)?;
    }
    Ok(acc)
}

pub(crate) fn name_index(names: &[String]) -> HashMap<&str, usize> {
    names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_is_free_of_rank_one() {
        let u = Presentation::unknot();
        assert_eq!(u.generator_count(), 1);
        assert_eq!(u.relator_count(), 0);
        assert!(u.has_unit_xi());
    }

    #[test]
    fn imbalance_rejected() {
        let r = FreeWord::from_pairs(&[(0, 1), (1, 1)]);
        let err = Presentation::wirtinger(vec!["s1".into(), "s2".into()], vec![r], None).unwrap_err();
        assert!(matches!(err, Error::Imbalanced { index: 0, sum: 2 }));
    }

    #[test]
    fn connected_sum_shape() {
        let t = braid_to_wirtinger(&BraidWord::new(2, vec![1, 1, 1]).unwrap());
        let s = connected_sum(&t, &t).unwrap();
        assert_eq!(s.generator_count(), 6);
        assert_eq!(s.relator_count(), 7);
        assert_eq!(s.name(GeneratorId(3)), "s1_2");
        assert_eq!(s.meridian(), Some(GeneratorId(0)));
        assert!(s.has_unit_xi());
        assert_eq!(s.relators().last().unwrap().len(), 2);

        let no_meridian = Presentation::wirtinger(vec!["a".into()], vec![], None).unwrap();
        assert!(matches!(connected_sum(&t, &no_meridian), Err(Error::MissingMeridian)));
    }

    #[test]
    fn validation_warnings() {
        let empty = Presentation::new(vec![], vec![], vec![], None).unwrap();
        let rep = validate(&empty);
        assert!(rep.warnings.iter().any(|w| w.contains("empty group")));

        let t = braid_to_wirtinger(&BraidWord::new(2, vec![1, 1, 1]).unwrap());
        let rep = validate(&t);
        assert!(rep.all_balanced());
        assert!(rep.relators.iter().all(|r| r.reduced && r.length == 4));
        assert!(rep.warnings.is_empty());
    }
}
