use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a generator inside one presentation; dense `0..g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId(pub usize);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GeneratorId,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self {
            gen: GeneratorId(gen),
            sign: 1,
        }
    }

    pub fn neg(gen: usize) -> Self {
        Self {
            gen: GeneratorId(gen),
            sign: -1,
        }
    }

    pub fn inverse(self) -> Self {
        Self {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign == -other.sign
    }
}

/// A freely reduced word in a free group.
///
/// Ordered by length, then lexicographically by letters, so that group-ring
/// elements keyed by words compare structurally.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            debug_assert!(l.sign == 1 || l.sign == -1);
            if out.last().is_some_and(|&last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn generator(gen: usize) -> Self {
        Self {
            letters: vec![Letter::pos(gen)],
        }
    }

    /// Builds from `(generator, sign)` pairs.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        Self::new(pairs.iter().map(|&(g, s)| Letter {
            gen: GeneratorId(g),
            sign: s,
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Product in the free group.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// No adjacent cancelling pair.
    pub fn is_reduced_slice(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn exponent_sum(&self, weights: &[i64]) -> i64 {
        self.letters
            .iter()
            .map(|l| l.sign as i64 * weights[l.gen.0])
            .sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.letters.iter().map(|l| l.gen)
    }

    /// Renumbers generators through `map`.
    pub fn relabel(&self, map: impl Fn(GeneratorId) -> GeneratorId) -> FreeWord {
        FreeWord::new(self.letters.iter().map(|l| Letter {
            gen: map(l.gen),
            sign: l.sign,
        }))
    }

    /// Text form with generator names, e.g. `s1^-1 s10 s2 s10^-1`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWord { word: self, names }
    }
}

struct DisplayWord<'a> {
    word: &'a FreeWord,
    names: &'a [String],
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = &self.names[l.gen.0];
            if l.sign < 0 {
                write!(f, "{name}^-1")?;
            } else {
                write!(f, "{name}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.sign < 0 {
                    format!("x{}^-1", l.gen.0)
                } else {
                    format!("x{}", l.gen.0)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}
