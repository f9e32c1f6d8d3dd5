use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FreeWord, GeneratorId, Letter, Presentation};
use crate::error::{Error, Result};

/// A braid on `strands` strands; letter `i` is the Artin generator
/// `sigma_|i|` with the sign of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("at least one strand is required".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            perm.swap(i - 1, i);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Accepts `"k: 1 -2 1"` or a bare letter list, in which case the strand
    /// count is one more than the largest generator. Commas are allowed.
    fn from_str(s: &str) -> Result<Self> {
        let (strands, body) = match s.split_once(':') {
            Some((k, rest)) => {
                let k = k
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidBraid(format!("bad strand count {:?}", k.trim())))?;
                (Some(k), rest)
            }
            None => (None, s),
        };
        let body = body.trim().trim_start_matches('[').trim_end_matches(']');
        let letters = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| Error::InvalidBraid(format!("bad letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let strands = strands.unwrap_or_else(|| {
            letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1
        });
        Self::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller id as root so classes relabel by first appearance
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// Wirtinger presentation of the braid closure.
///
/// One generator per arc, one relator per crossing (a crossing whose arcs
/// all coincide contributes the empty relator), `xi = 1` everywhere, and the
/// meridian is the arc at the top of strand position 0. Arcs are numbered in
/// order of first appearance, top to bottom.
pub fn braid_to_wirtinger(braid: &BraidWord) -> Presentation {
    let k = braid.strands;
    let mut current: Vec<usize> = (0..k).collect();
    let mut next_arc = k;
    // (incoming under arc, over arc, outgoing under arc, sign)
    let mut crossings = Vec::with_capacity(braid.letters.len());
    for &l in &braid.letters {
        let i = l.unsigned_abs() as usize;
        let sign: i8 = if l > 0 { 1 } else { -1 };
        let (left, right) = (current[i - 1], current[i]);
        let out = next_arc;
        next_arc += 1;
        if sign > 0 {
            // the strand at i-1 crosses over to position i
            crossings.push((right, left, out, sign));
            current[i - 1] = out;
            current[i] = left;
        } else {
            crossings.push((left, right, out, sign));
            current[i - 1] = right;
            current[i] = out;
        }
    }
    let mut uf = UnionFind((0..next_arc).collect());
    for (pos, &arc) in current.iter().enumerate() {
        uf.union(pos, arc);
    }
    let mut label = vec![usize::MAX; next_arc];
    let mut count = 0;
    for arc in 0..next_arc {
        let root = uf.find(arc);
        if label[root] == usize::MAX {
            label[root] = count;
            count += 1;
        }
        label[arc] = label[root];
    }
    let names: Vec<String> = (1..=count).map(|i| format!("s{i}")).collect();
    let relators = crossings
        .iter()
        .map(|&(under_in, over, under_out, e)| {
            let (i, o, u) = (label[under_in], label[over], label[under_out]);
            // out = o^e in o^-e
            FreeWord::new([
                Letter::neg(u),
                Letter {
                    gen: GeneratorId(o),
                    sign: e,
                },
                Letter::pos(i),
                Letter {
                    gen: GeneratorId(o),
                    sign: -e,
                },
            ])
        })
        .collect();
    Presentation::wirtinger(names, relators, Some(GeneratorId(label[0])))
        .expect("Wirtinger relators are balanced")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let b: BraidWord = "2: 1 1 1".parse().unwrap();
        let p = braid_to_wirtinger(&b);
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relator_count(), 3);
        assert_eq!(b.components(), 1);
    }

    #[test]
    fn single_crossing_is_unknot() {
        let b: BraidWord = "1".parse().unwrap();
        assert_eq!(b.strands(), 2);
        let p = braid_to_wirtinger(&b);
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relator_count(), 1);
        assert!(p.relators()[0].is_empty());
    }

    #[test]
    fn hopf_link_components() {
        let b: BraidWord = "2: 1 1".parse().unwrap();
        assert_eq!(b.components(), 2);
        assert_eq!(braid_to_wirtinger(&b).generator_count(), 2);
    }

    #[test]
    fn figure_eight_shape() {
        let b: BraidWord = "3: 1 -2 1 -2".parse().unwrap();
        let p = braid_to_wirtinger(&b);
        assert_eq!(p.generator_count(), 4);
        assert_eq!(p.relator_count(), 4);
        assert_eq!(b.to_string(), "3: 1 -2 1 -2");
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!("3: 1 x".parse::<BraidWord>().is_err());
    }
}
