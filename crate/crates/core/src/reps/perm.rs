use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., k-1}` acting on the right: `x.then(g)` applies
/// `self` first. Cycle notation is 1-based, as in `(2 5 3)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        assert!(k <= 256, "degree above 256 is not supported");
        Self {
            images: (0..k).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        if k > 256 {
            return Err(Error::InvalidPermutation(format!("degree {k} is too large")));
        }
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Parses 1-based cycle notation on `k` points. Cycles may be written
    /// `(2 5 3)`, `(2,5,3)` or, when every point is a single digit, `(253)`.
    pub fn from_cycles(text: &str, k: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut seen = vec![false; k];
        let bad = |m: &str| Error::InvalidPermutation(format!("{text:?}: {m}"));
        let mut rest = text.trim();
        if rest.is_empty() || rest == "()" || rest == "id" || rest == "1" {
            return Self::from_images(images);
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &open[..close];
            let points: Vec<usize> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
                body.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("bad point")))
                    .collect::<Result<_>>()?
            };
            for (i, &p) in points.iter().enumerate() {
                if p == 0 || p > k {
                    return Err(bad(&format!("point {p} outside 1..={k}")));
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(bad(&format!("point {p} repeated")));
                }
                images[p - 1] = points[(i + 1) % points.len()] - 1;
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Composite that applies `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `c^-1 self c`.
    pub fn conjugate_by(&self, c: &Permutation) -> Permutation {
        c.inverse().then(self).then(c)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of degree `k` in lexicographic order of images.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (0..k as u8).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        loop {
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation { images: cur.clone() });
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.degree() <= 9;
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(if compact { "" } else { " " }))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle lengths in decreasing order, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    /// Parses `3cycle`, `3-cycle`, `transposition`, `identity`, or an
    /// explicit partition such as `3,1,1` / `2 2 1`; pads with fixed points up
    /// to degree `k`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        let bad = || Error::InvalidArgument(format!("unrecognized cycle type {text:?}"));
        let mut parts: Vec<usize> = match t.as_str() {
            "identity" | "id" | "trivial" => vec![],
            "transposition" => vec![2],
            _ => {
                if let Some(n) = t.strip_suffix("cycle") {
                    let n = n.trim_end_matches('-').trim();
                    vec![n.parse().map_err(|_| bad())?]
                } else {
                    t.split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<usize>().map_err(|_| bad()))
                        .collect::<Result<_>>()?
                }
            }
        };
        if parts.contains(&0) {
            return Err(bad());
        }
        let used: usize = parts.iter().sum();
        if used > k {
            return Err(Error::InvalidArgument(format!(
                "cycle type {text:?} does not fit degree {k}"
            )));
        }
        parts.extend(std::iter::repeat_n(1, k - used));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(parts))
    }

    /// The least permutation of this type in image order: consecutive points
    /// grouped into cycles, largest cycles last.
    pub fn representative(&self) -> Permutation {
        let k: usize = self.0.iter().sum();
        let mut images: Vec<usize> = (0..k).collect();
        let mut start = 0;
        for &len in self.0.iter().rev() {
            for i in 0..len {
                images[start + i] = start + (i + 1) % len;
            }
            start += len;
        }
        Permutation::from_images(images).expect("valid construction")
    }

    /// All cycle types (partitions) of `k`, in decreasing order.
    pub fn all(k: usize) -> Vec<CycleType> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if rest == 0 {
                out.push(CycleType(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(k, k, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Image list such as `[1, 2, 0]` (0-based).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad image {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_cycles("(253)", 5).unwrap();
        assert_eq!(p.images(), vec![0, 4, 1, 3, 2]);
        assert_eq!(p.to_string(), "(253)");
        assert_eq!(Permutation::from_cycles("(2 5 3)", 5).unwrap(), p);
        assert_eq!(p.cycle_type(), CycleType(vec![3, 1, 1]));
        assert!(Permutation::from_cycles("(12)(13)", 3).is_err());
        assert!(Permutation::from_cycles("(16)", 5).is_err());
        assert_eq!(Permutation::from_cycles("()", 3).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn right_action_composition() {
        let a = Permutation::from_cycles("(12)", 3).unwrap();
        let b = Permutation::from_cycles("(23)", 3).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert!(a.then(&a).is_identity());
        let c = Permutation::from_cycles("(123)", 3).unwrap();
        assert!(c.then(&c).then(&c).is_identity());
        assert!(c.then(&c.inverse()).is_identity());
        assert_eq!(a.conjugate_by(&c).cycle_type(), a.cycle_type());
    }

    #[test]
    fn enumerate_and_classes() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(CycleType::all(5).len(), 7);
        let t = CycleType::parse("3cycle", 5).unwrap();
        assert_eq!(t, CycleType(vec![3, 1, 1]));
        assert_eq!(t.representative().cycle_type(), t);
        assert_eq!(CycleType::parse("2,2", 5).unwrap(), CycleType(vec![2, 2, 1]));
        assert_eq!(CycleType::parse("transposition", 3).unwrap().representative().to_string(), "(23)");
        assert!(CycleType::parse("6cycle", 5).is_err());
        assert_eq!(Permutation::from_cycles("(12)", 2).unwrap().sign(), -1);
    }
}
