use rayon::prelude::*;

use super::{CycleType, Permutation, PermutationRep};
use crate::presentation::{FreeWord, Presentation};

/// Relator shape `a^-1 b^e c b^-e`, the Wirtinger conjugation; returns the
/// two conjugate generators `(a, c)`.
fn conjugation_pair(w: &FreeWord) -> Option<(usize, usize)> {
    match w.letters() {
        [a, b, c, d] if a.sign < 0 && c.sign > 0 && *d == b.inverse() => Some((a.gen.0, c.gen.0)),
        _ => None,
    }
}

/// Groups generators that are forced to be conjugate by conjugation relators.
fn conjugacy_components(p: &Presentation) -> Vec<usize> {
    let g = p.generator_count();
    let mut parent: Vec<usize> = (0..g).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for r in p.relators() {
        if let Some((a, c)) = conjugation_pair(r) {
            let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
            parent[ra.max(rc)] = ra.min(rc);
        }
    }
    (0..g).map(|x| find(&mut parent, x)).collect()
}

struct Problem<'a> {
    k: usize,
    relators: Vec<&'a FreeWord>,
    /// Relator indices touching each generator.
    touching: Vec<Vec<usize>>,
    component: Vec<usize>,
    /// Branching order: most-constrained generators first.
    order: Vec<usize>,
    class: Option<CycleType>,
    domains: std::collections::HashMap<CycleType, Vec<Permutation>>,
    all: Vec<Permutation>,
}

type Assignment = Vec<Option<Permutation>>;

impl Problem<'_> {
    fn domain_for(&self, gen: usize, a: &Assignment) -> &[Permutation] {
        if let Some(c) = &self.class {
            return &self.domains[c];
        }
        let sibling = (0..a.len()).find(|&j| self.component[j] == self.component[gen] && a[j].is_some());
        match sibling {
            Some(j) => &self.domains[&a[j].as_ref().unwrap().cycle_type()],
            None => &self.all,
        }
    }

    fn admissible(&self, gen: usize, value: &Permutation, a: &Assignment) -> bool {
        if let Some(c) = &self.class {
            return value.cycle_type() == *c;
        }
        let sibling = (0..a.len()).find(|&j| j != gen && self.component[j] == self.component[gen] && a[j].is_some());
        sibling.is_none_or(|j| a[j].as_ref().unwrap().cycle_type() == value.cycle_type())
    }

    /// Evaluates relator `r` with the right action. Returns `Err(())` on a
    /// violated relator, `Ok(Some((gen, value)))` when exactly one letter is
    /// unassigned and can be solved for, `Ok(None)` otherwise.
    fn inspect(&self, r: usize, a: &Assignment) -> Result<Option<(usize, Permutation)>, ()> {
        let w = self.relators[r];
        let mut hole: Option<usize> = None;
        for (i, l) in w.letters().iter().enumerate() {
            if a[l.gen.0].is_none() {
                if hole.is_some() {
                    return Ok(None);
                }
                hole = Some(i);
            }
        }
        let id = Permutation::identity(self.k);
        let value = |l: &crate::presentation::Letter| {
            let p = a[l.gen.0].as_ref().unwrap();
            if l.sign > 0 {
                p.clone()
            } else {
                p.inverse()
            }
        };
        let letters = w.letters();
        match hole {
            None => {
                let prod = letters.iter().fold(id, |acc, l| acc.then(&value(l)));
                if prod.is_identity() {
                    Ok(None)
                } else {
                    Err(())
                }
            }
            Some(i) => {
                // prefix * x^e * suffix = 1  =>  x^e = prefix^-1 suffix^-1
                let prefix = letters[..i].iter().fold(id.clone(), |acc, l| acc.then(&value(l)));
                let suffix = letters[i + 1..].iter().fold(id, |acc, l| acc.then(&value(l)));
                let xe = prefix.inverse().then(&suffix.inverse());
                let l = letters[i];
                let x = if l.sign > 0 { xe } else { xe.inverse() };
                Ok(Some((l.gen.0, x)))
            }
        }
    }

    /// Forces values through relators with one unknown letter. Returns
    /// `false` on contradiction.
    fn propagate(&self, a: &mut Assignment, mut queue: Vec<usize>) -> bool {
        while let Some(r) = queue.pop() {
            match self.inspect(r, a) {
                Err(()) => return false,
                Ok(None) => {}
                Ok(Some((gen, value))) => {
                    if !self.admissible(gen, &value, a) {
                        return false;
                    }
                    a[gen] = Some(value);
                    queue.extend(self.touching[gen].iter().copied());
                }
            }
        }
        true
    }

    fn assign(&self, a: &Assignment, gen: usize, value: Permutation) -> Option<Assignment> {
        let mut next = a.clone();
        next[gen] = Some(value);
        if self.propagate(&mut next, self.touching[gen].clone()) {
            Some(next)
        } else {
            None
        }
    }

    fn explore(&self, a: Assignment, depth: usize) -> Vec<Vec<Permutation>> {
        let Some(&gen) = self.order.iter().find(|&&g| a[g].is_none()) else {
            return vec![a.into_iter().map(Option::unwrap).collect()];
        };
        let domain = self.domain_for(gen, &a);
        if depth < 2 {
            domain
                .par_iter()
                .filter_map(|v| self.assign(&a, gen, v.clone()))
                .flat_map_iter(|next| self.explore(next, depth + 1))
                .collect()
        } else {
            domain
                .iter()
                .filter_map(|v| self.assign(&a, gen, v.clone()))
                .flat_map(|next| self.explore(next, depth + 1))
                .collect()
        }
    }
}

/// Lexicographically least simultaneous conjugate of a tuple.
pub(crate) fn canonical_form(images: &[Permutation], conjugators: &[Permutation]) -> Vec<Permutation> {
    let mut best: Option<Vec<Permutation>> = None;
    for c in conjugators {
        let cand: Vec<Permutation> = images.iter().map(|p| p.conjugate_by(c)).collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Homomorphisms from the presented group to `S_k`, up to simultaneous
/// conjugation.
///
/// Every generator image has cycle type `class` when it is given. Results
/// are canonical (least conjugate), verified, sorted, and truncated to
/// `limit`.
pub fn search_permutation_reps(
    p: &Presentation,
    k: usize,
    class: Option<&CycleType>,
    limit: usize,
) -> Vec<PermutationRep> {
    assert!(k >= 1, "degree must be positive");
    let g = p.generator_count();
    if let Some(c) = class {
        if c.0.iter().sum::<usize>() != k {
            return Vec::new();
        }
    }
    let relators: Vec<&FreeWord> = p.relators().iter().filter(|r| !r.is_empty()).collect();
    let mut touching = vec![Vec::new(); g];
    for (ri, r) in relators.iter().enumerate() {
        for gen in r.generators() {
            if touching[gen.0].last() != Some(&ri) {
                touching[gen.0].push(ri);
            }
        }
    }
    let mut order: Vec<usize> = (0..g).collect();
    order.sort_by_key(|&j| std::cmp::Reverse(touching[j].len()));

    let all = Permutation::all(k);
    let mut domains: std::collections::HashMap<CycleType, Vec<Permutation>> = Default::default();
    for perm in &all {
        domains.entry(perm.cycle_type()).or_default().push(perm.clone());
    }
    let problem = Problem {
        k,
        relators,
        touching,
        component: conjugacy_components(p),
        order,
        class: class.cloned(),
        domains,
        all: all.clone(),
    };

    let mut found: Vec<Vec<Permutation>> = Vec::new();
    if g == 0 {
        found.push(Vec::new());
    } else {
        // conjugation lets the first generator take a fixed representative
        let first = problem.order[0];
        let seeds: Vec<CycleType> = match class {
            Some(c) => vec![c.clone()],
            None => CycleType::all(k),
        };
        let start: Assignment = vec![None; g];
        for ct in seeds {
            if let Some(a) = problem.assign(&start, first, ct.representative()) {
                found.extend(problem.explore(a, 0));
            }
        }
    }

    let mut canon: Vec<Vec<Permutation>> = found
        .par_iter()
        .map(|imgs| canonical_form(imgs, &all))
        .collect();
    canon.sort();
    canon.dedup();
    canon
        .into_iter()
        .take(limit)
        .map(|images| {
            let mut r = PermutationRep {
                degree: k,
                images,
                verified: false,
            };
            r.verified = super::verify_permutation_rep(p, &r);
            debug_assert!(r.verified);
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{braid_to_wirtinger, BraidWord};

    #[test]
    fn unknot_classes() {
        let u = Presentation::unknot();
        let reps = search_permutation_reps(&u, 3, None, 10);
        let shown: Vec<String> = reps.iter().map(|r| r.images[0].to_string()).collect();
        assert_eq!(shown, vec!["()", "(23)", "(123)"]);
    }

    #[test]
    fn degree_one_is_trivial() {
        let t = braid_to_wirtinger(&BraidWord::new(2, vec![1, 1, 1]).unwrap());
        let reps = search_permutation_reps(&t, 1, None, 10);
        assert_eq!(reps.len(), 1);
        assert!(reps[0].images.iter().all(Permutation::is_identity));
    }

    #[test]
    fn trefoil_onto_s3() {
        // the trefoil group surjects onto S3 with meridians going to transpositions
        let t = braid_to_wirtinger(&BraidWord::new(2, vec![1, 1, 1]).unwrap());
        let tr = CycleType::parse("transposition", 3).unwrap();
        let reps = search_permutation_reps(&t, 3, Some(&tr), 10);
        assert!(reps.iter().any(|r| {
            let distinct: std::collections::BTreeSet<_> = r.images.iter().collect();
            distinct.len() == 3
        }));
        assert!(reps.iter().all(|r| r.verified));
        // figure-eight has no such map: its determinant 5 is prime to 3
        let f = braid_to_wirtinger(&BraidWord::new(3, vec![1, -2, 1, -2]).unwrap());
        let reps = search_permutation_reps(&f, 3, Some(&tr), 10);
        assert!(reps.iter().all(|r| r.images.iter().all(|p| *p == r.images[0])));
    }

    #[test]
    fn canonical_form_is_invariant() {
        let a = Permutation::from_cycles("(12)", 3).unwrap();
        let b = Permutation::from_cycles("(13)", 3).unwrap();
        let all = Permutation::all(3);
        let c = Permutation::from_cycles("(123)", 3).unwrap();
        let conj: Vec<_> = [a.clone(), b.clone()].iter().map(|p| p.conjugate_by(&c)).collect();
        assert_eq!(canonical_form(&[a, b], &all), canonical_form(&conj, &all));
    }
}
