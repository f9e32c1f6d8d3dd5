//! Representations of presented groups: permutation representations found by
//! search, integer matrix representations, and their evaluation on words and
//! group-ring elements.

mod file;
mod matrix;
mod perm;
mod search;

use serde::{Deserialize, Serialize};

pub use file::{parse_rep_file, RepFile};
pub use matrix::{
    evaluate_group_ring, evaluate_word, perm_to_matrix, product_rep, verify_matrix_rep, Convention,
    IntMatrix, MatrixRep,
};
pub use perm::{CycleType, Permutation};
pub use search::search_permutation_reps;

use crate::presentation::Presentation;

/// A homomorphism to `S_degree`, one image per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationRep {
    pub degree: usize,
    pub images: Vec<Permutation>,
    /// Set only after every relator has been checked.
    pub verified: bool,
}

impl PermutationRep {
    pub fn trivial(generators: usize, degree: usize) -> Self {
        Self {
            degree,
            images: vec![Permutation::identity(degree); generators],
            verified: true,
        }
    }

    /// Builds and verifies against `p`.
    pub fn checked(p: &Presentation, degree: usize, images: Vec<Permutation>) -> Self {
        let mut r = Self {
            degree,
            images,
            verified: false,
        };
        r.verified = verify_permutation_rep(p, &r);
        r
    }

    /// Canonical representative of the simultaneous conjugacy class.
    pub fn canonical(&self) -> Vec<Permutation> {
        search::canonical_form(&self.images, &Permutation::all(self.degree))
    }

    pub fn is_conjugate_to(&self, other: &PermutationRep) -> bool {
        self.degree == other.degree
            && self.images.len() == other.images.len()
            && self.canonical() == other.canonical()
    }

    /// Size of the image subgroup, by closure.
    pub fn image_order(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut frontier = vec![Permutation::identity(self.degree)];
        seen.insert(frontier[0].clone());
        while let Some(x) = frontier.pop() {
            for g in &self.images {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }
}

/// True iff every relator evaluates to the identity under the right action.
pub fn verify_permutation_rep(p: &Presentation, r: &PermutationRep) -> bool {
    r.images.len() == p.generator_count()
        && r.images.iter().all(|q| q.degree() == r.degree)
        && p
            .relators()
            .iter()
            .all(|w| matrix::perm_of_word(&r.images, w, r.degree).is_identity())
}

/// Either kind of representation, for callers that accept both.
pub fn verify_rep(p: &Presentation, r: &RepFile) -> bool {
    match r {
        RepFile::Permutation(r) => verify_permutation_rep(p, r),
        RepFile::Matrix(m) => verify_matrix_rep(p, m),
    }
}
