//! The twisted chain complex `C_2 -> C_1 -> C_0` of a presentation with
//! coefficients in a representation tensored with `t^xi`, and its Novikov
//! homology numbers over `Z((t))`.

mod profile;
mod reduce;

use serde::Serialize;

pub use profile::{
    compute_profile, compute_profile_with, verify_certificate, Certificate, NovikovProfile,
    ProfileOptions, DEFAULT_PRIMES,
};
pub use reduce::{unit_pivot_reduce, Reduction};

use crate::error::{Error, Result};
use crate::foxcalc::jacobian;
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::presentation::{FreeWord, Presentation};
use crate::reps::{evaluate_group_ring, evaluate_word, verify_matrix_rep, MatrixRep};

/// Boundary matrices of the twisted presentation complex.
///
/// `d1` is `n x ng`, a row of blocks `rho(s_j) - I`. `d2` is `ng x nr`;
/// block `(j, i)` is the image of the Fox derivative of relator `i` by
/// generator `j`. Generator `j` owns rows `j*n..(j+1)*n` of `d2` and the
/// matching columns of `d1`; relator `i` owns columns `i*n..(i+1)*n` of `d2`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistedComplex {
    pub n: usize,
    pub generators: usize,
    pub relators: usize,
    pub d1: PolyMatrix,
    pub d2: PolyMatrix,
}

impl TwistedComplex {
    pub fn d1_block(&self, gen: usize) -> PolyMatrix {
        self.d1.block(0, gen * self.n, self.n, self.n)
    }

    /// `d2` without the rows of `drop_gen` and restricted to the columns of
    /// `keep_rels`.
    pub fn minor(&self, drop_gen: usize, keep_rels: &[usize]) -> PolyMatrix {
        let n = self.n;
        let rows: Vec<usize> = (0..self.generators)
            .filter(|&j| j != drop_gen)
            .flat_map(|j| j * n..(j + 1) * n)
            .collect();
        let cols: Vec<usize> = keep_rels.iter().flat_map(|&i| i * n..(i + 1) * n).collect();
        self.d2.select(&rows, &cols)
    }

    /// Presentation matrix of `H_1`: `d2` with the rows of `drop_gen` removed.
    /// Valid when the `d1` block of `drop_gen` is invertible over `Z((t))`.
    pub fn homology_presentation(&self, drop_gen: usize) -> PolyMatrix {
        let all: Vec<usize> = (0..self.relators).collect();
        self.minor(drop_gen, &all)
    }

    pub fn chain_law_holds(&self) -> bool {
        self.d1.mul(&self.d2).is_zero()
    }
}

/// Assembles the complex and checks `d1 d2 = 0`.
pub fn build_complex(p: &Presentation, r: &MatrixRep) -> Result<TwistedComplex> {
    if r.generator_count() != p.generator_count() || !verify_matrix_rep(p, r) {
        return Err(Error::Unverified);
    }
    let n = r.dim();
    let g = p.generator_count();
    let rels = p.relator_count();
    let xi = p.xi();
    let mut d1 = PolyMatrix::zeros(n, n * g);
    for j in 0..g {
        let block = evaluate_word(r, xi, &FreeWord::generator(j)).sub(&PolyMatrix::identity(n));
        d1.set_block(0, j * n, &block);
    }
    let jac = jacobian(p);
    let blocks: Vec<Vec<PolyMatrix>> = {
        use rayon::prelude::*;
        jac.par_iter()
            .map(|row| row.iter().map(|e| evaluate_group_ring(r, xi, e)).collect())
            .collect()
    };
    let mut d2 = PolyMatrix::zeros(n * g, n * rels);
    for (i, row) in blocks.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            d2.set_block(j * n, i * n, block);
        }
    }
    let c = TwistedComplex {
        n,
        generators: g,
        relators: rels,
        d1,
        d2,
    };
    if !c.chain_law_holds() {
        return Err(Error::ChainLaw);
    }
    Ok(c)
}

/// A generator whose `d1` block has Novikov-unit determinant, preferring the
/// last one; its existence makes `d1` onto over `Z((t))`.
pub fn d1_epi_check(c: &TwistedComplex) -> Option<(usize, LaurentPoly)> {
    (0..c.generators).rev().find_map(|j| {
        let d = c.d1_block(j).det().ok()?;
        d.is_novikov_unit().then_some((j, d))
    })
}

/// Default square minor: the last generator with a unit `d1` block, and
/// relators kept greedily in order while they add rank.
pub fn default_minor(c: &TwistedComplex) -> Option<(usize, Vec<usize>)> {
    let (gen, _) = d1_epi_check(c)?;
    let keep = profile::greedy_relators(c, gen)?;
    Some((gen, keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reps::{perm_to_matrix, Convention};

    #[test]
    fn unknot_trivial_rep() {
        let u = fixtures::unknot();
        let c = build_complex(&u, &MatrixRep::trivial(1, 1)).unwrap();
        assert_eq!(c.d1[(0, 0)], "t - 1".parse().unwrap());
        assert_eq!((c.d2.rows(), c.d2.cols()), (1, 0));
        let (j, d) = d1_epi_check(&c).unwrap();
        assert_eq!(j, 0);
        assert!(d.is_novikov_unit());
    }

    #[test]
    fn conway_shapes_and_chain_law() {
        let p = fixtures::conway();
        let r = perm_to_matrix(&fixtures::conway_rep(), Convention::AsGiven).unwrap();
        let c = build_complex(&p, &r).unwrap();
        assert_eq!((c.d1.rows(), c.d1.cols()), (5, 55));
        assert_eq!((c.d2.rows(), c.d2.cols()), (55, 55));
        assert!(c.chain_law_holds());
        assert!(d1_epi_check(&c).is_some());
    }

    #[test]
    fn unverified_rep_rejected() {
        let p = fixtures::trefoil();
        let bad = perm_to_matrix(
            &crate::reps::PermutationRep::checked(
                &p,
                3,
                vec![
                    crate::reps::Permutation::from_cycles("(12)", 3).unwrap(),
                    crate::reps::Permutation::identity(3),
                    crate::reps::Permutation::identity(3),
                ],
            ),
            Convention::AsGiven,
        );
        assert!(bad.is_err());
    }
}
