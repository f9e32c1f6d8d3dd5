//! Inputs shared by the benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use novikov_core::novikov::{build_complex, TwistedComplex};
use novikov_core::reps::{perm_to_matrix, Convention};
use novikov_core::{fixtures, LaurentPoly, PolyMatrix};

/// Seeded random `n x n` matrix with entries of degree below `len`.
pub fn random_matrix(seed: u64, n: usize, len: usize) -> PolyMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    PolyMatrix::from_fn(n, n, |_, _| {
        let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
        LaurentPoly::from_i64s(rng.gen_range(-2..=2), &coeffs)
    })
}

/// The Conway knot complex twisted by its known `A_5` representation.
pub fn conway_complex() -> TwistedComplex {
    let r = perm_to_matrix(&fixtures::conway_rep(), Convention::AsGiven).expect("fixture rep");
    build_complex(&fixtures::conway(), &r).expect("fixture complex")
}
