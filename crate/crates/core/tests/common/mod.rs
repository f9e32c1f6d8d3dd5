//! Oracles shared by the property suites and the acceptance target.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;

use novikov_core::foxcalc::{fox_derivative, GroupRingElem};
use novikov_core::presentation::Letter;
use novikov_core::reps::{evaluate_word, MatrixRep};
use novikov_core::{FreeWord, GeneratorId, LaurentPoly, PolyMatrix};

/// The Conway knot determinant, lowest degree first.
pub const CONWAY_DET: [i64; 19] = [
    -5, 14, -15, 16, -19, 10, 5, -24, 34, -32, 34, -24, 5, 10, -19, 16, -15, 14, -5,
];

/// Equality up to `+-t^k` and `t <-> t^-1`.
pub fn matches_up_to_conventions(p: &LaurentPoly, coeffs: &[i64]) -> bool {
    let target = LaurentPoly::from_i64s(0, coeffs);
    p.eq_up_to_unit(&target) || p.invert_variable().eq_up_to_unit(&target)
}

/// Seifert-matrix oracle: `det(V - t V^T)` for a 2x2 Seifert matrix.
pub fn seifert_alexander(v: [[i64; 2]; 2]) -> LaurentPoly {
    let entry = |r: usize, c: usize| LaurentPoly::from_i64s(0, &[v[r][c], -v[c][r]]);
    &(&entry(0, 0) * &entry(1, 1)) - &(&entry(0, 1) * &entry(1, 0))
}

pub fn random_reduced_word(rng: &mut impl Rng, gens: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.gen_range(0..gens);
        let l = if rng.gen_bool(0.5) { Letter::pos(g) } else { Letter::neg(g) };
        if letters.last().is_some_and(|&last| last == l.inverse()) {
            continue;
        }
        letters.push(l);
    }
    FreeWord::new(letters)
}

/// `sum_j dw/dx_j (x_j - 1) = w - 1`.
pub fn fox_fundamental_holds(w: &FreeWord, gens: usize) -> bool {
    let mut lhs = GroupRingElem::zero();
    for j in 0..gens {
        let x_minus_one = GroupRingElem::word(FreeWord::generator(j)).sub(&GroupRingElem::one());
        lhs = lhs.add(&fox_derivative(w, GeneratorId(j)).mul(&x_minus_one));
    }
    lhs == GroupRingElem::word(w.clone()).sub(&GroupRingElem::one())
}

/// `d(uv) = du + u dv`.
pub fn fox_product_rule_holds(u: &FreeWord, v: &FreeWord, gens: usize) -> bool {
    (0..gens).all(|j| {
        let g = GeneratorId(j);
        let lhs = fox_derivative(&u.mul(v), g);
        let rhs = fox_derivative(u, g).add(&fox_derivative(v, g).left_mul_word(u));
        lhs == rhs
    })
}

/// `rho(uv) = rho(v) rho(u)` with `t`-exponents adding.
pub fn anti_homomorphism_holds(r: &MatrixRep, xi: &[i64], u: &FreeWord, v: &FreeWord) -> bool {
    let uv = evaluate_word(r, xi, &u.mul(v));
    uv == evaluate_word(r, xi, v).mul(&evaluate_word(r, xi, u))
}

pub fn random_poly_matrix(rng: &mut impl Rng, max_n: usize, max_deg: usize) -> PolyMatrix {
    let n = rng.gen_range(1..=max_n);
    PolyMatrix::from_fn(n, n, |_, _| {
        if rng.gen_bool(0.2) {
            return LaurentPoly::zero();
        }
        let low = rng.gen_range(-2..=2);
        let len = rng.gen_range(1..=max_deg + 1);
        let coeffs: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect();
        LaurentPoly::from_coeffs(low, coeffs)
    })
}

pub fn det_routes_agree(m: &PolyMatrix) -> bool {
    m.det().unwrap() == m.det_symbolic().unwrap()
}
