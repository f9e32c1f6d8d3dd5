//! Exact arithmetic in `Z[t, t^-1]`, Novikov-ring predicates, and dense
//! polynomial-matrix linear algebra.

mod matrix;
pub mod modular;
mod poly;

pub use matrix::{bareiss_det, PolyMatrix};
pub use modular::{is_prime, rank_mod, reduce_mod, ModLaurent, ModPolyMatrix};
pub use poly::LaurentPoly;

/// Free-function form of [`LaurentPoly::is_novikov_unit`].
pub fn is_novikov_unit(p: &LaurentPoly) -> bool {
    p.is_novikov_unit()
}

/// Free-function form of [`LaurentPoly::is_monic`].
pub fn is_monic(p: &LaurentPoly) -> crate::Result<bool> {
    p.is_monic()
}
