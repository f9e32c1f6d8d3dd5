use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Permutation, PermutationRep};
use crate::error::{Error, Result};
use crate::foxcalc::GroupRingElem;
use crate::laurent::{bareiss_det, LaurentPoly, PolyMatrix};
use crate::presentation::{FreeWord, GeneratorId, Presentation};

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare(n, r.len()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix with columns `e_i -> e_perm(i)`.
    pub fn permutation(p: &Permutation) -> Self {
        let n = p.degree();
        let mut m = Self {
            n,
            data: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            m.data[p.image(i) * n + i] = BigInt::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.n + c]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] += a * b;
                    }
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for c in 0..n {
            for r in 0..n {
                data.push(self.data[r * n + c].clone());
            }
        }
        IntMatrix { n, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut rows: Vec<Vec<BigInt>> = self.data.chunks(n).map(<[BigInt]>::to_vec).collect();
        bareiss_det(&mut rows)
    }

    /// Inverse of a unimodular matrix, by the adjugate.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let n = self.n;
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::InvalidArgument(format!("determinant {d} is not a unit")));
        }
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| self.data[r * n + c].clone())
                            .collect()
                    })
                    .collect();
                let cof = if minor.is_empty() {
                    BigInt::one()
                } else {
                    bareiss_det(&mut minor)
                };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                data[i * n + j] = cof * sign * &d;
            }
        }
        Ok(IntMatrix { n, data })
    }

    pub fn to_poly(&self, scale: &LaurentPoly) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, self.n, |r, c| scale.scale(self.get(r, c)))
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n.max(1)).map(<[BigInt]>::to_vec).take(self.n).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// How stored matrices realize the right-representation rule
/// `rho(uv) = rho(v) rho(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Stored matrices are the images; words multiply in reversed order.
    #[default]
    AsGiven,
    /// Stored matrices are transposes of the images; words multiply in
    /// reading order and the product is transposed back.
    Transpose,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::AsGiven => "as-given",
            Convention::Transpose => "transpose",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "as-given" | "asgiven" => Ok(Convention::AsGiven),
            "transpose" | "transposed" => Ok(Convention::Transpose),
            other => Err(Error::InvalidArgument(format!("unknown convention {other:?}"))),
        }
    }
}

/// Integer matrix representation of a presented group, one unimodular
/// matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRep {
    dim: usize,
    matrices: Vec<IntMatrix>,
    convention: Convention,
    /// Kept when built from permutations, for fast word evaluation.
    #[serde(skip)]
    perms: Option<Vec<Permutation>>,
}

impl MatrixRep {
    /// Each matrix must be `dim x dim` with determinant `+-1`.
    pub fn new(dim: usize, matrices: Vec<IntMatrix>, convention: Convention) -> Result<Self> {
        for m in &matrices {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch(dim, m.dim()));
            }
            if !m.det().abs().is_one() {
                return Err(Error::InvalidArgument(
                    "generator matrix is not invertible over the integers".into(),
                ));
            }
        }
        Ok(Self {
            dim,
            matrices,
            convention,
            perms: None,
        })
    }

    /// The representation sending every generator to the identity.
    pub fn trivial(generators: usize, dim: usize) -> Self {
        Self {
            dim,
            matrices: vec![IntMatrix::identity(dim); generators],
            convention: Convention::AsGiven,
            perms: Some(vec![Permutation::identity(dim); generators]),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.matrices.len()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Stored matrix of generator `g`, oriented per the convention.
    pub fn stored(&self, g: GeneratorId) -> &IntMatrix {
        &self.matrices[g.0]
    }

    /// `rho(g)` for a generator.
    pub fn image(&self, g: GeneratorId) -> IntMatrix {
        match self.convention {
            Convention::AsGiven => self.matrices[g.0].clone(),
            Convention::Transpose => self.matrices[g.0].transpose(),
        }
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.perms.as_deref()
    }

    /// `rho(w)` over the integers.
    pub fn evaluate_integral(&self, w: &FreeWord) -> IntMatrix {
        if let Some(perms) = &self.perms {
            return IntMatrix::permutation(&perm_of_word(perms, w, self.dim));
        }
        let inverses: Vec<Option<IntMatrix>> = self.inverse_cache(w);
        let mut acc = IntMatrix::identity(self.dim);
        for l in w.letters() {
            let m = if l.sign > 0 {
                &self.matrices[l.gen.0]
            } else {
                inverses[l.gen.0].as_ref().unwrap()
            };
            acc = match self.convention {
                Convention::AsGiven => m.mul(&acc),
                Convention::Transpose => acc.mul(m),
            };
        }
        match self.convention {
            Convention::AsGiven => acc,
            Convention::Transpose => acc.transpose(),
        }
    }

    fn inverse_cache(&self, w: &FreeWord) -> Vec<Option<IntMatrix>> {
        let mut out = vec![None; self.matrices.len()];
        for l in w.letters() {
            if l.sign < 0 && out[l.gen.0].is_none() {
                out[l.gen.0] = Some(
                    self.matrices[l.gen.0]
                        .unimodular_inverse()
                        .expect("checked at construction"),
                );
            }
        }
        out
    }
}

/// Right-action image of a word: letters applied left to right.
pub(crate) fn perm_of_word(perms: &[Permutation], w: &FreeWord, k: usize) -> Permutation {
    let mut acc = Permutation::identity(k);
    for l in w.letters() {
        let p = &perms[l.gen.0];
        acc = if l.sign > 0 {
            acc.then(p)
        } else {
            acc.then(&p.inverse())
        };
    }
    acc
}

/// Permutation matrices of a verified permutation representation.
///
/// Word products follow the right action, so `rho(uv) = rho(v) rho(u)`.
pub fn perm_to_matrix(r: &PermutationRep, convention: Convention) -> Result<MatrixRep> {
    if !r.verified {
        return Err(Error::Unverified);
    }
    let matrices = r
        .images
        .iter()
        .map(|p| {
            let m = IntMatrix::permutation(p);
            match convention {
                Convention::AsGiven => m,
                Convention::Transpose => m.transpose(),
            }
        })
        .collect();
    Ok(MatrixRep {
        dim: r.degree,
        matrices,
        convention,
        perms: Some(r.images.clone()),
    })
}

/// Representation of `psum = connected_sum(p1, p2)` that restricts to `r1`
/// and `r2` on the two summands. The meridians must have equal images.
pub fn product_rep(
    r1: &MatrixRep,
    p1: &Presentation,
    r2: &MatrixRep,
    p2: &Presentation,
    psum: &Presentation,
) -> Result<MatrixRep> {
    if r1.dim != r2.dim {
        return Err(Error::DimensionMismatch(r1.dim, r2.dim));
    }
    let m1 = p1.meridian().ok_or(Error::MissingMeridian)?;
    let m2 = p2.meridian().ok_or(Error::MissingMeridian)?;
    if r1.image(m1) != r2.image(m2) {
        return Err(Error::MeridianMismatch);
    }
    let expected = p1.generator_count() + p2.generator_count();
    if psum.generator_count() != expected
        || r1.generator_count() != p1.generator_count()
        || r2.generator_count() != p2.generator_count()
    {
        return Err(Error::DimensionMismatch(expected, psum.generator_count()));
    }
    let matrices = (0..p1.generator_count())
        .map(|g| r1.image(GeneratorId(g)))
        .chain((0..p2.generator_count()).map(|g| r2.image(GeneratorId(g))))
        .map(|m| match r1.convention {
            Convention::AsGiven => m,
            Convention::Transpose => m.transpose(),
        })
        .collect();
    let perms = match (&r1.perms, &r2.perms) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
        _ => None,
    };
    let out = MatrixRep {
        dim: r1.dim,
        matrices,
        convention: r1.convention,
        perms,
    };
    if !verify_matrix_rep(psum, &out) {
        return Err(Error::Unverified);
    }
    Ok(out)
}

/// True iff every relator maps to the identity.
pub fn verify_matrix_rep(p: &Presentation, r: &MatrixRep) -> bool {
    r.generator_count() == p.generator_count()
        && p.relators().iter().all(|w| r.evaluate_integral(w).is_identity())
}

/// `rho_xi(w) = t^xi(w) rho(w)` as a matrix of Laurent polynomials.
pub fn evaluate_word(r: &MatrixRep, xi: &[i64], w: &FreeWord) -> PolyMatrix {
    let scale = LaurentPoly::monomial(BigInt::one(), w.exponent_sum(xi));
    r.evaluate_integral(w).to_poly(&scale)
}

/// Linear extension of [`evaluate_word`] to the group ring.
pub fn evaluate_group_ring(r: &MatrixRep, xi: &[i64], e: &GroupRingElem) -> PolyMatrix {
    let n = r.dim;
    let mut acc = PolyMatrix::zeros(n, n);
    for (w, c) in e.terms() {
        let shift = w.exponent_sum(xi);
        if let Some(perms) = &r.perms {
            // permutation matrices have one entry per column
            let p = perm_of_word(perms, w, n);
            for col in 0..n {
                acc[(p.image(col), col)].add_scaled_monomial(c, shift);
            }
        } else {
            let m = r.evaluate_integral(w);
            for row in 0..n {
                for col in 0..n {
                    let v = m.get(row, col);
                    if !v.is_zero() {
                        acc[(row, col)].add_scaled_monomial(&(c * v), shift);
                    }
                }
            }
        }
    }
    acc
}
