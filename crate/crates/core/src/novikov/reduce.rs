use rayon::prelude::*;
use serde::Serialize;

use crate::laurent::{LaurentPoly, PolyMatrix};

/// Result of eliminating Novikov-unit pivots from a presentation matrix.
///
/// The residual presents the same module over `Z((t))` as the input, so the
/// module needs at most `residual.rows()` generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    /// Pivot positions, as row and column indices of the input.
    pub pivots: Vec<(usize, usize)>,
    /// Input rows and columns that survive, in order.
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub residual: PolyMatrix,
    /// False when stopped early by the entry-size cap; the residual is
    /// still a valid presentation.
    pub complete: bool,
}

/// Entries wider than this stop the reduction.
const SPAN_CAP: usize = 4096;

/// Unit entries wider than this are not used as pivots; chains of wide
/// non-monomial pivots blow up coefficient sizes.
const PIVOT_SPAN_CAP: usize = 64;

fn pivot_key(p: &LaurentPoly) -> Option<usize> {
    (p.is_novikov_unit() && p.span() <= PIVOT_SPAN_CAP).then(|| p.span())
}

/// Clears rows and columns through Novikov-unit entries until none of span
/// at most [`PIVOT_SPAN_CAP`] remain.
///
/// Pivots are chosen by smallest coefficient span, then lowest row and
/// column. Monomial pivots are divided out exactly; other unit pivots scale
/// the target row by the pivot, which is invertible over `Z((t))`.
pub fn unit_pivot_reduce(m: &PolyMatrix) -> Reduction {
    let mut a = m.rows_vec();
    let mut row_alive = vec![true; m.rows()];
    let mut col_alive = vec![true; m.cols()];
    let mut pivots = Vec::new();
    let mut complete = true;
    loop {
        let choice = (0..m.rows())
            .filter(|&r| row_alive[r])
            .flat_map(|r| (0..m.cols()).filter(|&c| col_alive[c]).map(move |c| (r, c)))
            .filter_map(|(r, c)| pivot_key(&a[r][c]).map(|span| (span, r, c)))
            .min();
        let Some((_, pr, pc)) = choice else { break };
        if !eliminate(&mut a, &mut row_alive, &col_alive, pr, pc) {
            complete = false;
        }
        col_alive[pc] = false;
        pivots.push((pr, pc));
        if !complete {
            break;
        }
    }
    let rows: Vec<usize> = (0..m.rows()).filter(|&r| row_alive[r]).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| col_alive[c]).collect();
    let residual = PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| a[rows[i]][cols[j]].clone());
    Reduction {
        pivots,
        rows,
        cols,
        residual,
        complete,
    }
}

/// One elimination step; marks the pivot row dead. Returns false if an
/// entry outgrew [`SPAN_CAP`].
fn eliminate(
    a: &mut [Vec<LaurentPoly>],
    row_alive: &mut [bool],
    col_alive: &[bool],
    pr: usize,
    pc: usize,
) -> bool {
    row_alive[pr] = false;
    let pivot_row = a[pr].clone();
    let u = pivot_row[pc].clone();
    let monomial_inverse = u.is_monomial().then(|| {
        let e = u.low_degree().unwrap();
        LaurentPoly::monomial(u.lowest_coeff().unwrap().clone(), -e)
    });
    let live_cols: Vec<usize> = (0..col_alive.len())
        .filter(|&c| col_alive[c] && c != pc)
        .collect();
    let overflow = std::sync::atomic::AtomicBool::new(false);
    a.par_iter_mut()
        .enumerate()
        .filter(|(i, row)| row_alive[*i] && !row[pc].is_zero())
        .for_each(|(_, row)| {
            let factor = std::mem::take(&mut row[pc]);
            match &monomial_inverse {
                // (c t^e)^-1 = c t^-e for c = +-1
                Some(inv) => {
                    let f = &factor * inv;
                    for &c in &live_cols {
                        if !pivot_row[c].is_zero() {
                            row[c] -= &(&f * &pivot_row[c]);
                        }
                    }
                }
                None => {
                    for &c in &live_cols {
                        let scaled = &u * &row[c];
                        row[c] = if pivot_row[c].is_zero() {
                            scaled
                        } else {
                            &scaled - &(&factor * &pivot_row[c])
                        };
                    }
                }
            }
            if live_cols.iter().any(|&c| row[c].span() > SPAN_CAP) {
                overflow.store(true, std::sync::atomic::Ordering::Relaxed);
            }
        });
    !overflow.into_inner()
}

/// Replays `pivots` on `m`, checking that each is a Novikov unit when used.
pub(crate) fn replay(m: &PolyMatrix, pivots: &[(usize, usize)]) -> Option<PolyMatrix> {
    let mut a = m.rows_vec();
    let mut row_alive = vec![true; m.rows()];
    let mut col_alive = vec![true; m.cols()];
    for &(r, c) in pivots {
        if r >= m.rows() || c >= m.cols() || !row_alive[r] || !col_alive[c] {
            return None;
        }
        if !a[r][c].is_novikov_unit() {
            return None;
        }
        eliminate(&mut a, &mut row_alive, &col_alive, r, c);
        col_alive[c] = false;
    }
    let rows: Vec<usize> = (0..m.rows()).filter(|&r| row_alive[r]).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| col_alive[c]).collect();
    Some(PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| a[rows[i]][cols[j]].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn monomial_pivots_clear() {
        let m = PolyMatrix::from_rows(
            vec![vec![p("t"), p("2")], vec![p("3"), p("5*t")]],
            2,
        );
        let red = unit_pivot_reduce(&m);
        assert_eq!(red.pivots, vec![(0, 0)]);
        // 5t - 3 * t^-1 * 2
        assert_eq!(red.residual.rows(), 1);
        assert_eq!(red.residual[(0, 0)], p("-6*t^-1 + 5*t"));
        assert!(red.complete);
        assert_eq!(replay(&m, &red.pivots).unwrap(), red.residual);
    }

    #[test]
    fn series_unit_pivot() {
        // 1 - 2t is a unit in Z((t)) but not in Z[t, t^-1]
        let m = PolyMatrix::from_rows(vec![vec![p("1 - 2*t")], vec![p("2")]], 1);
        let red = unit_pivot_reduce(&m);
        assert_eq!(red.residual.rows(), 1);
        assert_eq!(red.residual.cols(), 0);
        assert!(replay(&m, &[(1, 0)]).is_none());
    }

    #[test]
    fn non_units_remain() {
        let m = PolyMatrix::from_rows(vec![vec![p("2 + t"), p("3*t")]], 2);
        let red = unit_pivot_reduce(&m);
        assert!(red.pivots.is_empty());
        assert_eq!(red.residual, m);
    }
}
