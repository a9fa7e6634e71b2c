//! Exact rank of small dense matrices over the Gaussian rationals.

use num::Zero;

use crate::scalar::GaussianRational;

/// Rank by fraction-exact Gaussian elimination. `rows` may be ragged only if
/// empty; all non-empty rows must have equal length.
pub fn rank(rows: &[Vec<GaussianRational>]) -> usize {
    let mut m: Vec<Vec<GaussianRational>> = rows.to_vec();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot) = (rank..n_rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for r in rank + 1..n_rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][col..n_cols].iter_mut().zip(&top[rank][col..n_cols]) {
                *x = &*x - &(&factor * p);
            }
        }
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}
