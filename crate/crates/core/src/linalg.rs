//! Small exact linear algebra helpers for the cone engine.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns. The output depends only on the row space of the input, which is
/// what makes the cone canonical forms representation-independent.
#[allow(clippy::needless_range_loop)] // elimination reads one row while writing another
pub(crate) fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = {
            let p = &rows[rank][col];
            Rational::one() / p.clone()
        };
        for e in rows[rank].iter_mut() {
            *e = &*e * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = &rows[rank][c] * &factor;
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Canonical nullspace basis read off an RREF: one vector per free column,
/// with a 1 in the free slot and the negated pivot-column coefficients.
pub(crate) fn nullspace(rref_rows: &[Vec<Rational>], pivots: &[usize], ncols: usize) -> Vec<Vec<Rational>> {
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = alloc::vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &piv) in rref_rows.iter().zip(pivots) {
            v[piv] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Exact inverse of a square matrix via Gauss-Jordan. `None` when singular.
#[allow(clippy::needless_range_loop)] // elimination reads one row while writing another
pub(crate) fn invert(mat: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = mat.len();
    let mut work: Vec<Vec<Rational>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot_row);
        let inv = Rational::one() / work[col][col].clone();
        for e in work[col].iter_mut() {
            *e = &*e * &inv;
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for c in 0..2 * n {
                    let delta = &work[col][c] * &factor;
                    work[r][c] = &work[r][c] - &delta;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn rref_and_nullspace() {
        let (rows, pivots) = rref(m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]), 3);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(rows, m(&[&[1, 2, 0], &[0, 0, 1]]));
        let null = nullspace(&rows, &pivots, 3);
        assert_eq!(null, m(&[&[-2, 1, 0]]));
    }

    #[test]
    fn invert_small() {
        let inv = invert(&m(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(invert(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
