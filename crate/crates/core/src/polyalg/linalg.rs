use num_traits::Zero;

use super::mpoly::MPoly;
use super::rat::Rat;
use super::ratfunc::RatFunc;
use super::Ring;
use crate::error::{Error, Result};
use crate::exec::Exec;

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(n)
}

/// Determinant by Bareiss elimination. Every division is exact, so entries
/// stay in the ring; a zero pivot is replaced by a row swap.
pub fn det_fraction_free<T: Ring>(m: &[Vec<T>]) -> Result<T> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Solves `A x = b` by Cramer's rule: `x_i = det(A_i) / det(A)` with column
/// `i` replaced by `b`, each quotient reduced. Column determinants run under
/// `exec`.
pub fn solve_linear(a: &[Vec<MPoly>], b: &[MPoly], exec: Exec) -> Result<Vec<RatFunc>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {n}x{n} but right-hand side has {} entries",
            b.len()
        )));
    }
    let det = det_fraction_free(a)?;
    if det.is_zero() {
        return Err(Error::SingularSystem {
            det: det.to_string(),
        });
    }
    let cols: Vec<usize> = (0..n).collect();
    exec.try_map(&cols, |&i| {
        let replaced: Vec<Vec<MPoly>> = a
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                r[i] = bi.clone();
                r
            })
            .collect();
        let di = det_fraction_free(&replaced)?;
        RatFunc::new(di, det.clone())
    })
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank_rat(m: &[Vec<Rat>]) -> usize {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !Zero::is_zero(&a[r][c])) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        let pivot_row: Vec<Rat> = a[rank].iter().map(|x| x / &pivot).collect();
        for r in rank + 1..rows {
            if Zero::is_zero(&a[r][c]) {
                continue;
            }
            let f = a[r][c].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
        a[rank] = pivot_row;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
