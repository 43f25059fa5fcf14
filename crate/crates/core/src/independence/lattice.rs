//! Hermite normal form and integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
/// rows only, pivots positive and strictly increasing, entries above each
/// pivot reduced into `[0, pivot)`.
pub fn hnf(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below r becomes the pivot
            let Some(p) = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
            else {
                break;
            };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = m[r].clone();
        for i in 0..r {
            let q = m[i][c].div_floor(&pivot_row[c]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Canonical basis (in Hermite normal form) of `{k ∈ ℤ^m : Σ k_i·rows_i = 0}`
/// where `rows` has `m` entries of equal length.
pub fn integer_kernel(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..m).map(|j| BigInt::from(u8::from(i == j))));
            v
        })
        .collect();
    hnf(augmented)
        .into_iter()
        .filter(|row| row[..width].iter().all(Zero::is_zero))
        .map(|row| row[width..].to_vec())
        .collect()
}
