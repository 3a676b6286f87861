//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::reduce::{reduce, Overflow, Reduced};
use super::ring::{BigZ, Int64, Ring};
use crate::complex::SparseIntMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive, `r` = rank).
/// Unit pivots are cancelled sparsely first; the rest is reduced densely.
pub fn smith_normal_form(m: &SparseIntMatrix) -> Vec<BigInt> {
    let dims = [m.cols(), m.rows()];
    match reduce(&Int64, &dims, std::slice::from_ref(m)) {
        Ok(r) => finish(&Int64, r),
        Err(Overflow) => finish(&BigZ, reduce(&BigZ, &dims, std::slice::from_ref(m)).expect("no overflow")),
    }
}

/// Invariant factors of a reduced single-map complex.
pub(crate) fn finish<R: Ring>(ring: &R, r: Reduced<R::E>) -> Vec<BigInt> {
    let mut out = vec![BigInt::one(); r.cancelled[0]];
    out.extend(dense_snf(to_dense(ring, r.dims[1], &r.maps[0])));
    out
}

pub(crate) fn to_dense<R: Ring>(ring: &R, rows: usize, cols: &[Vec<(usize, R::E)>]) -> Vec<Vec<BigInt>> {
    let mut a = vec![vec![BigInt::zero(); cols.len()]; rows];
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col {
            a[*r][c] = ring.to_bigint(v).expect("integer entries");
        }
    }
    a
}

/// Dense Smith normal form. Pivot: smallest absolute value, ties broken by
/// the fewest nonzeros in its row and column.
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        let mut best_key = (BigInt::zero(), usize::MAX);
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let fill = (t..cols).filter(|&c| !a[i][c].is_zero()).count()
                    + (t..rows).filter(|&r| !a[r][j].is_zero()).count();
                let key = (a[i][j].abs(), fill);
                if best.is_none() || key < best_key {
                    best = Some((i, j));
                    best_key = key;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                    if a[i][t].abs() < a[t][t].abs() {
                        a.swap(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                    if a[t][j].abs() < a[t][t].abs() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let p = a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // enforce the divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}
