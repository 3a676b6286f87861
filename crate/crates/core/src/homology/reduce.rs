//! Cancellation of unit entries in a chain complex.
//!
//! If `d(x) = u y + ...` with `u` a unit, the pair `(x, y)` is removed:
//! every other `x'` with `d(x') = v y + ...` becomes `x' - v u^-1 x`, the row
//! of `x` in the previous differential and the column of `y` in the next one
//! are dropped. The result is homotopy equivalent to the input. Over a field
//! nothing survives in the differentials; over `Z` the residue has no unit
//! entries and is small.

use super::ring::Ring;
use crate::complex::SparseIntMatrix;

/// Signals 64-bit overflow during elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Residual complex: surviving generator counts per degree and the
/// differentials between survivors.
#[derive(Debug, Clone)]
pub struct Reduced<E> {
    pub dims: Vec<usize>,
    /// `maps[k]`: `dims[k+1] x dims[k]`, column-major `(row, value)` lists.
    pub maps: Vec<Vec<Vec<(usize, E)>>>,
    /// Pivots cancelled in each differential.
    pub cancelled: Vec<usize>,
}

struct Mat<E> {
    cols: Vec<Vec<(u32, E)>>,
    rows: Vec<Vec<u32>>,
}

/// Reduces the complex `C_0 -> C_1 -> ...` given by `dims` and `maps`
/// (`maps[k]`: `C_k -> C_{k+1}`).
pub fn reduce<R: Ring>(ring: &R, dims: &[usize], maps: &[SparseIntMatrix]) -> Result<Reduced<R::E>, Overflow> {
    assert_eq!(maps.len() + 1, dims.len().max(1));
    let mut mats: Vec<Mat<R::E>> = maps
        .iter()
        .enumerate()
        .map(|(k, m)| {
            assert_eq!((m.cols(), m.rows()), (dims[k], dims[k + 1]), "dimension mismatch");
            let mut rows = vec![Vec::new(); m.rows()];
            let cols = (0..m.cols())
                .map(|c| {
                    m.column(c)
                        .iter()
                        .filter_map(|&(r, v)| {
                            let e = ring.from_i64(v);
                            (!ring.is_zero(&e)).then(|| {
                                rows[r as usize].push(c as u32);
                                (r, e)
                            })
                        })
                        .collect()
                })
                .collect();
            Mat { cols, rows }
        })
        .collect();
    let mut alive: Vec<Vec<bool>> = dims.iter().map(|&n| vec![true; n]).collect();
    let mut cancelled = vec![0; maps.len()];

    for k in 0..mats.len() {
        loop {
            let mut progress = false;
            for x in 0..dims[k] {
                if !alive[k][x] || mats[k].cols[x].is_empty() {
                    continue;
                }
                let pick = mats[k].cols[x]
                    .iter()
                    .filter(|(_, v)| ring.unit_inverse(v).is_some())
                    .min_by_key(|(r, _)| mats[k].rows[*r as usize].len())
                    .map(|(r, v)| (*r as usize, v.clone()));
                let Some((y, u)) = pick else { continue };
                cancel(ring, &mut mats, &mut alive, k, x, y, &u)?;
                cancelled[k] += 1;
                progress = true;
            }
            if !progress {
                break;
            }
        }
    }

    // renumber survivors
    let index: Vec<Vec<usize>> = alive
        .iter()
        .map(|a| {
            let mut next = 0;
            a.iter()
                .map(|&l| {
                    let i = next;
                    next += l as usize;
                    i
                })
                .collect()
        })
        .collect();
    let new_dims: Vec<usize> = alive.iter().map(|a| a.iter().filter(|&&l| l).count()).collect();
    let maps = mats
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            m.cols
                .into_iter()
                .enumerate()
                .filter(|(c, _)| alive[k][*c])
                .map(|(_, col)| {
                    col.into_iter()
                        .filter(|(r, _)| alive[k + 1][*r as usize])
                        .map(|(r, v)| (index[k + 1][r as usize], v))
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(Reduced { dims: new_dims, maps, cancelled })
}

fn cancel<R: Ring>(
    ring: &R,
    mats: &mut [Mat<R::E>],
    alive: &mut [Vec<bool>],
    k: usize,
    x: usize,
    y: usize,
    u: &R::E,
) -> Result<(), Overflow> {
    let uinv = ring.unit_inverse(u).expect("unit pivot");
    let colx = std::mem::take(&mut mats[k].cols[x]);
    let mut others = std::mem::take(&mut mats[k].rows[y]);
    others.sort_unstable();
    others.dedup();
    for &xp in &others {
        let xp = xp as usize;
        if xp == x || !alive[k][xp] {
            continue;
        }
        let col = &mats[k].cols[xp];
        let Ok(pos) = col.binary_search_by_key(&(y as u32), |e| e.0) else { continue };
        let f = ring.mul(&col[pos].1, &uinv).ok_or(Overflow)?;
        let (merged, fresh) = axpy(ring, col, &colx, &f)?;
        mats[k].cols[xp] = merged;
        for r in fresh {
            mats[k].rows[r as usize].push(xp as u32);
        }
    }
    alive[k][x] = false;
    alive[k + 1][y] = false;
    if k > 0 {
        let prev = &mut mats[k - 1];
        for c in std::mem::take(&mut prev.rows[x]) {
            prev.cols[c as usize].retain(|e| e.0 as usize != x);
        }
    }
    if k + 1 < mats.len() {
        mats[k + 1].cols[y].clear();
    }
    Ok(())
}

/// `a - f * b` on sorted sparse columns; also returns rows new to `a`.
fn axpy<R: Ring>(
    ring: &R,
    a: &[(u32, R::E)],
    b: &[(u32, R::E)],
    f: &R::E,
) -> Result<(Vec<(u32, R::E)>, Vec<u32>), Overflow> {
    let zero = ring.from_i64(0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut fresh = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map_or(u32::MAX, |e| e.0);
        let rb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(a[i].clone());
            i += 1;
        } else if rb < ra {
            let v = ring.sub_mul(&zero, f, &b[j].1).ok_or(Overflow)?;
            if !ring.is_zero(&v) {
                out.push((rb, v));
                fresh.push(rb);
            }
            j += 1;
        } else {
            let v = ring.sub_mul(&a[i].1, f, &b[j].1).ok_or(Overflow)?;
            if !ring.is_zero(&v) {
                out.push((ra, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok((out, fresh))
}

#[cfg(test)]
mod tests {
    use super::super::ring::{Fp, Int64};
    use super::*;

    #[test]
    fn acyclic_pair_cancels() {
        let d = SparseIntMatrix::from_dense(&[vec![1, 1], vec![0, 1]]);
        let r = reduce(&Int64, &[2, 2], &[d]).unwrap();
        assert_eq!(r.dims, vec![0, 0]);
        assert_eq!(r.cancelled, vec![2]);
    }

    #[test]
    fn non_units_survive_over_z_only() {
        let d = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 1]]);
        let r = reduce(&Int64, &[2, 2], &[d.clone()]).unwrap();
        assert_eq!(r.dims, vec![1, 1]);
        assert_eq!(r.maps[0], vec![vec![(0, 2)]]);
        let r = reduce(&Fp(3), &[2, 2], &[d.clone()]).unwrap();
        assert_eq!(r.dims, vec![0, 0]);
        let r = reduce(&Fp(2), &[2, 2], &[d]).unwrap();
        assert_eq!(r.dims, vec![1, 1]);
        assert!(r.maps[0][0].is_empty());
    }

    #[test]
    fn fill_in_is_tracked() {
        // d0: C0 (1) -> C1 (2), d1: C1 -> C2 (1), d1 d0 = 0
        let d0 = SparseIntMatrix::from_dense(&[vec![1], vec![1]]);
        let d1 = SparseIntMatrix::from_dense(&[vec![1, -1]]);
        let r = reduce(&Int64, &[1, 2, 1], &[d0, d1]).unwrap();
        assert_eq!(r.dims, vec![0, 0, 0]);
    }
}
