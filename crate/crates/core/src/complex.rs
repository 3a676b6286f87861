//! Chain complexes of enhanced states, one per quantum grading.

use std::io::{self, Write};

use rustc_hash::FxHashMap;

use crate::states::{subset_rank, EnhancedState, StateSpace};

/// Sparse integer matrix stored by columns. Rows within a column are
/// increasing and no zero is stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Sums duplicate entries and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for &(r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of range");
            m.cols[c].push((r as u32, v));
        }
        for col in &mut m.cols {
            normalise(col);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut t = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                t.push((r, c, v));
            }
        }
        Self::from_triplets(nr, nc, &t)
    }

    pub(crate) fn from_columns(rows: usize, mut cols: Vec<Vec<(u32, i64)>>) -> Self {
        for col in &mut cols {
            normalise(col);
        }
        SparseIntMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let col = &self.cols[c];
        col.binary_search_by_key(&(r as u32), |e| e.0).map_or(0, |i| col[i].1)
    }

    /// Entries as `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r as usize, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            cols[r].push((c as u32, v));
        }
        SparseIntMatrix { rows: self.cols.len(), cols }
    }

    /// `self * rhs`, or `None` on 64-bit overflow.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> Option<SparseIntMatrix> {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let mut out = Vec::with_capacity(rhs.cols());
        let mut acc: FxHashMap<u32, i64> = FxHashMap::default();
        for col in &rhs.cols {
            acc.clear();
            for &(k, v) in col {
                for &(r, w) in &self.cols[k as usize] {
                    let e = acc.entry(r).or_insert(0);
                    *e = e.checked_add(v.checked_mul(w)?)?;
                }
            }
            out.push(acc.iter().map(|(&r, &v)| (r, v)).collect());
        }
        Some(Self::from_columns(self.rows, out))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v;
        }
        d
    }

    /// Text dump: a header line `rows cols nnz`, then one `row col value`
    /// line per entry (0-based, column-major).
    pub fn write_triplets(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{} {} {}", self.rows, self.cols(), self.nnz())?;
        for (r, c, v) in self.triplets() {
            writeln!(w, "{r} {c} {v}")?;
        }
        Ok(())
    }
}

fn normalise(col: &mut Vec<(u32, i64)>) {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    *col = out;
}

/// `C_{*,b}`: groups ordered by decreasing `a`, `differentials[k]` maps
/// group `k` to group `k + 1`.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub b: i32,
    /// `a` of each group: `a_0, a_0 - 2, ...`
    pub degrees: Vec<i32>,
    pub bases: Vec<Vec<EnhancedState>>,
    pub differentials: Vec<SparseIntMatrix>,
}

impl GradedComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Checks `d_{k+1} d_k = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_some_and(|m| m.is_zero()))
    }

    /// Dumps every differential in triplet format, each preceded by a line
    /// `# b=<b> a=<from> -> <to>`.
    pub fn write_triplets(&self, w: &mut impl Write) -> io::Result<()> {
        for (k, m) in self.differentials.iter().enumerate() {
            writeln!(w, "# b={} a={} -> {}", self.b, self.degrees[k], self.degrees[k + 1])?;
            m.write_triplets(w)?;
        }
        Ok(())
    }
}

/// The complex in quantum grading `b`; empty when no state has that grading.
pub fn build_complex(space: &StateSpace, b: i32) -> GradedComplex {
    let groups = space.enhanced_in_grading(b);
    if groups.is_empty() {
        return GradedComplex { b, degrees: vec![], bases: vec![], differentials: vec![] };
    }
    let top = groups[0].0;
    let bottom = groups.last().expect("nonempty").0;
    let degrees: Vec<i32> = (0..=(top - bottom) / 2).map(|k| top - 2 * k).collect();
    let mut bases: Vec<Vec<EnhancedState>> = vec![Vec::new(); degrees.len()];
    for (a, g) in groups {
        bases[((top - a) / 2) as usize] = g;
    }
    let differentials = (0..degrees.len().saturating_sub(1))
        .map(|k| differential(space, &bases[k], &bases[k + 1]))
        .collect();
    GradedComplex { b, degrees, bases, differentials }
}

/// Matrix of the differential from `src` to `dst` (consecutive groups).
pub(crate) fn differential(
    space: &StateSpace,
    src: &[EnhancedState],
    dst: &[EnhancedState],
) -> SparseIntMatrix {
    let mut offset: FxHashMap<u64, u32> = FxHashMap::default();
    for (i, e) in dst.iter().enumerate() {
        offset.entry(e.markers).or_insert(i as u32);
    }
    let n = space.crossing_count();
    let mut cols = Vec::with_capacity(src.len());
    let mut i = 0;
    while i < src.len() {
        let s = src[i].markers;
        let run = src[i..].iter().take_while(|e| e.markers == s).count();
        let moves: Vec<_> = (0..n)
            .filter(|&y| s >> y & 1 == 0)
            .filter_map(|y| {
                let t = s | 1 << y;
                let off = *offset.get(&t)?;
                let sign = if (s >> y >> 1).count_ones() % 2 == 0 { 1 } else { -1 };
                Some((space.transition(s, y), off, sign))
            })
            .collect();
        for e in &src[i..i + run] {
            let mut col = Vec::new();
            for (tr, off, sign) in &moves {
                for m in tr.targets(e.minus) {
                    col.push((off + subset_rank(m) as u32, *sign));
                }
            }
            cols.push(col);
        }
        i += run;
    }
    SparseIntMatrix::from_columns(dst.len(), cols)
}
