//! Alexander polynomials from the Wirtinger presentation.
//!
//! Generators are over-arcs; each crossing contributes the abelianised Fox
//! derivatives of its relation. One row and one column are deleted and the
//! determinant is taken over `Z[t, t^-1]`: unit pivots are eliminated
//! sparsely, the remaining block goes through fraction-free (Bareiss)
//! elimination.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::diagram::{connected_sum, LinkDiagram};
use crate::poly::LaurentPolynomial as Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("Alexander polynomial is implemented for knots; diagram has {0} components")]
    NotAKnot(usize),
}

/// Alexander polynomial of a knot, normalised to lowest exponent 0 and a
/// positive top coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedAlexander {
    poly: Poly,
}

impl NormalizedAlexander {
    pub fn from_poly(p: &Poly) -> Self {
        NormalizedAlexander { poly: p.normalize_unit() }
    }

    pub fn polynomial(&self) -> &Poly {
        &self.poly
    }

    /// Degree span (the polynomial runs from `t^0` to `t^span`).
    pub fn span(&self) -> i32 {
        self.poly.high_degree().unwrap_or(0)
    }

    /// Exponent of the first coefficient once the polynomial is centred.
    pub fn offset(&self) -> i32 {
        -(self.span() / 2)
    }

    /// Coefficients low to high separated by spaces, e.g. `2 -5 2`.
    pub fn coefficient_string(&self) -> String {
        let v: Vec<String> = self.poly.dense_coeffs().iter().map(|c| c.to_string()).collect();
        v.join(" ")
    }

    /// The symmetric representative `Δ(t) = Δ(t^-1)`, `Δ(1) = 1`.
    pub fn centred(&self) -> Poly {
        let p = self.poly.shift(self.offset());
        if p.eval_one().is_negative() {
            -p
        } else {
            p
        }
    }
}

impl fmt::Display for NormalizedAlexander {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coefficient_string())
    }
}

/// Normalised Alexander polynomial of a knot diagram.
pub fn alexander(d: &LinkDiagram) -> Result<NormalizedAlexander, AlexanderError> {
    if !d.is_knot() {
        return Err(AlexanderError::NotAKnot(d.component_count()));
    }
    Ok(NormalizedAlexander::from_poly(&alexander_polynomial(d)))
}

/// One-variable Alexander polynomial up to units, links included (zero for
/// split diagrams).
pub fn alexander_polynomial(d: &LinkDiagram) -> Poly {
    if d.crossing_count() == 0 {
        return if d.unknots() == 1 { Poly::one() } else { Poly::zero() };
    }
    if d.unknots() > 0 {
        return Poly::zero();
    }
    let (rows, ncols) = fox_matrix(d);
    let n = rows.len();
    if ncols != n {
        return Poly::zero();
    }
    let mut minor: Vec<BTreeMap<usize, Poly>> = rows;
    minor.pop();
    for r in &mut minor {
        r.remove(&(n - 1));
    }
    det_up_to_unit(minor, n - 1)
}

/// Conway-normalised polynomial in `s = t^(1/2)`: symmetric under
/// `s -> s^-1` and equal to 1 at `s = 1` for knots; for links the sign is
/// fixed by a positive top coefficient.
pub fn conway_symmetric(d: &LinkDiagram) -> Poly {
    let p = alexander_polynomial(d);
    let Some(h) = p.high_degree() else { return Poly::zero() };
    let span = h - p.low_degree().unwrap();
    let s = p.stretch(2).shift(-2 * p.low_degree().unwrap() - span);
    if d.is_knot() {
        if s.eval_one().is_negative() {
            -s
        } else {
            s
        }
    } else if s.coeff(span).is_negative() {
        -s
    } else {
        s
    }
}

/// Rows indexed by crossing, columns by over-arc.
fn fox_matrix(d: &LinkDiagram) -> (Vec<BTreeMap<usize, Poly>>, usize) {
    let arcs: Vec<u32> = d.arcs().collect();
    let index: BTreeMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in d.crossings() {
        let [_, j, _, l] = x.pd();
        let (a, b) = (find(&mut parent, index[&j]), find(&mut parent, index[&l]));
        parent[a.max(b)] = a.min(b);
    }
    let mut class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut col = vec![0; arcs.len()];
    for i in 0..arcs.len() {
        let r = find(&mut parent, i);
        let next = class.len();
        col[i] = *class.entry(r).or_insert(next);
    }
    let t = Poly::monomial(1, 1);
    let one = Poly::one();
    let one_minus_t = &one - &t;
    let mut rows = Vec::with_capacity(d.crossing_count());
    for x in d.crossings() {
        let [i, j, k, _] = x.pd();
        let (over, a, b) = (col[index[&j]], col[index[&i]], col[index[&k]]);
        let (ca, cb) = if x.sign() > 0 { (-&one, t.clone()) } else { (t.clone(), -&one) };
        let mut row: BTreeMap<usize, Poly> = BTreeMap::new();
        for (c, v) in [(over, one_minus_t.clone()), (a, ca), (b, cb)] {
            *row.entry(c).or_default() += &v;
        }
        row.retain(|_, v| !v.is_zero());
        rows.push(row);
    }
    (rows, class.len())
}

fn unit_inverse(u: &Poly) -> Poly {
    let e = u.low_degree().expect("unit");
    Poly::monomial(u.coeff(e), -e)
}

/// Determinant of a square sparse matrix over `Z[t, t^-1]`, up to `±t^k`.
fn det_up_to_unit(mut rows: Vec<BTreeMap<usize, Poly>>, n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols[c].insert(r);
        }
    }
    let mut row_alive = vec![true; rows.len()];
    let mut col_alive = vec![true; n];
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !row_alive[r] {
                continue;
            }
            for (&c, v) in row {
                if v.is_unit() {
                    let cost = (row.len() - 1) * (cols[c].len() - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((r, c, cost));
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let inv = unit_inverse(&rows[pr][&pc]);
        let prow = std::mem::take(&mut rows[pr]);
        for &r in cols[pc].clone().iter() {
            if r == pr {
                continue;
            }
            let f = &rows[r][&pc] * &inv;
            for (&c, v) in &prow {
                let e = rows[r].entry(c).or_default();
                *e -= &(&f * v);
                if e.is_zero() {
                    rows[r].remove(&c);
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r);
                }
            }
        }
        for &c in prow.keys() {
            cols[c].remove(&pr);
        }
        row_alive[pr] = false;
        col_alive[pc] = false;
    }
    let rest_rows: Vec<usize> = (0..rows.len()).filter(|&r| row_alive[r]).collect();
    let rest_cols: Vec<usize> = (0..n).filter(|&c| col_alive[c]).collect();
    let m = rest_rows.len();
    if m != rest_cols.len() {
        return Poly::zero();
    }
    let mut a: Vec<Vec<Poly>> = rest_rows
        .iter()
        .map(|&r| rest_cols.iter().map(|c| rows[r].get(c).cloned().unwrap_or_default()).collect())
        .collect();
    bareiss(&mut a)
}

/// Fraction-free elimination; returns the determinant up to sign.
fn bareiss(a: &mut [Vec<Poly>]) -> Poly {
    let m = a.len();
    if m == 0 {
        return Poly::one();
    }
    let mut prev = Poly::one();
    for k in 0..m {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..m).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(k, s);
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    a[m - 1][m - 1].clone()
}

/// One member of a connected-sum family.
#[derive(Clone, Debug)]
pub struct FamilyRow {
    pub n: usize,
    pub crossings: usize,
    pub direct: NormalizedAlexander,
    pub predicted: NormalizedAlexander,
}

impl FamilyRow {
    pub fn matches(&self) -> bool {
        self.direct == self.predicted
    }
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub rows: Vec<FamilyRow>,
    /// All direct values are pairwise distinct.
    pub distinct: bool,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.distinct && self.rows.iter().all(FamilyRow::matches)
    }
}

/// Builds `K_n = K # J0 # ... # J0` for `n = 0..=n_max`, computes each
/// polynomial directly and compares with `Δ_K · Δ_J0^n`.
pub fn check_family(
    k: &LinkDiagram,
    j0: &LinkDiagram,
    n_max: usize,
) -> Result<FamilyReport, AlexanderError> {
    let dk = alexander(k)?;
    let dj = alexander(j0)?;
    let mut members = vec![k.clone()];
    for n in 1..=n_max {
        let next = connected_sum(&members[n - 1], j0, None, None).expect("knot summands");
        members.push(next);
    }
    let rows: Vec<FamilyRow> = crate::par::map(&members, |d| alexander(d).expect("knot"))
        .into_iter()
        .enumerate()
        .map(|(n, direct)| FamilyRow {
            n,
            crossings: members[n].crossing_count(),
            direct,
            predicted: NormalizedAlexander::from_poly(&(dk.polynomial() * &dj.polynomial().pow(n as u32))),
        })
        .collect();
    let distinct = rows
        .iter()
        .enumerate()
        .all(|(i, a)| rows[..i].iter().all(|b| b.direct != a.direct));
    Ok(FamilyReport { rows, distinct })
}

/// Whether `p` is a plausible knot polynomial: symmetric and `Δ(1) = ±1`.
pub fn is_knot_polynomial(p: &NormalizedAlexander) -> bool {
    let c = p.polynomial();
    c.eval_one().abs().is_one() && c.invert_variable().shift(p.span()) == *c && !c.is_zero()
}
