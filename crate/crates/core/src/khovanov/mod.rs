//! Khovanov homology tables.
//!
//! Homology of `C_{*,b}` at the group with `a = sigma` is stored at
//! `i = (w - a) / 2`, `j = (3w - b) / 2`, `w` the writhe. With the smoothing
//! convention of [`crate::states`] the right-handed trefoil sits in
//! `0 <= i <= 3` and `j > 0`.

mod bracket;
mod render;
mod summand;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use bracket::{jones_from_bracket, kauffman_bracket_oracle};
pub use render::{render_csv, render_json, render_text};
pub use summand::{check_summand, SummandReport};

use crate::complex::{build_complex, GradedComplex, SparseIntMatrix};
use crate::diagram::LinkDiagram;
use crate::homology::{dense_snf, reduce, AbelianGroup, BigZ, Fp, Int64, Overflow, Rationals, Reduced, Ring};
use crate::poly::LaurentPolynomial;
use crate::states::{StateError, StateSpace, DEFAULT_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KhError {
    #[error(transparent)]
    Cap(#[from] StateError),
    #[error("torsion is only defined over Z, table is over {0}")]
    FieldRing(Coefficients),
    #[error("tables are over different rings ({0} and {1})")]
    RingMismatch(Coefficients, Coefficients),
    #[error("invalid ring {0:?}: expected Z, Q or F<p> with p prime")]
    BadRing(String),
}

/// Coefficient ring of a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Z,
    Q,
    Fp(u32),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => f.write_str("Z"),
            Coefficients::Q => f.write_str("Q"),
            Coefficients::Fp(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = KhError;

    /// `Z`, `Q`, `F2`, `F3`, ... (also `Fp5`).
    fn from_str(s: &str) -> Result<Self, KhError> {
        let bad = || KhError::BadRing(s.to_string());
        match s {
            "Z" => Ok(Coefficients::Z),
            "Q" => Ok(Coefficients::Q),
            _ => {
                let digits = s.strip_prefix("Fp").or_else(|| s.strip_prefix('F')).ok_or_else(bad)?;
                let p: u32 = digits.parse().map_err(|_| bad())?;
                if crate::homology::is_prime(p as u64) && p < 1 << 31 {
                    Ok(Coefficients::Fp(p))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Nonzero groups `Kh^{i,j}` of one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KhTable {
    pub ring: Coefficients,
    pub entries: BTreeMap<(i32, i32), AbelianGroup>,
    pub name: Option<String>,
    pub writhe: i32,
    pub crossings: usize,
}

impl KhTable {
    pub fn get(&self, i: i32, j: i32) -> AbelianGroup {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Same groups, ignoring name and diagram data.
    pub fn same_groups(&self, other: &KhTable) -> bool {
        self.ring == other.ring && self.entries == other.entries
    }

    pub fn total_rank(&self) -> usize {
        self.entries.values().map(|g| g.free_rank).sum()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// Options for [`kh_with`].
#[derive(Clone, Debug)]
pub struct KhOptions {
    pub cap: usize,
}

impl Default for KhOptions {
    fn default() -> Self {
        KhOptions { cap: DEFAULT_CAP }
    }
}

pub fn kh(d: &LinkDiagram, ring: Coefficients) -> Result<KhTable, KhError> {
    kh_with(d, ring, &KhOptions::default())
}

pub fn kh_with(d: &LinkDiagram, ring: Coefficients, opts: &KhOptions) -> Result<KhTable, KhError> {
    let space = StateSpace::new(d, opts.cap)?;
    let w = d.writhe();
    let bs = space.quantum_gradings();
    let per_b = crate::par::map(&bs, |&b| {
        let c = build_complex(&space, b);
        (b, homology_of_complex(&c, ring))
    });
    let mut entries = BTreeMap::new();
    for (b, groups) in per_b {
        for (a, g) in groups {
            if !g.is_zero() {
                entries.insert(((w - a) / 2, (3 * w - b) / 2), g);
            }
        }
    }
    Ok(KhTable { ring, entries, name: None, writhe: w, crossings: d.crossing_count() })
}

/// Homology of one quantum grading, as `(a, group)` pairs.
pub fn homology_of_complex(c: &GradedComplex, ring: Coefficients) -> Vec<(i32, AbelianGroup)> {
    let dims = c.ranks();
    let maps = &c.differentials;
    let groups = match ring {
        Coefficients::Q => field_dims(reduce(&Rationals, &dims, maps)),
        Coefficients::Fp(p) => field_dims(reduce(&Fp(p), &dims, maps)),
        Coefficients::Z => integral(&dims, maps),
    };
    c.degrees.iter().copied().zip(groups).collect()
}

fn field_dims<E>(r: Result<Reduced<E>, Overflow>) -> Vec<AbelianGroup> {
    let r = r.expect("fields do not overflow");
    debug_assert!(r.maps.iter().all(|m| m.iter().all(Vec::is_empty)));
    r.dims.into_iter().map(AbelianGroup::free).collect()
}

fn integral(dims: &[usize], maps: &[SparseIntMatrix]) -> Vec<AbelianGroup> {
    match reduce(&Int64, dims, maps) {
        Ok(r) => from_residue(&Int64, r),
        Err(Overflow) => from_residue(&BigZ, reduce(&BigZ, dims, maps).expect("no overflow")),
    }
}

fn from_residue<R: Ring>(ring: &R, r: Reduced<R::E>) -> Vec<AbelianGroup> {
    let factors: Vec<Vec<BigInt>> = r
        .maps
        .iter()
        .enumerate()
        .map(|(k, m)| dense_snf(crate::homology::to_dense(ring, r.dims[k + 1], m)))
        .collect();
    (0..r.dims.len())
        .map(|k| {
            let out = if k < factors.len() { factors[k].len() } else { 0 };
            let inc: &[BigInt] = if k > 0 { &factors[k - 1] } else { &[] };
            AbelianGroup::from_invariant_factors(r.dims[k] - out - inc.len(), inc)
        })
        .collect()
}

/// Flattened torsion: `(i, j, prime power, multiplicity)`.
pub fn torsion_summands(t: &KhTable) -> Result<Vec<(i32, i32, u64, usize)>, KhError> {
    if t.ring != Coefficients::Z {
        return Err(KhError::FieldRing(t.ring));
    }
    Ok(t.entries
        .iter()
        .flat_map(|(&(i, j), g)| g.torsion.iter().map(move |(&q, &m)| (i, j, q, m)))
        .collect())
}

/// `sum (-1)^i rank Kh^{i,j} q^j`.
pub fn graded_euler_characteristic(t: &KhTable) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(t.entries.iter().map(|(&(i, j), g)| {
        let r = g.free_rank as i64;
        (j, if i.rem_euclid(2) == 0 { r } else { -r })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{mirror, parse_pd};

    fn left_trefoil() -> LinkDiagram {
        parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap()
    }

    #[test]
    fn unknot_table() {
        let t = kh(&LinkDiagram::unknot(), Coefficients::Z).unwrap();
        let cells: Vec<_> = t.entries.keys().copied().collect();
        assert_eq!(cells, vec![(0, -1), (0, 1)]);
        assert!(t.entries.values().all(|g| *g == AbelianGroup::free(1)));
    }

    #[test]
    fn kinks_match_unknot() {
        let u = kh(&LinkDiagram::unknot(), Coefficients::Z).unwrap();
        for pd in ["PD[X[1,1,2,2]]", "PD[X[1,2,2,1]]"] {
            let k = kh(&parse_pd(pd).unwrap(), Coefficients::Z).unwrap();
            assert!(k.same_groups(&u), "{pd}");
        }
    }

    #[test]
    fn right_trefoil() {
        let t = kh(&mirror(&left_trefoil()), Coefficients::Z).unwrap();
        let expected: BTreeMap<(i32, i32), AbelianGroup> = [
            ((0, 1), AbelianGroup::free(1)),
            ((0, 3), AbelianGroup::free(1)),
            ((2, 5), AbelianGroup::free(1)),
            ((3, 7), AbelianGroup::new(0, &[2])),
            ((3, 9), AbelianGroup::free(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.entries, expected);
        assert_eq!(torsion_summands(&t).unwrap(), vec![(3, 7, 2, 1)]);
    }

    #[test]
    fn fields_and_universal_coefficients() {
        let d = left_trefoil();
        let z = kh(&d, Coefficients::Z).unwrap();
        let q = kh(&d, Coefficients::Q).unwrap();
        let f2 = kh(&d, Coefficients::Fp(2)).unwrap();
        assert_eq!(q.total_rank(), 4);
        assert_eq!(f2.total_rank(), 6);
        assert_eq!(graded_euler_characteristic(&z), graded_euler_characteristic(&q));
        assert_eq!(graded_euler_characteristic(&z), graded_euler_characteristic(&f2));
        assert!(torsion_summands(&q).is_err());
    }

    #[test]
    fn euler_characteristic_is_jones() {
        let d = left_trefoil();
        let chi = graded_euler_characteristic(&kh(&d, Coefficients::Z).unwrap());
        let oracle = jones_from_bracket(&kauffman_bracket_oracle(&d, 16).unwrap());
        assert_eq!(chi, oracle);
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<Coefficients>(), Ok(Coefficients::Z));
        assert_eq!("F3".parse::<Coefficients>(), Ok(Coefficients::Fp(3)));
        assert_eq!("Fp5".parse::<Coefficients>(), Ok(Coefficients::Fp(5)));
        assert!("F4".parse::<Coefficients>().is_err());
        assert!("R".parse::<Coefficients>().is_err());
    }
}
