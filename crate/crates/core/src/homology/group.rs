//! Finitely generated abelian groups in primary form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

/// `Z^free_rank` plus cyclic summands `Z_{p^k}`, stored as prime power ->
/// multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: BTreeMap<u64, usize>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: BTreeMap::new() }
    }

    /// Splits each order into prime powers. Orders must be at least 2.
    pub fn new(free_rank: usize, orders: &[u64]) -> Self {
        let mut g = Self::free(free_rank);
        for &m in orders {
            assert!(m >= 2, "cyclic summand of order {m}");
            for q in prime_power_factors(m) {
                *g.torsion.entry(q).or_default() += 1;
            }
        }
        g
    }

    /// From invariant factors; factors equal to 1 are ignored.
    pub fn from_invariant_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let orders: Vec<u64> = factors
            .iter()
            .filter(|f| !f.is_one())
            .map(|f| f.to_u64().expect("torsion order fits in 64 bits"))
            .collect();
        Self::new(free_rank, &orders)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of `Z_{p^k}` summands for the prime `p` (any `k`).
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion
            .iter()
            .filter(|(&q, _)| prime_power_factors(q)[0] % p == 0)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Dimension of `G (x) F_p`.
    pub fn dim_mod_p(&self, p: u64) -> usize {
        self.free_rank + self.p_torsion_count(p)
    }

    pub fn without_torsion(&self) -> Self {
        Self::free(self.free_rank)
    }
}

impl fmt::Display for AbelianGroup {
    /// `Z^2 + Z_2 + Z_4^3`, `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (q, m) in &self.torsion {
            parts.push(if *m == 1 { format!("Z_{q}") } else { format!("Z_{q}^{m}") });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Prime-power parts of `m`, increasing by prime.
fn prime_power_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut q = 1;
            while m % p == 0 {
                m /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Whether `a` is isomorphic to a direct summand of `b`.
pub fn is_direct_summand(a: &AbelianGroup, b: &AbelianGroup) -> bool {
    a.free_rank <= b.free_rank
        && a.torsion.iter().all(|(q, &m)| b.torsion.get(q).copied().unwrap_or(0) >= m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primary_decomposition() {
        let g = AbelianGroup::new(1, &[6, 4, 12]);
        assert_eq!(g.torsion, BTreeMap::from([(2, 1), (3, 2), (4, 2)]));
        assert_eq!(g.to_string(), "Z + Z_2 + Z_3^2 + Z_4^2");
        assert_eq!(g.p_torsion_count(2), 3);
        assert_eq!(g.dim_mod_p(3), 3);
        assert_eq!(AbelianGroup::default().to_string(), "0");
    }

    #[test]
    fn summands() {
        let z = AbelianGroup::free(1);
        assert!(is_direct_summand(&z, &AbelianGroup::new(2, &[2])));
        assert!(!is_direct_summand(&AbelianGroup::new(0, &[4]), &AbelianGroup::new(0, &[2, 2])));
        assert!(!is_direct_summand(&AbelianGroup::new(0, &[2]), &AbelianGroup::new(0, &[4])));
        assert!(is_direct_summand(&AbelianGroup::new(0, &[2, 3]), &AbelianGroup::new(0, &[6])));
    }
}
