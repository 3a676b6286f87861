use serde::Serialize;

use super::{KhError, KhTable};
use crate::homology::{is_direct_summand, AbelianGroup};

/// Outcome of checking `Kh(K0)` against `Kh(K1)` bigrading by bigrading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    pub checked: usize,
    /// `(i, j, Kh(K0), Kh(K1))` where the first is not a summand of the second.
    pub failures: Vec<(i32, i32, AbelianGroup, AbelianGroup)>,
}

impl SummandReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether every `Kh^{i,j}(K0)` is a direct summand of `Kh^{i,j}(K1)`.
pub fn check_summand(k0: &KhTable, k1: &KhTable) -> Result<SummandReport, KhError> {
    if k0.ring != k1.ring {
        return Err(KhError::RingMismatch(k0.ring, k1.ring));
    }
    let failures = k0
        .entries
        .iter()
        .filter_map(|(&(i, j), g)| {
            let h = k1.get(i, j);
            (!is_direct_summand(g, &h)).then(|| (i, j, g.clone(), h))
        })
        .collect();
    Ok(SummandReport { checked: k0.entries.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{connected_sum, mirror, parse_pd, LinkDiagram};
    use crate::khovanov::{kh, Coefficients};

    #[test]
    fn summand_checks() {
        let t = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let u = kh(&LinkDiagram::unknot(), Coefficients::Z).unwrap();
        let kt = kh(&t, Coefficients::Z).unwrap();
        assert!(check_summand(&u, &u).unwrap().passed());
        assert!(!check_summand(&u, &kt).unwrap().passed());
        assert!(check_summand(&kt, &kt).unwrap().passed());
        let q = kh(&t, Coefficients::Q).unwrap();
        assert!(check_summand(&kt, &q).is_err());
        let tt = kh(&connected_sum(&t, &mirror(&t), None, None).unwrap(), Coefficients::Z).unwrap();
        assert!(check_summand(&u, &tt).unwrap().passed());
    }
}
