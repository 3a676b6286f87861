//! Kauffman bracket by direct state sum, kept apart from the chain complex
//! code so the two can be compared.
//!
//! At `X[i,j,k,l]` the A-smoothing joins `i` with `j` and `k` with `l`; a
//! positive curl then has bracket `-A^3`. The normalised bracket
//! `f = (-A^3)^(-w) <D>` turns into the unreduced Jones polynomial by
//! `A^e -> (-1)^(e/2) q^(-e/2)` followed by multiplication with `q + q^-1`.

use crate::diagram::LinkDiagram;
use crate::poly::LaurentPolynomial as Poly;
use crate::states::StateError;

/// Normalised bracket in `A`, unknot = 1. Fails above `cap` crossings.
pub fn kauffman_bracket_oracle(d: &LinkDiagram, cap: usize) -> Result<Poly, StateError> {
    let n = d.crossing_count();
    if n > cap {
        return Err(StateError::CapExceeded { crossings: n, cap });
    }
    let arcs: Vec<u32> = d.arcs().collect();
    let idx = |a: u32| arcs.binary_search(&a).expect("arc");
    let xs: Vec<[usize; 4]> = d.crossings().iter().map(|x| x.pd().map(idx)).collect();
    let loops = d.unknots();
    // (sigma, circles) -> number of states
    let mut by_sigma_circles = std::collections::BTreeMap::<(i32, usize), i64>::new();
    let mut parent = vec![0usize; arcs.len()];
    for bits in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut merges = 0;
        for (c, x) in xs.iter().enumerate() {
            let pairs = if bits >> c & 1 == 0 { [(x[0], x[1]), (x[2], x[3])] } else { [(x[0], x[3]), (x[1], x[2])] };
            for (a, b) in pairs {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    merges += 1;
                }
            }
        }
        let circles = arcs.len() - merges + loops;
        let sigma = n as i32 - 2 * bits.count_ones() as i32;
        *by_sigma_circles.entry((sigma, circles)).or_default() += 1;
    }
    let delta = Poly::from_coeffs(-2, &[-1, 0, 0, 0, -1]);
    let mut bracket = Poly::zero();
    for (&(sigma, circles), &count) in &by_sigma_circles {
        bracket += &(&Poly::monomial(count, sigma) * &delta.pow(circles as u32 - 1));
    }
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(&bracket * &Poly::monomial(sign, -3 * w))
}

fn root(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Unreduced Jones polynomial in `q` from the normalised bracket.
pub fn jones_from_bracket(f: &Poly) -> Poly {
    let terms = f.terms().map(|(e, c)| {
        assert!(e % 2 == 0, "odd power of A in a normalised bracket");
        let c = if (e / 2) % 2 == 0 { c.clone() } else { -c.clone() };
        (-e / 2, c)
    });
    &Poly::from_terms(terms) * &Poly::from_coeffs(-1, &[1, 0, 1])
}
