//! Alexander polynomials against the reduced Burau representation:
//! `Δ(β̂) · (1 + t + ... + t^(n-1)) ≐ det(I - ρ(β))`.

mod common;

use khtor::alexander::{alexander, alexander_polynomial, check_family};
use khtor::diagram::{braid_closure, connected_sum, kt_tangle, livingston_pattern, satellite, tangle_replace};
use khtor::poly::LaurentPolynomial as Poly;
use proptest::prelude::*;

type Matrix = Vec<Vec<Poly>>;

fn t(e: i32) -> Poly {
    Poly::monomial(1, e)
}

fn c(v: i64) -> Poly {
    Poly::monomial(v, 0)
}

fn identity(m: usize) -> Matrix {
    (0..m).map(|i| (0..m).map(|j| if i == j { c(1) } else { Poly::zero() }).collect()).collect()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Poly::zero();
                    for k in 0..m {
                        s += &(&a[i][k] * &b[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Reduced Burau matrix of `σ_i^{±1}` on `n` strands (`i` 1-based).
fn generator(n: usize, g: i32) -> Matrix {
    let m = n - 1;
    let i = g.unsigned_abs() as usize - 1;
    let mut a = identity(m);
    let pos = g > 0;
    if m == 1 {
        a[0][0] = if pos { -t(1) } else { -t(-1) };
        return a;
    }
    a[i][i] = if pos { -t(1) } else { -t(-1) };
    if i > 0 {
        a[i - 1][i] = if pos { t(1) } else { c(1) };
    }
    if i + 1 < m {
        a[i + 1][i] = if pos { c(1) } else { t(-1) };
    }
    a
}

fn det(a: &Matrix) -> Poly {
    let m = a.len();
    if m == 1 {
        return a[0][0].clone();
    }
    let mut s = Poly::zero();
    for j in 0..m {
        let minor: Matrix = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &a[0][j] * &det(&minor);
        if j % 2 == 0 {
            s += &term;
        } else {
            s -= &term;
        }
    }
    s
}

fn burau_lhs(n: usize, word: &[i32]) -> Poly {
    let mut r = identity(n - 1);
    for &g in word {
        r = mul(&r, &generator(n, g));
    }
    let mut m = identity(n - 1);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            m[i][j] -= &r[i][j];
        }
    }
    det(&m)
}

fn geometric(n: usize) -> Poly {
    Poly::from_coeffs(0, &vec![1; n])
}

fn agrees(n: usize, word: &[i32]) -> bool {
    let d = braid_closure(n, word).unwrap();
    let lhs = burau_lhs(n, word);
    let rhs = &alexander_polynomial(&d) * &geometric(n);
    lhs.eq_up_to_unit(&rhs) || (lhs.is_zero() && rhs.is_zero())
}

#[test]
fn corpus_braids_match_burau() {
    for &(name, n, word) in common::BRAIDS {
        assert!(agrees(n, word), "{name}");
        let pd = alexander(&common::knot(name)).unwrap();
        let braid = alexander(&braid_closure(n, word).unwrap()).unwrap();
        assert_eq!(pd, braid, "{name}");
    }
}

#[test]
fn frozen_values() {
    // computed once from the Burau determinant above
    let expect = [
        ("unknot", "1"),
        ("3_1_left", "1 -1 1"),
        ("4_1", "1 -3 1"),
        ("5_1", "1 -1 1 -1 1"),
        ("5_2", "2 -3 2"),
        ("6_1", "2 -5 2"),
        ("6_2", "1 -3 3 -3 1"),
        ("6_3", "1 -3 5 -3 1"),
        ("7_4", "4 -7 4"),
        ("8_19", "1 -1 0 1 0 -1 1"),
    ];
    for (name, coeffs) in expect {
        assert_eq!(alexander(&common::knot(name)).unwrap().coefficient_string(), coeffs, "{name}");
    }
}

#[test]
fn hopf_link() {
    assert!(agrees(2, &[1, 1]));
    assert!(alexander_polynomial(&common::knot("hopf")).eq_up_to_unit(&Poly::from_coeffs(0, &[1, -1])));
}

#[test]
fn family_formula() {
    let j0 = common::knot("6_1");
    for k in ["unknot", "3_1_left", "4_1"] {
        let r = check_family(&common::knot(k), &j0, 3).unwrap();
        assert!(r.passed(), "{k}");
    }
}

#[test]
fn joins_and_satellites_keep_alexander() {
    let kt = kt_tangle();
    let p = livingston_pattern();
    for name in ["unknot_kink_pos", "3_1_left", "3_1_right", "4_1"] {
        let d = common::knot(name);
        let target = alexander(&d).unwrap();
        for (a1, a2) in common::face_pairs(&d) {
            let j = tangle_replace(&d, a1, a2, &kt).unwrap();
            assert_eq!(alexander(&j).unwrap(), target, "{name} {a1} {a2}");
        }
        assert_eq!(alexander(&satellite(&d, &p).unwrap()).unwrap(), target, "{name}");
    }
    let u = khtor::diagram::LinkDiagram::unknot();
    assert_eq!(alexander(&satellite(&u, &p).unwrap()).unwrap().coefficient_string(), "1");
}

#[test]
fn connected_sum_multiplies() {
    let a = common::knot("5_2");
    let b = common::knot("4_1");
    let s = connected_sum(&a, &b, None, None).unwrap();
    let prod = alexander(&a).unwrap().polynomial() * alexander(&b).unwrap().polynomial();
    assert!(alexander(&s).unwrap().polynomial().eq_up_to_unit(&prod));
}

fn braid_word(max_strands: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2..=max_strands).prop_flat_map(|n| {
        let g = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        (Just(n), proptest::collection::vec(g, 1..12))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_braids_match_burau((n, word) in braid_word(4)) {
        prop_assert!(agrees(n, &word));
    }
}
