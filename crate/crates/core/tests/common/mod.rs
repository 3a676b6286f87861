#![allow(dead_code)]

use std::path::PathBuf;

use khtor::diagram::{connected_sum, faces, parse_pd, tangle_replace, LinkDiagram, PlatOp, Tangle};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn knot_path(name: &str) -> PathBuf {
    data_dir().join("knots").join(format!("{name}.pd"))
}

pub fn knot(name: &str) -> LinkDiagram {
    let text = std::fs::read_to_string(knot_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_pd(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const CORPUS: &[&str] = &[
    "unknot",
    "unknot_kink_pos",
    "unknot_kink_neg",
    "3_1_left",
    "3_1_right",
    "4_1",
    "hopf",
    "5_1",
    "5_2",
    "6_1",
    "6_2",
    "6_3",
    "7_4",
    "8_19",
];

/// Braid words whose closures are the corpus knots (up to mirror image).
pub const BRAIDS: &[(&str, usize, &[i32])] = &[
    ("3_1_left", 2, &[1, 1, 1]),
    ("4_1", 3, &[1, -2, 1, -2]),
    ("5_1", 2, &[1, 1, 1, 1, 1]),
    ("5_2", 3, &[1, 1, 1, 2, -1, 2]),
    ("6_1", 4, &[1, 1, 2, -1, -3, 2, -3]),
    ("6_2", 3, &[1, 1, 1, -2, 1, -2]),
    ("6_3", 3, &[1, 1, -2, 1, -2, -2]),
    ("7_4", 4, &[1, 1, 2, -1, 2, 2, 3, -2, 3]),
    ("8_19", 3, &[1, 2, 1, 2, 1, 2, 1, 2]),
];

pub fn kink(positive: bool) -> LinkDiagram {
    parse_pd(if positive { "PD[X[1,1,2,2]]" } else { "PD[X[1,2,2,1]]" }).unwrap()
}

/// Two strands crossing twice, the second crossing undoing the first.
pub fn r2_tangle() -> Tangle {
    Tangle::from_plat(&[PlatOp::Cross(0, true), PlatOp::Cross(0, false)]).unwrap()
}

pub fn face_pairs(d: &LinkDiagram) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for f in faces(d) {
        for (i, e) in f.iter().enumerate() {
            for e2 in &f[i + 1..] {
                if e.arc != e2.arc {
                    out.push((e.arc, e2.arc));
                }
            }
        }
    }
    out
}

/// Adds `r1` kinks and `r2` Reidemeister II bigons at random places, then
/// shuffles the crossing order.
pub fn inflate(d: &LinkDiagram, r1: usize, r2: usize, rng: &mut impl Rng) -> LinkDiagram {
    let mut d = d.clone();
    for _ in 0..r1 {
        let arcs: Vec<u32> = d.arcs().collect();
        let at = arcs.choose(rng).copied();
        d = connected_sum(&d, &kink(rng.random()), at, None).unwrap();
    }
    for _ in 0..r2 {
        let pairs = face_pairs(&d);
        if pairs.is_empty() {
            break;
        }
        let (a1, a2) = *pairs.choose(rng).unwrap();
        d = tangle_replace(&d, a1, a2, &r2_tangle()).unwrap();
    }
    shuffle(&d, rng)
}

pub fn shuffle(d: &LinkDiagram, rng: &mut impl Rng) -> LinkDiagram {
    let mut perm: Vec<usize> = (0..d.crossing_count()).collect();
    perm.shuffle(rng);
    d.permute_crossings(&perm)
}
