//! Searches for the bundled tangle and pattern in `data/`.
//!
//! `cargo run --release --example ribbon_search -- tangle` prints the
//! smallest ribbon tangle found, `-- pattern` the smallest pattern.

use khtor::alexander::alexander;
use khtor::diagram::{faces, parse_pd, satellite, tangle_replace, AnnularPattern, LinkDiagram, PlatOp, Tangle};
use khtor::khovanov::kauffman_bracket_oracle;
use khtor::poly::LaurentPolynomial;

fn words(strands: usize, len: usize) -> Vec<Vec<PlatOp>> {
    let gens: Vec<PlatOp> =
        (0..strands - 1).flat_map(|p| [PlatOp::Cross(p, true), PlatOp::Cross(p, false)]).collect();
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                gens.iter().filter_map(move |&g| {
                    // skip immediate cancellation
                    if let (Some(PlatOp::Cross(p, o)), PlatOp::Cross(q, s)) = (w.last(), g) {
                        if *p == q && *o != s {
                            return None;
                        }
                    }
                    let mut v = w.clone();
                    v.push(g);
                    Some(v)
                })
            })
            .collect();
    }
    out
}

fn inverse(w: &[PlatOp]) -> Vec<PlatOp> {
    w.iter()
        .rev()
        .map(|op| match *op {
            PlatOp::Cross(p, o) => PlatOp::Cross(p, !o),
            other => other,
        })
        .collect()
}

fn token(op: &PlatOp) -> String {
    match *op {
        PlatOp::Cross(p, true) => format!("+{}", p + 1),
        PlatOp::Cross(p, false) => format!("-{}", p + 1),
        PlatOp::Cup(p) => format!("u{}", p + 1),
        PlatOp::Cap(p) => format!("n{}", p + 1),
    }
}

fn face_pairs(d: &LinkDiagram) -> Vec<(u32, u32)> {
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

fn companions() -> Vec<LinkDiagram> {
    ["PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]", "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"]
        .iter()
        .map(|s| parse_pd(s).unwrap())
        .collect()
}

fn tangle_search() {
    let comps = companions();
    let mut hist = [0usize; 10];
    let mut seen = 0usize;
    let lens: Vec<usize> = std::env::args().skip(2).map(|a| a.parse().unwrap()).collect();
    for len in lens {
        for beta in words(4, len) {
            for k in 0..3 {
                let mut ops = vec![PlatOp::Cup(1)];
                ops.extend(&beta);
                ops.extend([PlatOp::Cap(k), PlatOp::Cup(k)]);
                ops.extend(inverse(&beta));
                ops.push(PlatOp::Cap(1));
                if plat_numerator_trivial(&ops) {
                    continue;
                }
                let Ok(t) = Tangle::from_plat(&ops) else { continue };
                seen += 1;
                if seen % 20000 == 0 {
                    eprintln!("{seen} {hist:?}");
                }
                let stage = accept_tangle(&t, &comps);
                hist[stage] += 1;
                if stage < 9 {
                    continue;
                }
                let word: Vec<String> = ops.iter().map(token).collect();
                println!("{}", word.join(" "));
                println!("{}", t.to_json());
                return;
            }
        }
    }
    eprintln!("no tangle found {hist:?}");
}

type Poly = std::collections::BTreeMap<i32, i64>;

fn add_shifted(into: &mut Poly, p: &Poly, shift: i32, scale: i64) {
    for (&e, &c) in p {
        let v = into.entry(e + shift).or_insert(0);
        *v += c * scale;
        if *v == 0 {
            into.remove(&(e + shift));
        }
    }
}

fn cup(m: &[usize], k: usize) -> Vec<usize> {
    let shift = |q: usize| if q >= k { q + 2 } else { q };
    let mut out: Vec<usize> = m.iter().map(|&q| shift(q)).collect();
    out.splice(k..k, [k + 1, k]);
    out
}

/// Closes positions `k`, `k + 1`; returns the new matching and whether a loop
/// was closed off.
fn cap(m: &[usize], k: usize) -> (Vec<usize>, bool) {
    let closed = m[k] == k + 1;
    let mut m = m.to_vec();
    if !closed {
        let (a, b) = (m[k], m[k + 1]);
        m[a] = b;
        m[b] = a;
    }
    m.drain(k..k + 2);
    let shift = |q: usize| if q > k + 1 { q - 2 } else { q };
    (m.into_iter().map(shift).collect(), closed)
}

/// Kauffman bracket of a closed plat, computed level by level on crossingless
/// matchings of the open ends.
fn plat_bracket(ops: &[PlatOp]) -> Poly {
    let mut states: std::collections::HashMap<Vec<usize>, Poly> =
        [(vec![], Poly::from([(0, 1)]))].into_iter().collect();
    let loop_factor = |p: &Poly| {
        let mut out = Poly::new();
        add_shifted(&mut out, p, 2, -1);
        add_shifted(&mut out, p, -2, -1);
        out
    };
    for op in ops {
        let mut next: std::collections::HashMap<Vec<usize>, Poly> = Default::default();
        for (m, p) in states {
            let mut push = |m: Vec<usize>, p: &Poly, shift: i32| add_shifted(next.entry(m).or_default(), p, shift, 1);
            match *op {
                PlatOp::Cup(k) => push(cup(&m, k), &p, 0),
                PlatOp::Cap(k) => {
                    let (m2, closed) = cap(&m, k);
                    if closed { push(m2, &loop_factor(&p), 0) } else { push(m2, &p, 0) }
                }
                PlatOp::Cross(k, o) => {
                    let (a, b) = if o { (1, -1) } else { (-1, 1) };
                    push(m.clone(), &p, a);
                    let (m2, closed) = cap(&m, k);
                    let m2 = cup(&m2, k);
                    if closed { push(m2, &loop_factor(&p), b) } else { push(m2, &p, b) }
                }
            }
        }
        states = next;
    }
    states.remove(&vec![]).unwrap_or_default()
}

/// Bracket modulo units: coefficients shifted to start at exponent 0, sign
/// normalised.
fn up_to_unit(p: &Poly) -> Vec<i64> {
    let Some((&lo, _)) = p.iter().next() else { return vec![] };
    let hi = *p.keys().last().unwrap();
    let mut v: Vec<i64> = (lo..=hi).map(|e| p.get(&e).copied().unwrap_or(0)).collect();
    if v[0] < 0 {
        v.iter_mut().for_each(|c| *c = -*c);
    }
    v
}

/// The 2-tangles left after removing a trivial ball around a path across a
/// face, in all eight boundary orientations.
fn cut_tangles(d: &LinkDiagram) -> Vec<(u32, u32, Tangle)> {
    let mut out = Vec::new();
    let base = d.tuples();
    let fresh = d.max_arc() + 1;
    for f in faces(d) {
        for (i, e1) in f.iter().enumerate() {
            for e2 in &f[i + 1..] {
                if e1.arc == e2.arc {
                    continue;
                }
                let mut tuples = base.clone();
                tuples[e1.from.0][e1.from.1] = fresh;
                tuples[e2.to.0][e2.to.1] = fresh + 1;
                let ends = [e1.arc, e2.arc, fresh + 1, fresh];
                for r in 0..4 {
                    for flip in [false, true] {
                        let mut e: [u32; 4] = std::array::from_fn(|k| ends[(k + r) % 4]);
                        if flip {
                            e.reverse();
                        }
                        if let Ok(t) = Tangle::new(tuples.clone(), e, 0) {
                            out.push((e1.arc, e2.arc, t));
                        }
                    }
                }
            }
        }
    }
    out
}

fn cut_search() {
    use rand::{Rng, SeedableRng};
    let comps = companions();
    let lens: Vec<usize> = std::env::args().skip(2).map(|a| a.parse().unwrap()).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let unknot = kauffman_bracket_oracle(&LinkDiagram::unknot(), 4).unwrap();
    let mut found = std::collections::BTreeSet::new();
    for seen in 1u64.. {
        if seen % 50000 == 0 {
            eprintln!("{seen} knots with trivial Δ: {}", found.len());
        }
        let len = lens[rng.random_range(0..lens.len())];
        let mut w: Vec<i32> = Vec::new();
        while w.len() < len {
            let g = rng.random_range(1..4) * if rng.random() { 1 } else { -1 };
            if w.last() != Some(&-g) {
                w.push(g);
            }
        }
        let Ok(d) = khtor::diagram::braid_closure(4, &w) else { continue };
        if !d.is_knot() || !alexander(&d).is_ok_and(|a| a.polynomial().is_unit()) {
            continue;
        }
        let Ok(b) = kauffman_bracket_oracle(&d, 16) else { continue };
        if b.eq_up_to_unit(&unknot) || !found.insert(b.to_string()) {
            continue;
        }
        eprintln!("{w:?} {}", khtor::diagram::to_pd_string(&d));
        for (a1, a2, t) in cut_tangles(&d) {
            let stage = accept_tangle(&t, &comps);
            if stage == 9 {
                println!("braid {w:?} arcs {a1} {a2} crossings {}", t.crossing_count());
                println!("{}", t.to_json());
                return;
            }
        }
    }
}

fn random_tangle_search() {
    use rand::{Rng, SeedableRng};
    let comps = companions();
    let mut hist = [0usize; 10];
    let mut rng = rand::rngs::StdRng::seed_from_u64(1);
    let lens: Vec<usize> = std::env::args().skip(2).map(|a| a.parse().unwrap()).collect();
    for seen in 1.. {
        let len = lens[rng.random_range(0..lens.len())];
        let mut beta: Vec<PlatOp> = Vec::new();
        while beta.len() < len {
            let g = PlatOp::Cross(rng.random_range(0..3), rng.random());
            if beta.last() == Some(&inverse(&[g])[0]) {
                continue;
            }
            beta.push(g);
        }
        let k = rng.random_range(0..3);
        let mut ops = vec![PlatOp::Cup(1)];
        ops.extend(&beta);
        ops.extend([PlatOp::Cap(k), PlatOp::Cup(k)]);
        ops.extend(inverse(&beta));
        ops.push(PlatOp::Cap(1));
        if seen % 2000 == 0 {
            eprintln!("{seen} {hist:?}");
        }
        // trivial tangles have an unknotted numerator
        if plat_numerator_trivial(&ops) {
            hist[8] += 1;
            continue;
        }
        let Ok(t) = Tangle::from_plat(&ops) else { continue };
        let stage = accept_tangle(&t, &comps);
        hist[stage] += 1;
        if stage == 9 {
            let word: Vec<String> = ops.iter().map(token).collect();
            println!("{}", word.join(" "));
            println!("{}", t.to_json());
            return;
        }
    }
}

fn plat_numerator_trivial(ops: &[PlatOp]) -> bool {
    let mut closed = vec![PlatOp::Cup(0)];
    closed.extend(ops);
    closed.push(PlatOp::Cap(0));
    up_to_unit(&plat_bracket(&closed)) == [1, 0, 0, 0, 1]
}

fn accept_tangle(t: &Tangle, comps: &[LinkDiagram]) -> usize {
    if t.unknots() > 0 {
        return 0;
    }
    let mut conn: Vec<[usize; 2]> = t
        .connectivity()
        .iter()
        .map(|&(a, b)| [a.min(b), a.max(b)])
        .collect();
    conn.sort();
    // NW = 0, NE = 1, SE = 2, SW = 3
    if conn != vec![[0, 3], [1, 2]] {
        return 1;
    }
    let Ok(n) = t.numerator() else { return 2 };
    let Ok(a) = alexander(&n) else { return 3 };
    if !a.polynomial().is_unit() {
        return 4;
    }
    let Ok(den) = t.denominator() else { return 2 };
    if !khtor::alexander::alexander_polynomial(&den).is_zero() {
        return 3;
    }
    let ok = comps.iter().all(|d| {
        let target = alexander(d).unwrap();
        face_pairs(d).into_iter().all(|(a1, a2)| {
            tangle_replace(d, a1, a2, t).is_ok_and(|j| alexander(&j).is_ok_and(|x| x == target))
        })
    });
    if !ok {
        return 7;
    }
    // the join must change the Jones polynomial of the trefoil
    let d = &comps[0];
    let (a1, a2) = face_pairs(d)[0];
    let joined = tangle_replace(d, a1, a2, t).unwrap();
    let before = kauffman_bracket_oracle(d, 16).unwrap();
    let Ok(after) = kauffman_bracket_oracle(&joined, 20) else { return 5 };
    if after == before {
        return 6;
    }
    if ok { 9 } else { 7 }
}

fn hopf_bracket() -> LaurentPolynomial {
    kauffman_bracket_oracle(&parse_pd("PD[X[4,1,3,2],X[2,3,1,4]]").unwrap(), 16).unwrap()
}

/// Pattern closure together with a meridian of the solid torus.
fn with_axis(pre: &[PlatOp]) -> Option<LinkDiagram> {
    let mut ops = pre.to_vec();
    for p in [2, 1, 0, 0, 1, 2] {
        ops.push(PlatOp::Cross(p, true));
    }
    let p = AnnularPattern::from_plat(4, &ops).ok()?;
    satellite(&LinkDiagram::unknot(), &p).ok()
}

fn linking_number(d: &LinkDiagram) -> i32 {
    let s: i32 = d
        .crossings()
        .iter()
        .filter(|c| d.component_of(c.pd()[0]) != d.component_of(c.pd()[1]))
        .map(|c| c.sign())
        .sum();
    s / 2
}

fn pattern_search() {
    let hopf = hopf_bracket();
    let comps = companions();
    let mut hist = [0usize; 10];
    for total in 0..=8 {
        for l1 in 0..=total {
            for w1 in words(5, l1) {
                for w2 in words(3, total - l1) {
                    for (i, j) in (0..4).flat_map(|i| (0..4).map(move |j| (i, j))) {
                        if j > 1 {
                            continue;
                        }
                        let mut ops = vec![PlatOp::Cup(j)];
                        ops.extend(&w1);
                        ops.push(PlatOp::Cap(i));
                        ops.extend(&w2);
                        let stage = accept_pattern(&ops, &hopf, &comps);
                        hist[stage] += 1;
                        if stage == 9 {
                            let word: Vec<String> = ops.iter().map(token).collect();
                            println!("{}", word.join(" "));
                            println!("{}", AnnularPattern::from_plat(3, &ops).unwrap().to_json());
                            return;
                        }
                    }
                }
            }
        }
        eprintln!("total {total} {hist:?}");
    }
    eprintln!("no pattern found {hist:?}");
}

fn accept_pattern(ops: &[PlatOp], hopf: &LaurentPolynomial, comps: &[LinkDiagram]) -> usize {
    let Ok(p) = AnnularPattern::from_plat(3, ops) else { return 0 };
    let Ok(closed) = satellite(&LinkDiagram::unknot(), &p) else { return 1 };
    if !closed.is_knot() {
        return 2;
    }
    if !alexander(&closed).is_ok_and(|a| a.polynomial().is_unit()) {
        return 3;
    }
    let Some(link) = with_axis(ops) else { return 4 };
    if link.component_count() != 2 || linking_number(&link).abs() != 1 {
        return 5;
    }
    let Ok(f) = kauffman_bracket_oracle(&link, 20) else { return 6 };
    if f.eq_up_to_unit(hopf) {
        return 7;
    }
    if !has_fission(ops) {
        return 4;
    }
    let ok = comps.iter().all(|d| {
        let target = alexander(d).unwrap();
        satellite(d, &p).is_ok_and(|s| alexander(&s).is_ok_and(|x| x == target))
    });
    if ok { 9 } else { 8 }
}

/// Whether one saddle turns the pattern into the core plus a split unknot,
/// judged by the bracket of the result together with the axis.
fn has_fission(ops: &[PlatOp]) -> bool {
    let target = kauffman_bracket_oracle(&parse_pd("PD[X[4,1,3,2],X[2,3,1,4]] U[1]").unwrap(), 4).unwrap();
    let mut width = 3usize;
    for at in 0..=ops.len() {
        if at > 0 {
            match ops[at - 1] {
                PlatOp::Cup(_) => width += 2,
                PlatOp::Cap(_) => width -= 2,
                PlatOp::Cross(..) => {}
            }
        }
        for k in 0..width - 1 {
            let mut v = ops[..at].to_vec();
            v.extend([PlatOp::Cap(k), PlatOp::Cup(k)]);
            v.extend(&ops[at..]);
            let Some(link) = with_axis(&v) else { continue };
            if link.component_count() == 3
                && kauffman_bracket_oracle(&link, 24).is_ok_and(|b| b.eq_up_to_unit(&target))
            {
                return true;
            }
        }
    }
    false
}

fn main() {
    match std::env::args().nth(1).as_deref() {
        Some("tangle") => tangle_search(),
        Some("pattern") => pattern_search(),
        Some("rtangle") => random_tangle_search(),
        Some("cut") => cut_search(),
        Some("bracket") => {
            use PlatOp::*;
            let tre = [Cup(0), Cup(2), Cross(1, true), Cross(1, true), Cross(1, true), Cap(0), Cap(0)];
            println!("{:?}", up_to_unit(&plat_bracket(&tre)));
            println!("{:?}", up_to_unit(&plat_bracket(&[Cup(0), Cross(0, true), Cap(0)])));
            let d = khtor::diagram::Tangle::from_plat(&[Cup(1), Cross(1, true), Cross(1, true), Cross(1, true), Cap(1)]).unwrap().numerator().unwrap();
            println!("{}", kauffman_bracket_oracle(&d, 10).unwrap());
        }
        _ => eprintln!("usage: ribbon_search tangle|pattern"),
    }
}
