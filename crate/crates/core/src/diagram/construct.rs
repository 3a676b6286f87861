//! Mirror image, connected sum, tangle replacement and satellites.

use std::collections::BTreeMap;

use super::builder::{PlanarBuilder, Sweep};
use super::faces::faces;
use super::tangle::{AnnularPattern, Tangle, NE, NW, SE, SW};
use super::{Arc, DiagramError, LinkDiagram};

/// Swaps over- and under-strand at every crossing. Writhe negates.
pub fn mirror(d: &LinkDiagram) -> LinkDiagram {
    let mut tuples = Vec::with_capacity(d.crossing_count());
    let mut dirs = Vec::with_capacity(d.crossing_count());
    for x in d.crossings() {
        let [i, j, k, l] = x.pd();
        if x.over_l_to_j() {
            tuples.push([l, i, j, k]);
            dirs.push(Some(false));
        } else {
            tuples.push([j, k, l, i]);
            dirs.push(Some(true));
        }
    }
    if tuples.is_empty() {
        return d.clone();
    }
    LinkDiagram::with_over_dirs(tuples, &dirs, d.unknots())
        .expect("mirror keeps validity")
        .canonical_relabel()
}

/// Connected sum along `a1` of `d1` and `a2` of `d2`. Both arcs are cut and
/// the four ends cross-joined so orientations agree. `None` picks the first
/// arc of the first component; a crossingless summand acts as the identity.
pub fn connected_sum(
    d1: &LinkDiagram,
    d2: &LinkDiagram,
    a1: Option<Arc>,
    a2: Option<Arc>,
) -> Result<LinkDiagram, DiagramError> {
    let pick = |d: &LinkDiagram, a: Option<Arc>| -> Result<Option<Arc>, DiagramError> {
        if d.crossing_count() == 0 {
            return Ok(None);
        }
        match a {
            Some(a) if d.has_arc(a) => Ok(Some(a)),
            Some(a) => Err(DiagramError::MissingArc(a)),
            None => Ok(Some(d.components()[0][0])),
        }
    };
    let a1 = pick(d1, a1)?;
    let a2 = pick(d2, a2)?;
    let (a1, a2) = match (a1, a2) {
        (None, _) => {
            let u = d1.unknots() + d2.unknots() - 1;
            if d2.crossing_count() == 0 {
                return LinkDiagram::new(Vec::new(), u);
            }
            return Ok(LinkDiagram::with_over_dirs(d2.tuples(), &d2.over_dirs(), u)?
                .canonical_relabel());
        }
        (Some(_), None) => {
            let u = d1.unknots() + d2.unknots() - 1;
            return Ok(LinkDiagram::with_over_dirs(d1.tuples(), &d1.over_dirs(), u)?
                .canonical_relabel());
        }
        (Some(a), Some(b)) => (a, b),
    };
    let off = d1.max_arc() + 1;
    let mut t1 = d1.tuples();
    let mut t2: Vec<[Arc; 4]> = d2.tuples().iter().map(|x| x.map(|a| a + off)).collect();
    let (h1c, h1s) = d1.head(a1).expect("present");
    let (h2c, h2s) = d2.head(a2).expect("present");
    t1[h1c][h1s] = a2 + off;
    t2[h2c][h2s] = a1;
    let mut dirs = d1.over_dirs();
    dirs.extend(d2.over_dirs());
    t1.extend(t2);
    Ok(LinkDiagram::with_over_dirs(t1, &dirs, d1.unknots() + d2.unknots())?.canonical_relabel())
}

/// Replaces a trivial tangle made of sub-arcs of `a1` and `a2` by `t`.
///
/// The two arcs must bound a common face; the ball is a neighbourhood of a
/// path across that face. Walking the face with the face on the right, `a1`
/// is crossed from its end at crossing `c` to its end at `c'` and `a2` from
/// `e` to `e'`. Boundary gluing: NW to the `c'` end of `a1`, SW to its `c`
/// end, NE to the `e` end of `a2`, SE to its `e'` end. The trivial tangle
/// (strands NW-SW and NE-SE) therefore leaves the diagram unchanged. Tangle
/// strands are reversed where needed to follow the diagram's orientation.
pub fn tangle_replace(
    d: &LinkDiagram,
    a1: Arc,
    a2: Arc,
    t: &Tangle,
) -> Result<LinkDiagram, DiagramError> {
    for a in [a1, a2] {
        if !d.has_arc(a) {
            return Err(DiagramError::MissingArc(a));
        }
    }
    if a1 == a2 {
        return Err(DiagramError::TangleMismatch("the two arcs must differ".into()));
    }
    let (e1, e2) = faces(d)
        .into_iter()
        .find_map(|f| {
            let e1 = f.iter().find(|e| e.arc == a1)?;
            let e2 = f.iter().find(|e| e.arc == a2)?;
            Some((*e1, *e2))
        })
        .ok_or(DiagramError::NoCommonFace(a1, a2))?;

    // occurrence in d attached to each boundary position
    let mut occ = [(0, 0); 4];
    occ[NW] = e1.to;
    occ[SW] = e1.from;
    occ[NE] = e2.from;
    occ[SE] = e2.to;
    // a boundary end is an entry when the diagram arc flows into the tangle
    let mut want_in = [false; 4];
    for (pos, arc) in [(NW, a1), (SW, a1), (NE, a2), (SE, a2)] {
        want_in[pos] = d.tail(arc) == Some(occ[pos]);
    }

    let mut t = t.clone();
    for (p, q) in t.connectivity() {
        if want_in[p] == want_in[q] {
            return Err(DiagramError::TangleMismatch(format!(
                "tangle strand joins boundary points {p} and {q}, which carry the same direction"
            )));
        }
        if t.end_incoming()[p] != want_in[p] {
            t = t.reverse_strand(p);
        }
    }

    let off = d.max_arc() + 1;
    let mut tuples = d.tuples();
    let ends = t.ends();
    for pos in [NW, NE, SE, SW] {
        let (c, s) = occ[pos];
        tuples[c][s] = ends[pos] + off;
    }
    tuples.extend(t.tuples().iter().map(|x| x.map(|a| a + off)));
    let mut dirs = d.over_dirs();
    dirs.extend(t.dirs().iter().map(|&v| Some(v)));
    Ok(LinkDiagram::with_over_dirs(tuples, &dirs, d.unknots() + t.unknots())?.canonical_relabel())
}

/// Zero-framed satellite of the knot `companion` with the given pattern.
///
/// Every companion arc is replaced by `m` blackboard-parallel copies
/// (`m` = pattern width), every crossing by an `m x m` grid, the pattern is
/// spliced into the copies of the first arc, and `|w|` full twists of the
/// opposite handedness cancel the blackboard framing `w` (the writhe).
/// Crossing count: `m^2 n + n_pattern + m (m - 1) |w|`.
pub fn satellite(companion: &LinkDiagram, pattern: &AnnularPattern) -> Result<LinkDiagram, DiagramError> {
    if !companion.is_knot() {
        return Err(DiagramError::NotAKnot(companion.component_count()));
    }
    let m = pattern.width();
    let mut b = PlanarBuilder::new();

    // pattern pieces; returns bottom and top segments
    let add_pattern = |b: &mut PlanarBuilder| -> (Vec<usize>, Vec<usize>) {
        let mut seg: BTreeMap<Arc, usize> = BTreeMap::new();
        let mut get = |b: &mut PlanarBuilder, a: Arc| *seg.entry(a).or_insert_with(|| b.seg());
        for x in pattern.tuples() {
            let arms = [get(b, x[0]), get(b, x[1]), get(b, x[2]), get(b, x[3])];
            b.crossing(arms);
        }
        let bottom = pattern.bottom().iter().map(|&a| get(b, a)).collect();
        let top = pattern.top().iter().map(|&a| get(b, a)).collect();
        (bottom, top)
    };

    if companion.crossing_count() == 0 {
        let (bottom, top) = add_pattern(&mut b);
        for (t, s) in top.into_iter().zip(bottom) {
            b.join(t, s);
        }
        if pattern.crossing_count() > 0 {
            hint_pattern(&mut b, 0);
        }
        return b.build()?.into_diagram(0);
    }

    let x0 = companion.components()[0][0];
    let tail0 = companion.tail(x0).expect("arc");
    let mut copies: BTreeMap<Arc, Vec<usize>> = BTreeMap::new();
    for a in companion.arcs() {
        if a != x0 {
            copies.insert(a, (0..m).map(|_| b.seg()).collect());
        }
    }
    let tail_side: Vec<usize> = (0..m).map(|_| b.seg()).collect();
    let head_side: Vec<usize> = (0..m).map(|_| b.seg()).collect();
    let seg_at = |c: usize, s: usize, v: usize| -> usize {
        let a = companion.crossings()[c].pd()[s];
        if a == x0 {
            if (c, s) == tail0 {
                tail_side[v]
            } else {
                head_side[v]
            }
        } else {
            copies[&a][v]
        }
    };

    for (c, x) in companion.crossings().iter().enumerate() {
        // copy index of the over-strand on grid row r (rows south to north)
        let row_copy = |r: usize| if x.over_l_to_j() { m - 1 - r } else { r };
        let mut vert = vec![vec![0usize; m + 1]; m];
        let mut horiz = vec![vec![0usize; m + 1]; m];
        for u in 0..m {
            vert[u][0] = seg_at(c, 0, u);
            vert[u][m] = seg_at(c, 2, u);
            for r in 1..m {
                vert[u][r] = b.seg();
            }
        }
        for r in 0..m {
            horiz[r][0] = seg_at(c, 3, row_copy(r));
            horiz[r][m] = seg_at(c, 1, row_copy(r));
            for u in 1..m {
                horiz[r][u] = b.seg();
            }
        }
        for u in 0..m {
            for r in 0..m {
                b.crossing([vert[u][r], horiz[r][u + 1], vert[u][r + 1], horiz[r][u]]);
            }
        }
    }

    let first_pattern_crossing = b.crossing_count();
    let (bottom, top) = add_pattern(&mut b);
    for (p, &s) in bottom.iter().enumerate() {
        b.join(tail_side[p], s);
    }
    let mut sweep = Sweep::new(top);
    let w = companion.writhe();
    for _ in 0..w.unsigned_abs() {
        for _ in 0..m {
            for p in 0..m - 1 {
                sweep.cross(&mut b, p, w < 0);
            }
        }
    }
    for (p, &s) in sweep.cur.iter().enumerate() {
        b.join(s, head_side[p]);
    }
    if pattern.crossing_count() > 0 {
        hint_pattern(&mut b, first_pattern_crossing);
    }
    b.build()?.into_diagram(0)
}

/// Orients the spliced pattern the way it is oriented on its own.
fn hint_pattern(b: &mut PlanarBuilder, first: usize) {
    b.hint_arm(first, 0);
}

#[cfg(test)]
mod tests {
    use super::super::parse_pd;
    use super::super::tangle::trivial_tangle;
    use super::*;

    fn trefoil() -> LinkDiagram {
        parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap()
    }

    #[test]
    fn mirror_negates_writhe_and_is_an_involution() {
        let d = trefoil();
        let m = mirror(&d);
        assert_eq!(m.writhe(), 3);
        assert_eq!(mirror(&m), d.canonical_relabel());
        assert_eq!(mirror(&LinkDiagram::unknot()), LinkDiagram::unknot());
    }

    #[test]
    fn connected_sum_counts() {
        let d = trefoil();
        let s = connected_sum(&d, &d, None, None).unwrap();
        assert_eq!((s.crossing_count(), s.component_count()), (6, 1));
        assert_eq!(s.writhe(), -6);
        let u = connected_sum(&d, &LinkDiagram::unknot(), None, None).unwrap();
        assert_eq!(u, d.canonical_relabel());
        let u = connected_sum(&LinkDiagram::unknot(), &d, None, None).unwrap();
        assert_eq!(u, d.canonical_relabel());
        assert_eq!(
            connected_sum(&d, &d, Some(99), None),
            Err(DiagramError::MissingArc(99))
        );
    }

    #[test]
    fn trivial_tangle_is_identity() {
        let d = trefoil();
        for f in faces(&d) {
            for i in 0..f.len() {
                for j in 0..f.len() {
                    if f[i].arc == f[j].arc {
                        continue;
                    }
                    let r = tangle_replace(&d, f[i].arc, f[j].arc, &trivial_tangle()).unwrap();
                    assert_eq!(r, d.canonical_relabel());
                }
            }
        }
    }

    #[test]
    fn satellite_of_unknot_closes_the_pattern() {
        let p = AnnularPattern::from_plat(2, &[super::super::builder::PlatOp::Cross(0, true)]).unwrap();
        let s = satellite(&LinkDiagram::unknot(), &p).unwrap();
        assert_eq!(s.crossing_count(), 1);
        assert_eq!(s.component_count(), 1);
    }

    #[test]
    fn cable_crossing_count() {
        let p = AnnularPattern::from_plat(2, &[]).unwrap();
        let s = satellite(&trefoil(), &p).unwrap();
        assert_eq!(s.crossing_count(), 4 * 3 + 2 * 3);
        // zero-framed 2-cable: the two copies are unlinked
        assert_eq!(s.component_count(), 2);
        assert_eq!(s.writhe(), 2 * -3 + 0);
    }
}
