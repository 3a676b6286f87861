//! 2-tangles and annular patterns.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::builder::{PlanarBuilder, PlatOp, Sweep};
use super::{occurrences_loose, solve_orientation, Arc, DiagramError, LinkDiagram};

/// Boundary positions, counterclockwise order is NW, SW, SE, NE.
pub const NW: usize = 0;
pub const NE: usize = 1;
pub const SE: usize = 2;
pub const SW: usize = 3;

/// A 2-string tangle in a disk. Boundary labels occur once among the
/// crossings (or twice among the ends for a strand without crossings); all
/// other labels occur twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    tuples: Vec<[Arc; 4]>,
    dirs: Vec<bool>,
    /// NW, NE, SE, SW.
    ends: [Arc; 4],
    end_incoming: [bool; 4],
    unknots: usize,
}

#[derive(Serialize, Deserialize)]
struct TangleJson {
    crossings: Vec<[Arc; 4]>,
    /// NW, NE, SE, SW
    ends: [Arc; 4],
    #[serde(default)]
    unknots: usize,
}

impl Tangle {
    pub fn new(tuples: Vec<[Arc; 4]>, ends: [Arc; 4], unknots: usize) -> Result<Self, DiagramError> {
        let dirs = vec![None; tuples.len()];
        Self::with_over_dirs(tuples, &dirs, ends, unknots)
    }

    pub(crate) fn with_over_dirs(
        tuples: Vec<[Arc; 4]>,
        dirs: &[Option<bool>],
        ends: [Arc; 4],
        unknots: usize,
    ) -> Result<Self, DiagramError> {
        let occ = occurrences_loose(&tuples);
        let mut count: BTreeMap<Arc, usize> = occ.iter().map(|(&a, v)| (a, v.len())).collect();
        for e in ends {
            *count.entry(e).or_default() += 1;
        }
        for (&arc, &c) in &count {
            if c != 2 {
                return Err(DiagramError::InvalidTangle(format!("arc {arc} occurs {c} times")));
            }
        }
        let dirs = solve_orientation(&tuples, &occ, dirs)?;
        let mut end_incoming = [false; 4];
        for (e, &a) in ends.iter().enumerate() {
            end_incoming[e] = match occ.get(&a).map(|v| v[0]) {
                Some((c, s)) => incoming(&dirs, c, s),
                // strand without crossings: first listed end is the entry
                None => ends.iter().position(|&b| b == a) == Some(e),
            };
        }
        let t = Tangle { tuples, dirs, ends, end_incoming, unknots };
        for e in 0..4 {
            if t.end_incoming[e] {
                let x = t.exit_of(e);
                if t.end_incoming[x] {
                    return Err(DiagramError::InvalidTangle("strand with two entries".into()));
                }
            }
        }
        Ok(t)
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let v: TangleJson = serde_json::from_str(text)
            .map_err(|e| DiagramError::Syntax { pos: e.column(), msg: e.to_string() })?;
        Self::new(v.crossings, v.ends, v.unknots)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TangleJson {
            crossings: self.tuples.clone(),
            ends: self.ends,
            unknots: self.unknots,
        })
        .expect("plain data serializes")
    }

    /// Builds a tangle from a plat word. The bottom row starts with SW and SE
    /// at the outermost positions and the top row must end with exactly two
    /// positions, NW and NE.
    pub fn from_plat(ops: &[PlatOp]) -> Result<Self, DiagramError> {
        let mut b = PlanarBuilder::new();
        let (sw, se) = (b.seg(), b.seg());
        let mut sweep = Sweep::new(vec![sw, se]);
        for &op in ops {
            sweep.apply(&mut b, op);
        }
        if sweep.cur.len() != 2 {
            return Err(DiagramError::InvalidTangle("plat word must end with two strands".into()));
        }
        let (nw, ne) = (sweep.cur[0], sweep.cur[1]);
        let e_nw = b.end(nw);
        let e_ne = b.end(ne);
        let e_se = b.end(se);
        let e_sw = b.end(sw);
        b.hint_end(e_sw, true);
        let built = b.build()?;
        let ends = [built.ends[e_nw], built.ends[e_ne], built.ends[e_se], built.ends[e_sw]];
        Self::with_over_dirs(built.tuples, &built.dirs, ends, built.free_circles)
    }

    pub fn crossing_count(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[[Arc; 4]] {
        &self.tuples
    }

    pub(crate) fn dirs(&self) -> &[bool] {
        &self.dirs
    }

    /// Boundary labels NW, NE, SE, SW.
    pub fn ends(&self) -> [Arc; 4] {
        self.ends
    }

    pub fn end_incoming(&self) -> [bool; 4] {
        self.end_incoming
    }

    pub fn unknots(&self) -> usize {
        self.unknots
    }

    fn head_of(&self, a: Arc) -> Option<(usize, usize)> {
        for (c, t) in self.tuples.iter().enumerate() {
            for s in 0..4 {
                if t[s] == a && incoming(&self.dirs, c, s) {
                    return Some((c, s));
                }
            }
        }
        None
    }

    /// Arcs of the strand entering at `entry`, in order.
    fn strand_arcs(&self, entry: usize) -> Vec<Arc> {
        let mut arcs = vec![self.ends[entry]];
        let mut a = self.ends[entry];
        while let Some((c, s)) = self.head_of(a) {
            a = self.tuples[c][(s + 2) % 4];
            arcs.push(a);
        }
        arcs
    }

    /// Boundary position where the strand entering at `entry` leaves.
    pub fn exit_of(&self, entry: usize) -> usize {
        let arcs = self.strand_arcs(entry);
        let last = *arcs.last().expect("nonempty");
        (0..4)
            .find(|&e| self.ends[e] == last && (e != entry || arcs.len() > 1))
            .or_else(|| (0..4).find(|&e| e != entry && self.ends[e] == last))
            .expect("strand reaches the boundary")
    }

    /// Boundary pairs joined by the two strands.
    pub fn connectivity(&self) -> [(usize, usize); 2] {
        let mut out = Vec::new();
        for e in 0..4 {
            if self.end_incoming[e] {
                out.push((e, self.exit_of(e)));
            }
        }
        [out[0], out[1]]
    }

    /// Reverses the orientation of the strand through boundary position `end`.
    pub fn reverse_strand(&self, end: usize) -> Self {
        let entry = if self.end_incoming[end] {
            end
        } else {
            (0..4).find(|&e| self.end_incoming[e] && self.exit_of(e) == end).expect("strand")
        };
        let arcs: Vec<Arc> = self.strand_arcs(entry);
        let on = |a: Arc| arcs.contains(&a);
        let mut tuples = self.tuples.clone();
        let mut dirs = Vec::with_capacity(tuples.len());
        for (c, t) in tuples.iter_mut().enumerate() {
            let under = on(t[0]);
            let over = on(t[1]);
            let mut d = self.dirs[c];
            if under {
                *t = [t[2], t[3], t[0], t[1]];
                d = !d;
            }
            if over {
                d = !d;
            }
            dirs.push(Some(d));
        }
        let mut out = Self::with_over_dirs(tuples, &dirs, self.ends, self.unknots)
            .expect("reversal keeps validity");
        // strands without crossings carry no orientation data of their own
        if arcs.len() == 1 {
            let exit = self.exit_of(entry);
            out.end_incoming[entry] = false;
            out.end_incoming[exit] = true;
        }
        out
    }

    /// Closure joining NW to NE and SW to SE.
    pub fn numerator(&self) -> Result<LinkDiagram, DiagramError> {
        self.close([(NW, NE), (SW, SE)])
    }

    /// Closure joining NW to SW and NE to SE.
    pub fn denominator(&self) -> Result<LinkDiagram, DiagramError> {
        self.close([(NW, SW), (NE, SE)])
    }

    fn close(&self, pairs: [(usize, usize); 2]) -> Result<LinkDiagram, DiagramError> {
        let mut t = self.clone();
        let mut extra = self.unknots;
        let mut merge: BTreeMap<Arc, Arc> = BTreeMap::new();
        for (p, q) in pairs {
            if t.end_incoming[p] == t.end_incoming[q] {
                t = t.reverse_strand(q);
            }
        }
        for (p, q) in pairs {
            let (a, b) = (t.ends[p], t.ends[q]);
            let ra = resolve(&merge, a);
            let rb = resolve(&merge, b);
            if ra == rb {
                // the closing arc completes a crossingless circle
                if !t.tuples.iter().flatten().any(|&x| resolve(&merge, x) == ra) {
                    extra += 1;
                }
                continue;
            }
            merge.insert(rb.max(ra), rb.min(ra));
        }
        let tuples: Vec<[Arc; 4]> =
            t.tuples.iter().map(|x| x.map(|a| resolve(&merge, a))).collect();
        let dirs: Vec<Option<bool>> = t.dirs.iter().map(|&d| Some(d)).collect();
        if tuples.is_empty() && extra == 0 {
            return Err(DiagramError::Empty);
        }
        Ok(LinkDiagram::with_over_dirs(tuples, &dirs, extra)?.canonical_relabel())
    }
}

fn resolve(m: &BTreeMap<Arc, Arc>, mut a: Arc) -> Arc {
    while let Some(&b) = m.get(&a) {
        a = b;
    }
    a
}

fn incoming(dirs: &[bool], c: usize, s: usize) -> bool {
    match s {
        0 => true,
        2 => false,
        1 => !dirs[c],
        _ => dirs[c],
    }
}

/// Two vertical strands without crossings.
pub fn trivial_tangle() -> Tangle {
    // NW-SW strand labelled 1, NE-SE strand labelled 2
    Tangle::new(Vec::new(), [1, 2, 2, 1], 0).expect("valid")
}

/// A knot pattern in the solid torus, cut open along a meridian disk: `m`
/// strands enter at the bottom and leave at the top, position `p` on top
/// being glued to position `p` at the bottom. Positions run left to right
/// when facing along the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnularPattern {
    tuples: Vec<[Arc; 4]>,
    bottom: Vec<Arc>,
    top: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    crossings: Vec<[Arc; 4]>,
    bottom: Vec<Arc>,
    top: Vec<Arc>,
}

impl AnnularPattern {
    pub fn new(tuples: Vec<[Arc; 4]>, bottom: Vec<Arc>, top: Vec<Arc>) -> Result<Self, DiagramError> {
        let dirs = vec![None; tuples.len()];
        Self::with_over_dirs(tuples, &dirs, bottom, top)
    }

    pub(crate) fn with_over_dirs(
        tuples: Vec<[Arc; 4]>,
        dirs: &[Option<bool>],
        bottom: Vec<Arc>,
        top: Vec<Arc>,
    ) -> Result<Self, DiagramError> {
        if bottom.len() != top.len() || bottom.is_empty() {
            return Err(DiagramError::InvalidTangle("pattern needs equal nonempty rows".into()));
        }
        let occ = occurrences_loose(&tuples);
        let mut count: BTreeMap<Arc, usize> = occ.iter().map(|(&a, v)| (a, v.len())).collect();
        for &e in bottom.iter().chain(&top) {
            *count.entry(e).or_default() += 1;
        }
        if let Some((&arc, &c)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(DiagramError::InvalidTangle(format!("arc {arc} occurs {c} times")));
        }
        solve_orientation(&tuples, &occ, dirs)?;
        Ok(AnnularPattern { tuples, bottom, top })
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let v: PatternJson = serde_json::from_str(text)
            .map_err(|e| DiagramError::Syntax { pos: e.column(), msg: e.to_string() })?;
        Self::new(v.crossings, v.bottom, v.top)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PatternJson {
            crossings: self.tuples.clone(),
            bottom: self.bottom.clone(),
            top: self.top.clone(),
        })
        .expect("plain data serializes")
    }

    /// Builds a pattern on `width` positions from a plat word.
    pub fn from_plat(width: usize, ops: &[PlatOp]) -> Result<Self, DiagramError> {
        let mut b = PlanarBuilder::new();
        let bottom: Vec<usize> = (0..width).map(|_| b.seg()).collect();
        let mut sweep = Sweep::new(bottom.clone());
        for &op in ops {
            sweep.apply(&mut b, op);
        }
        if sweep.cur.len() != width {
            return Err(DiagramError::InvalidTangle("plat word changes the width".into()));
        }
        let top = sweep.cur.clone();
        let eb: Vec<usize> = bottom.iter().map(|&s| b.end(s)).collect();
        let et: Vec<usize> = top.iter().map(|&s| b.end(s)).collect();
        b.hint_end(eb[0], true);
        let built = b.build()?;
        if built.free_circles > 0 {
            return Err(DiagramError::InvalidTangle("pattern has a free circle".into()));
        }
        let bottom = eb.iter().map(|&e| built.ends[e]).collect();
        let top = et.iter().map(|&e| built.ends[e]).collect();
        Self::with_over_dirs(built.tuples, &built.dirs, bottom, top)
    }

    pub fn width(&self) -> usize {
        self.bottom.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[[Arc; 4]] {
        &self.tuples
    }

    pub fn bottom(&self) -> &[Arc] {
        &self.bottom
    }

    pub fn top(&self) -> &[Arc] {
        &self.top
    }
}

const KT_TANGLE: &str = include_str!("../../data/kt_tangle.json");
const LIVINGSTON_PATTERN: &str = include_str!("../../data/livingston_pattern.json");

/// The bundled Kinoshita-Terasaka-type tangle (see `data/README.md`).
pub fn kt_tangle() -> Tangle {
    Tangle::from_json(KT_TANGLE).expect("bundled tangle is valid")
}

/// The bundled winding-one satellite pattern (see `data/README.md`).
pub fn livingston_pattern() -> AnnularPattern {
    AnnularPattern::from_json(LIVINGSTON_PATTERN).expect("bundled pattern is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_closures() {
        let t = trivial_tangle();
        let mut pairs: Vec<(usize, usize)> =
            t.connectivity().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(NW, SW), (NE, SE)]);
        let n = t.numerator().unwrap();
        let d = t.denominator().unwrap();
        assert_eq!((n.crossing_count(), n.component_count()), (0, 1));
        assert_eq!((d.crossing_count(), d.component_count()), (0, 2));
    }

    #[test]
    fn single_crossing_tangle() {
        let t = Tangle::from_plat(&[PlatOp::Cross(0, true)]).unwrap();
        assert_eq!(t.crossing_count(), 1);
        let n = t.numerator().unwrap();
        let d = t.denominator().unwrap();
        assert_eq!(n.component_count() + d.component_count(), 2);
        let r = t.reverse_strand(SW);
        assert_eq!(r.end_incoming[SW], !t.end_incoming[SW]);
    }
}
