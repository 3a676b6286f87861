//! Oriented link diagrams in planar-diagram (PD) notation.
//!
//! A crossing is written `X[i, j, k, l]`: `i` is the incoming under-strand and
//! the remaining labels follow counterclockwise, so the under-strand leaves
//! through `k` and the over-strand occupies `j` and `l`. Every arc label occurs
//! exactly twice. Split unknotted components carry no crossings and are kept
//! as an explicit counter.

mod builder;
mod construct;
mod faces;
mod pd;
mod tangle;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

pub use construct::{connected_sum, mirror, satellite, tangle_replace};
pub use faces::{faces, Face, FaceEdge};
pub use pd::{parse_pd, parse_pd_json, parse_pd_text, to_json, to_pd_string};
pub use tangle::{kt_tangle, livingston_pattern, trivial_tangle, AnnularPattern, Tangle};

pub use builder::{braid_closure, PlatOp};

/// Arc label.
pub type Arc = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arc {arc} occurs {count} times (expected 2)")]
    LabelCount { arc: Arc, count: usize },
    #[error("no coherent orientation: {0}")]
    Orientation(String),
    #[error("empty diagram")]
    Empty,
    #[error("arc {0} is not present in the diagram")]
    MissingArc(Arc),
    #[error("arcs {0} and {1} do not bound a common face")]
    NoCommonFace(Arc, Arc),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("tangle does not fit the cut ends: {0}")]
    TangleMismatch(String),
    #[error("invalid tangle: {0}")]
    InvalidTangle(String),
}

/// One crossing: the PD tuple plus the direction of the over-strand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pd: [Arc; 4],
    over_l_to_j: bool,
}

impl Crossing {
    pub fn pd(&self) -> [Arc; 4] {
        self.pd
    }

    /// `+1` when the over-strand runs from slot `l` to slot `j`.
    pub fn sign(&self) -> i32 {
        if self.over_l_to_j {
            1
        } else {
            -1
        }
    }

    pub(crate) fn over_l_to_j(&self) -> bool {
        self.over_l_to_j
    }

    /// Whether the arc in `slot` enters this crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => !self.over_l_to_j,
            _ => self.over_l_to_j,
        }
    }
}

/// Validated oriented diagram.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    unknots: usize,
    // arc -> (crossing, slot) where the arc ends / starts
    heads: BTreeMap<Arc, (usize, usize)>,
    tails: BTreeMap<Arc, (usize, usize)>,
    components: Vec<Vec<Arc>>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.unknots == other.unknots
    }
}

impl Eq for LinkDiagram {}

impl LinkDiagram {
    /// Validates PD tuples, inferring orientation from the under-strands.
    pub fn new(tuples: Vec<[Arc; 4]>, unknots: usize) -> Result<Self, DiagramError> {
        let dirs = vec![None; tuples.len()];
        Self::with_over_dirs(tuples, &dirs, unknots)
    }

    /// The unknot as a crossingless circle.
    pub fn unknot() -> Self {
        Self::new(Vec::new(), 1).expect("unknot")
    }

    pub(crate) fn with_over_dirs(
        tuples: Vec<[Arc; 4]>,
        dirs: &[Option<bool>],
        unknots: usize,
    ) -> Result<Self, DiagramError> {
        if tuples.is_empty() && unknots == 0 {
            return Err(DiagramError::Empty);
        }
        let occ = occurrences(&tuples)?;
        let resolved = solve_orientation(&tuples, &occ, dirs)?;
        let crossings: Vec<Crossing> = tuples
            .into_iter()
            .zip(resolved)
            .map(|(pd, over_l_to_j)| Crossing { pd, over_l_to_j })
            .collect();

        let mut heads = BTreeMap::new();
        let mut tails = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for s in 0..4 {
                let map = if x.is_incoming(s) { &mut heads } else { &mut tails };
                if map.insert(x.pd[s], (c, s)).is_some() {
                    return Err(DiagramError::Orientation(format!(
                        "arc {} has both ends {}",
                        x.pd[s],
                        if x.is_incoming(s) { "incoming" } else { "outgoing" }
                    )));
                }
            }
        }

        let mut d = LinkDiagram { crossings, unknots, heads, tails, components: Vec::new() };
        d.components = d.trace_components();
        Ok(d)
    }

    fn trace_components(&self) -> Vec<Vec<Arc>> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut comps = Vec::new();
        for x in &self.crossings {
            for s in 0..4 {
                let start = x.pd[s];
                if seen.contains(&start) {
                    continue;
                }
                let mut comp = Vec::new();
                let mut a = start;
                while seen.insert(a) {
                    comp.push(a);
                    a = self.next_arc(a);
                }
                comps.push(comp);
            }
        }
        comps
    }

    /// The arc following `a` along the orientation.
    pub fn next_arc(&self, a: Arc) -> Arc {
        let (c, s) = self.heads[&a];
        self.crossings[c].pd[(s + 2) % 4]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Split crossingless components.
    pub fn unknots(&self) -> usize {
        self.unknots
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.unknots
    }

    /// Components carrying crossings, each as arcs in orientation order.
    pub fn components(&self) -> &[Vec<Arc>] {
        &self.components
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.heads.keys().copied()
    }

    pub fn has_arc(&self, a: Arc) -> bool {
        self.heads.contains_key(&a)
    }

    /// Crossing and slot where `a` ends.
    pub fn head(&self, a: Arc) -> Option<(usize, usize)> {
        self.heads.get(&a).copied()
    }

    /// Crossing and slot where `a` starts.
    pub fn tail(&self, a: Arc) -> Option<(usize, usize)> {
        self.tails.get(&a).copied()
    }

    pub fn component_of(&self, a: Arc) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&a))
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn tuples(&self) -> Vec<[Arc; 4]> {
        self.crossings.iter().map(|c| c.pd).collect()
    }

    pub(crate) fn over_dirs(&self) -> Vec<Option<bool>> {
        self.crossings.iter().map(|c| Some(c.over_l_to_j)).collect()
    }

    /// Same diagram with crossings listed in the order given by `perm`
    /// (`perm[new] = old`).
    pub fn permute_crossings(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.crossings.len());
        let tuples = perm.iter().map(|&i| self.crossings[i].pd).collect();
        let dirs: Vec<_> = perm.iter().map(|&i| Some(self.crossings[i].over_l_to_j)).collect();
        Self::with_over_dirs(tuples, &dirs, self.unknots).expect("permutation keeps validity")
    }

    /// Relabels arcs `1..=2n` consecutively along each component. Each
    /// component starts at the arc entering the first crossing it visits, so
    /// labels increase along the orientation and re-parsing recovers it.
    pub fn canonical_relabel(&self) -> Self {
        let n = self.crossings.len();
        let mut first_visit: Vec<(usize, usize, usize)> = self
            .components
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                let (c, s) = comp.iter().map(|a| self.heads[a]).min().expect("nonempty");
                (c, s, ci)
            })
            .collect();
        first_visit.sort();
        let mut relabel = BTreeMap::new();
        let mut next = 1u32;
        for &(c, s, _) in &first_visit {
            let start = self.crossings[c].pd[s];
            let mut a = start;
            loop {
                relabel.insert(a, next);
                next += 1;
                a = self.next_arc(a);
                if a == start {
                    break;
                }
            }
        }
        let tuples: Vec<[Arc; 4]> =
            self.crossings.iter().map(|x| x.pd.map(|a| relabel[&a])).collect();
        debug_assert_eq!(relabel.len(), 2 * n);
        Self::with_over_dirs(tuples, &self.over_dirs(), self.unknots)
            .expect("relabeling keeps validity")
    }

    /// Largest arc label in use (0 for crossingless diagrams).
    pub fn max_arc(&self) -> Arc {
        self.heads.keys().next_back().copied().unwrap_or(0)
    }
}

pub(crate) fn occurrences_loose(tuples: &[[Arc; 4]]) -> BTreeMap<Arc, Vec<(usize, usize)>> {
    let mut occ: BTreeMap<Arc, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, t) in tuples.iter().enumerate() {
        for (s, &a) in t.iter().enumerate() {
            occ.entry(a).or_default().push((c, s));
        }
    }
    occ
}

fn occurrences(tuples: &[[Arc; 4]]) -> Result<BTreeMap<Arc, Vec<(usize, usize)>>, DiagramError> {
    let occ = occurrences_loose(tuples);
    for (&arc, v) in &occ {
        if v.len() != 2 {
            return Err(DiagramError::LabelCount { arc, count: v.len() });
        }
    }
    Ok(occ)
}

/// Over-strand directions (`true` = from slot `l` to slot `j`).
///
/// Each arc must have one incoming and one outgoing end. Under-strand slots
/// are fixed by the PD convention; over-strand slots are tied together by
/// parity constraints and solved by propagation. Crossings whose over-strand
/// direction is forced by nothing (components that never pass under) are
/// rooted by a label heuristic: the over-strand enters through the label
/// preceding the other one.
pub(crate) fn solve_orientation(
    tuples: &[[Arc; 4]],
    occ: &BTreeMap<Arc, Vec<(usize, usize)>>,
    hints: &[Option<bool>],
) -> Result<Vec<bool>, DiagramError> {
    let n = tuples.len();
    let mut fixed: Vec<Option<bool>> = hints.to_vec();
    fixed.resize(n, None);
    // parity edges: dir[c1] ^ dir[c2] == p
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];

    let force = |fixed: &mut Vec<Option<bool>>, c: usize, v: bool, arc: Arc| {
        match fixed[c] {
            Some(old) if old != v => Err(DiagramError::Orientation(format!(
                "arc {arc} forces contradictory directions at crossing {c}"
            ))),
            _ => {
                fixed[c] = Some(v);
                Ok(())
            }
        }
    };

    for (&arc, v) in occ {
        if v.len() != 2 {
            continue;
        }
        let (c1, s1) = v[0];
        let (c2, s2) = v[1];
        let under1 = s1 % 2 == 0;
        let under2 = s2 % 2 == 0;
        match (under1, under2) {
            (true, true) => {
                if s1 == s2 {
                    return Err(DiagramError::Orientation(format!(
                        "arc {arc} is {} at both ends",
                        if s1 == 0 { "incoming" } else { "outgoing" }
                    )));
                }
            }
            (true, false) | (false, true) => {
                let (us, oc, os) = if under1 { (s1, c2, s2) } else { (s2, c1, s1) };
                let under_in = us == 0;
                // over slot must be incoming iff the under end is outgoing
                let v = !under_in ^ (os == 1);
                force(&mut fixed, oc, v, arc)?;
            }
            (false, false) => {
                if c1 == c2 {
                    continue;
                }
                let p = true ^ (s1 == 1) ^ (s2 == 1);
                adj[c1].push((c2, p));
                adj[c2].push((c1, p));
            }
        }
    }

    let mut dir: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    let propagate = |dir: &mut Vec<Option<bool>>, queue: &mut VecDeque<usize>| -> Result<(), DiagramError> {
        while let Some(c) = queue.pop_front() {
            let dc = dir[c].expect("assigned");
            for &(o, p) in &adj[c] {
                let want = dc ^ p;
                match dir[o] {
                    None => {
                        dir[o] = Some(want);
                        queue.push_back(o);
                    }
                    Some(v) if v != want => {
                        return Err(DiagramError::Orientation(format!(
                            "over-strand directions at crossings {c} and {o} disagree"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    };

    for c in 0..n {
        if let Some(v) = fixed[c] {
            match dir[c] {
                Some(old) if old != v => {
                    return Err(DiagramError::Orientation(format!(
                        "over-strand direction at crossing {c} is contradictory"
                    )))
                }
                Some(_) => {}
                None => {
                    dir[c] = Some(v);
                    queue.push_back(c);
                    propagate(&mut dir, &mut queue)?;
                }
            }
        }
    }
    for c in 0..n {
        if dir[c].is_none() {
            let [_, j, _, l] = tuples[c];
            let v = j == l.wrapping_add(1) || (j < l && j.wrapping_add(1) != l);
            dir[c] = Some(v);
            queue.push_back(c);
            propagate(&mut dir, &mut queue)?;
        }
    }
    Ok(dir.into_iter().map(|d| d.expect("all assigned")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap()
    }

    #[test]
    fn trefoil_orientation_and_writhe() {
        let d = trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.components()[0], vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn kinks_have_opposite_signs() {
        let pos = LinkDiagram::new(vec![[1, 1, 2, 2]], 0).unwrap();
        let neg = LinkDiagram::new(vec![[1, 2, 2, 1]], 0).unwrap();
        assert_eq!(pos.writhe(), 1);
        assert_eq!(neg.writhe(), -1);
        assert_eq!(pos.component_count(), 1);
    }

    #[test]
    fn label_counts_are_checked() {
        let err = LinkDiagram::new(vec![[1, 1, 2, 2], [1, 3, 3, 4]], 0).unwrap_err();
        assert_eq!(err, DiagramError::LabelCount { arc: 1, count: 3 });
        let err = LinkDiagram::new(vec![[1, 4, 2, 3]], 0).unwrap_err();
        assert!(matches!(err, DiagramError::LabelCount { count: 1, .. }));
    }

    #[test]
    fn under_strand_contradiction() {
        // arc 1 incoming under at both crossings
        let err = LinkDiagram::new(vec![[1, 2, 3, 4], [1, 4, 3, 2]], 0).unwrap_err();
        assert!(matches!(err, DiagramError::Orientation(_)));
    }

    #[test]
    fn hopf_link_components() {
        let d = LinkDiagram::new(vec![[4, 1, 3, 2], [2, 3, 1, 4]], 0).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.writhe().abs(), 2);
    }

    #[test]
    fn canonical_relabel_is_stable() {
        let d = trefoil().permute_crossings(&[2, 0, 1]);
        let r = d.canonical_relabel();
        assert_eq!(r.writhe(), d.writhe());
        assert_eq!(r.canonical_relabel(), r);
        let again = LinkDiagram::new(r.tuples(), 0).unwrap();
        assert_eq!(again, r);
    }
}
