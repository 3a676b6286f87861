//! Assembles PD codes from planar pieces.
//!
//! Pieces are crossings (four segment ids in counterclockwise order, arms 0
//! and 2 forming the under-strand), boundary endpoints, and joins that glue
//! two segments into one arc. Orientation is found by walking strands;
//! labels are assigned consecutively along each strand.

use super::{Arc, DiagramError, LinkDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Att {
    Arm(usize, usize),
    End(usize),
}

#[derive(Default)]
pub(crate) struct PlanarBuilder {
    parent: Vec<usize>,
    crossings: Vec<[usize; 4]>,
    ends: Vec<usize>,
    arm_hints: Vec<(usize, usize)>,
    end_hints: Vec<(usize, bool)>,
}

/// Output of [`PlanarBuilder::build`].
pub(crate) struct Built {
    pub tuples: Vec<[Arc; 4]>,
    pub dirs: Vec<Option<bool>>,
    pub ends: Vec<Arc>,
    pub free_circles: usize,
}

impl Built {
    pub fn into_diagram(self, extra_unknots: usize) -> Result<LinkDiagram, DiagramError> {
        assert!(self.ends.is_empty(), "diagram pieces must be closed");
        let d =
            LinkDiagram::with_over_dirs(self.tuples, &self.dirs, self.free_circles + extra_unknots)?;
        Ok(d.canonical_relabel())
    }
}

impl PlanarBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn seg(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&self, mut s: usize) -> usize {
        while self.parent[s] != s {
            s = self.parent[s];
        }
        s
    }

    pub fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = rb.min(ra);
        }
    }

    pub fn crossing(&mut self, arms: [usize; 4]) -> usize {
        self.crossings.push(arms);
        self.crossings.len() - 1
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn end(&mut self, seg: usize) -> usize {
        self.ends.push(seg);
        self.ends.len() - 1
    }

    /// The strand enters crossing `c` through `arm`.
    pub fn hint_arm(&mut self, c: usize, arm: usize) {
        self.arm_hints.push((c, arm));
    }

    /// Whether the strand at boundary end `e` flows into the diagram.
    pub fn hint_end(&mut self, e: usize, incoming: bool) {
        self.end_hints.push((e, incoming));
    }

    pub fn build(self) -> Result<Built, DiagramError> {
        let nseg = self.parent.len();
        let roots: Vec<usize> = (0..nseg).map(|s| self.find(s)).collect();
        let mut atts: Vec<Vec<Att>> = vec![Vec::new(); nseg];
        for (c, arms) in self.crossings.iter().enumerate() {
            for (a, &s) in arms.iter().enumerate() {
                atts[roots[s]].push(Att::Arm(c, a));
            }
        }
        for (e, &s) in self.ends.iter().enumerate() {
            atts[roots[s]].push(Att::End(e));
        }
        let mut used = vec![false; nseg];
        for &r in &roots {
            used[r] = true;
        }
        let mut free_circles = 0;
        for r in 0..nseg {
            if !used[r] || roots[r] != r {
                continue;
            }
            match atts[r].len() {
                0 => free_circles += 1,
                2 => {}
                k => {
                    return Err(DiagramError::InvalidTangle(format!(
                        "segment class has {k} attachments"
                    )))
                }
            }
        }
        let root_of = |att: Att| -> usize {
            match att {
                Att::Arm(c, a) => roots[self.crossings[c][a]],
                Att::End(e) => roots[self.ends[e]],
            }
        };
        let other = |att: Att| -> Att {
            let r = root_of(att);
            let v = &atts[r];
            if v[0] == att {
                v[1]
            } else {
                v[0]
            }
        };

        let n = self.crossings.len();
        let mut inc: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        let mut end_in: Vec<Option<bool>> = vec![None; self.ends.len()];

        // Walks from `att` across its arc. `forward`: the strand flows away
        // from `att`.
        let walk = |start: Att,
                    forward: bool,
                    inc: &mut Vec<[Option<bool>; 4]>,
                    end_in: &mut Vec<Option<bool>>|
         -> Result<(), DiagramError> {
            let mut att = start;
            loop {
                match other(att) {
                    Att::End(e) => {
                        // flowing toward the end means leaving the diagram
                        let v = !forward;
                        if let Some(old) = end_in[e] {
                            if old != v {
                                return Err(DiagramError::Orientation(format!(
                                    "boundary end {e} has contradictory orientation"
                                )));
                            }
                        }
                        end_in[e] = Some(v);
                        return Ok(());
                    }
                    Att::Arm(c, a) => {
                        if let Some(old) = inc[c][a] {
                            if old != forward {
                                return Err(DiagramError::Orientation(format!(
                                    "strand through crossing {c} has contradictory orientation"
                                )));
                            }
                            return Ok(());
                        }
                        inc[c][a] = Some(forward);
                        inc[c][(a + 2) % 4] = Some(!forward);
                        att = Att::Arm(c, (a + 2) % 4);
                    }
                }
            }
        };

        for &(e, incoming) in &self.end_hints {
            if end_in[e].is_none() {
                end_in[e] = Some(incoming);
                walk(Att::End(e), incoming, &mut inc, &mut end_in)?;
            }
        }
        let mut arm_hints = self.arm_hints.clone();
        for e in 0..self.ends.len() {
            if end_in[e].is_none() {
                end_in[e] = Some(true);
                walk(Att::End(e), true, &mut inc, &mut end_in)?;
            }
        }
        arm_hints.extend((0..n).flat_map(|c| [(c, 0), (c, 1)]));
        for (c, a) in arm_hints {
            if inc[c][a].is_some() {
                continue;
            }
            inc[c][a] = Some(true);
            inc[c][(a + 2) % 4] = Some(false);
            walk(Att::Arm(c, (a + 2) % 4), true, &mut inc, &mut end_in)?;
            walk(Att::Arm(c, a), false, &mut inc, &mut end_in)?;
        }
        for (c, arms) in inc.iter().enumerate() {
            if arms.iter().any(Option::is_none) {
                return Err(DiagramError::Orientation(format!("crossing {c} left unoriented")));
            }
        }
        let inc: Vec<[bool; 4]> = inc.into_iter().map(|a| a.map(|v| v.unwrap())).collect();
        let end_in: Vec<bool> = end_in.into_iter().map(|v| v.unwrap()).collect();

        // labels along strands: open strands first, then closed ones
        let mut label = vec![0 as Arc; nseg];
        let mut next: Arc = 1;
        let mut assign = |r: usize, label: &mut Vec<Arc>| -> bool {
            if label[r] != 0 {
                return false;
            }
            label[r] = next;
            next += 1;
            true
        };
        let follow = |att: Att, label: &mut Vec<Arc>, assign: &mut dyn FnMut(usize, &mut Vec<Arc>) -> bool| {
            // att is where the strand leaves a crossing or enters at an end
            let mut att = att;
            loop {
                if !assign(root_of(att), label) {
                    return;
                }
                match other(att) {
                    Att::End(_) => return,
                    Att::Arm(c, a) => att = Att::Arm(c, (a + 2) % 4),
                }
            }
        };
        for e in 0..self.ends.len() {
            if end_in[e] {
                follow(Att::End(e), &mut label, &mut assign);
            }
        }
        for c in 0..n {
            for a in 0..4 {
                if !inc[c][a] {
                    follow(Att::Arm(c, a), &mut label, &mut assign);
                }
            }
        }

        let mut tuples = Vec::with_capacity(n);
        let mut dirs = Vec::with_capacity(n);
        for (c, arms) in self.crossings.iter().enumerate() {
            let l = arms.map(|s| label[roots[s]]);
            if inc[c][0] {
                tuples.push(l);
                dirs.push(Some(inc[c][3]));
            } else {
                tuples.push([l[2], l[3], l[0], l[1]]);
                dirs.push(Some(inc[c][1]));
            }
        }
        let ends = self.ends.iter().map(|&s| label[roots[s]]).collect();
        Ok(Built { tuples, dirs, ends, free_circles })
    }
}

/// A bottom-to-top sweep over a row of strand positions (0-based).
pub(crate) struct Sweep {
    pub cur: Vec<usize>,
}

impl Sweep {
    pub fn new(bottom: Vec<usize>) -> Self {
        Sweep { cur: bottom }
    }

    /// Opens a new arc occupying positions `p` and `p + 1`.
    pub fn cup(&mut self, b: &mut PlanarBuilder, p: usize) {
        let s = b.seg();
        self.cur.insert(p, s);
        self.cur.insert(p, s);
    }

    /// Closes positions `p` and `p + 1` together.
    pub fn cap(&mut self, b: &mut PlanarBuilder, p: usize) {
        b.join(self.cur[p], self.cur[p + 1]);
        self.cur.drain(p..p + 2);
    }

    /// Crossing between positions `p` and `p + 1`. With `sw_over` the strand
    /// running from lower-left to upper-right passes over; for two upward
    /// strands that is a positive crossing.
    pub fn cross(&mut self, b: &mut PlanarBuilder, p: usize, sw_over: bool) -> usize {
        let (sw, se) = (self.cur[p], self.cur[p + 1]);
        let (nw, ne) = (b.seg(), b.seg());
        let arms = if sw_over { [se, ne, nw, sw] } else { [sw, se, ne, nw] };
        self.cur[p] = nw;
        self.cur[p + 1] = ne;
        b.crossing(arms)
    }

    pub fn apply(&mut self, b: &mut PlanarBuilder, op: PlatOp) {
        match op {
            PlatOp::Cup(p) => self.cup(b, p),
            PlatOp::Cap(p) => self.cap(b, p),
            PlatOp::Cross(p, o) => {
                self.cross(b, p, o);
            }
        }
    }
}

/// One level of a plat-style word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlatOp {
    Cup(usize),
    Cap(usize),
    Cross(usize, bool),
}

impl PlatOp {
    /// Tokens: `+p`/`-p` crossing σ_p^{±1}, `u p` cup, `n p` cap; positions
    /// are 1-based.
    pub fn parse(tok: &str) -> Option<PlatOp> {
        let tok = tok.trim();
        let (head, rest) = tok.split_at(1);
        let p: usize = rest.trim().parse().ok()?;
        let p = p.checked_sub(1)?;
        match head {
            "+" => Some(PlatOp::Cross(p, true)),
            "-" => Some(PlatOp::Cross(p, false)),
            "u" => Some(PlatOp::Cup(p)),
            "n" => Some(PlatOp::Cap(p)),
            _ => None,
        }
    }
}

/// Closure of a braid word (`±p`, 1-based generators) on `strands` strands.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram, DiagramError> {
    let mut b = PlanarBuilder::new();
    let bottom: Vec<usize> = (0..strands).map(|_| b.seg()).collect();
    let mut sw = Sweep::new(bottom.clone());
    for &g in word {
        let p = g.unsigned_abs() as usize;
        assert!(p >= 1 && p < strands, "generator out of range");
        let c = sw.cross(&mut b, p - 1, g > 0);
        // both strands run upward
        b.hint_arm(c, 0);
        b.hint_arm(c, if g > 0 { 3 } else { 1 });
    }
    for (t, s) in sw.cur.clone().into_iter().zip(bottom) {
        b.join(t, s);
    }
    b.build()?.into_diagram(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_trefoil() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 3);
        let r = LinkDiagram::new(d.tuples(), 0).unwrap();
        assert_eq!(r, d);
    }

    #[test]
    fn hopf_and_unlink() {
        let h = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!((h.component_count(), h.writhe()), (2, 2));
        let u = braid_closure(3, &[1]).unwrap();
        assert_eq!((u.component_count(), u.unknots()), (2, 1));
    }

    #[test]
    fn over_only_component() {
        // the first strand passes over at every crossing
        let d = braid_closure(2, &[-1, 1, -1, 1]).unwrap();
        assert_eq!((d.component_count(), d.writhe()), (2, 0));
        let again = crate::diagram::parse_pd(&crate::diagram::to_pd_string(&d)).unwrap();
        assert_eq!(again.component_count(), 2);
        let d = braid_closure(3, &[1, 1, -2, -2]).unwrap();
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn cup_then_cap_is_a_free_circle() {
        let mut b = PlanarBuilder::new();
        let mut sw = Sweep::new(vec![]);
        sw.cup(&mut b, 0);
        sw.cap(&mut b, 0);
        let built = b.build().unwrap();
        assert_eq!(built.free_circles, 1);
    }

    #[test]
    fn plat_tokens() {
        assert_eq!(PlatOp::parse("+2"), Some(PlatOp::Cross(1, true)));
        assert_eq!(PlatOp::parse("u 1"), Some(PlatOp::Cup(0)));
        assert_eq!(PlatOp::parse("n3"), Some(PlatOp::Cap(2)));
        assert_eq!(PlatOp::parse("x1"), None);
    }
}
