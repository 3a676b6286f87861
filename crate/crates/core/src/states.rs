//! Kauffman states, enhanced states and the incidence rule.
//!
//! A state is a bit mask over crossings in input order, bit set = B. At
//! `X[i,j,k,l]` the A-smoothing joins `i`-`j` and `k`-`l`, the B-smoothing
//! `i`-`l` and `j`-`k`. Circles of a state are numbered by their smallest
//! arc index; crossingless components come last.
//!
//! An enhanced state stores the set of circles carrying `-1`. Gradings are
//! `a = #A - #B` and `b = a + 2 tau` with `tau` the sum of circle signs.
//!
//! Incidence from `e` to `e'` changes one A-marker `y` into B, so `a` drops
//! by 2 and `tau` must grow by 1. At a merge the signs `(-,-)` go to `-` and
//! `(+,-)`, `(-,+)` go to `+`; at a split `-` goes to `(+,-)` or `(-,+)` and
//! `+` goes to `(+,+)`. Untouched circles keep their signs. The coefficient is
//! `(-1)^k` with `k` the number of B-markers of `e` after `y`.

use thiserror::Error;

use crate::diagram::LinkDiagram;

pub const DEFAULT_CAP: usize = 16;
/// Hard limit from the 64-bit state masks.
pub const MAX_CROSSINGS: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },
}

/// Circle structure of every Kauffman state of one diagram.
pub struct StateSpace {
    n: usize,
    narcs: usize,
    loops: usize,
    xs: Vec<[usize; 4]>,
    circle: Vec<u8>,
    count: Vec<u8>,
}

impl StateSpace {
    pub fn new(d: &LinkDiagram, cap: usize) -> Result<Self, StateError> {
        let n = d.crossing_count();
        if n > cap.min(MAX_CROSSINGS) {
            return Err(StateError::CapExceeded { crossings: n, cap: cap.min(MAX_CROSSINGS) });
        }
        let arcs: Vec<u32> = d.arcs().collect();
        let narcs = arcs.len();
        assert!(narcs + d.unknots() < 256, "too many circles for the state tables");
        let xs: Vec<[usize; 4]> = d
            .crossings()
            .iter()
            .map(|x| x.pd().map(|a| arcs.binary_search(&a).expect("arc")))
            .collect();
        let loops = d.unknots();
        let chunk = 1usize << n.min(12);
        let blocks = crate::par::map_range((1usize << n).div_ceil(chunk), |blk| {
            let mut ids = Vec::with_capacity(chunk * narcs);
            let mut counts = Vec::with_capacity(chunk);
            let mut parent = vec![0usize; narcs];
            for s in blk * chunk..((blk + 1) * chunk).min(1 << n) {
                let c = label_circles(&xs, s as u64, &mut parent, &mut ids);
                counts.push((c + loops) as u8);
            }
            (ids, counts)
        });
        let mut circle = Vec::with_capacity((1 << n) * narcs);
        let mut count = Vec::with_capacity(1 << n);
        for (ids, counts) in blocks {
            circle.extend(ids);
            count.extend(counts);
        }
        Ok(StateSpace { n, narcs, loops, xs, circle, count })
    }

    pub fn crossing_count(&self) -> usize {
        self.n
    }

    pub fn state_count(&self) -> u64 {
        1 << self.n
    }

    pub fn circle_count(&self, s: u64) -> usize {
        self.count[s as usize] as usize
    }

    /// Circle of state `s` containing arc index `a`.
    pub fn circle_of(&self, s: u64, a: usize) -> usize {
        self.circle[s as usize * self.narcs + a] as usize
    }

    /// Arc indices `[i, j, k, l]` at crossing `c`.
    pub fn crossing(&self, c: usize) -> [usize; 4] {
        self.xs[c]
    }

    pub fn sigma(&self, s: u64) -> i32 {
        self.n as i32 - 2 * s.count_ones() as i32
    }

    pub fn state(&self, s: u64) -> KauffmanState {
        KauffmanState {
            markers: s,
            sigma: self.sigma(s),
            circle_count: self.circle_count(s),
            circle_id: (0..self.narcs).map(|a| self.circle_of(s, a)).collect(),
        }
    }

    /// Effect of switching crossing `y` from A to B in state `s`.
    pub fn transition(&self, s: u64, y: usize) -> Transition {
        debug_assert_eq!(s >> y & 1, 0);
        let t = s | 1 << y;
        let x = self.xs[y];
        let (p, q) = (self.circle_of(s, x[0]), self.circle_of(s, x[2]));
        // circles of t other than those at y, matched with circles of s
        let ct = self.circle_count(t);
        let mut from = vec![usize::MAX; ct];
        for a in 0..self.narcs {
            from[self.circle_of(t, a)] = self.circle_of(s, a);
        }
        for k in 0..self.loops {
            from[ct - self.loops + k] = self.circle_count(s) - self.loops + k;
        }
        if p != q {
            let z = self.circle_of(t, x[0]);
            from[z] = usize::MAX;
            Transition::Merge { target: t, a: p, b: q, into: z, from }
        } else {
            let (u, v) = (self.circle_of(t, x[0]), self.circle_of(t, x[2]));
            from[u] = usize::MAX;
            from[v] = usize::MAX;
            Transition::Split { target: t, circle: p, a: u, b: v, from }
        }
    }

    /// Enhanced states with quantum grading `b`, grouped by `a` (descending),
    /// each group sorted by state bits, then sign bits.
    pub fn enhanced_in_grading(&self, b: i32) -> Vec<(i32, Vec<EnhancedState>)> {
        let mut groups: std::collections::BTreeMap<i32, Vec<EnhancedState>> = Default::default();
        for s in 0..self.state_count() {
            let c = self.circle_count(s);
            let sigma = self.sigma(s);
            if (b - sigma) % 2 != 0 {
                continue;
            }
            let tau = (b - sigma) / 2;
            if tau.abs() > c as i32 || (c as i32 - tau) % 2 != 0 {
                continue;
            }
            let minus = (c as i32 - tau) as u32 / 2;
            let g = groups.entry(sigma).or_default();
            for m in subsets(c as u32, minus) {
                g.push(EnhancedState { markers: s, minus: m, circles: c as u32, sigma });
            }
        }
        groups.into_iter().rev().collect()
    }

    /// Quantum gradings that occur, ascending.
    pub fn quantum_gradings(&self) -> Vec<i32> {
        let mut set = std::collections::BTreeSet::new();
        for s in 0..self.state_count() {
            let c = self.circle_count(s) as i32;
            let sigma = self.sigma(s);
            for tau in (-c..=c).step_by(2) {
                set.insert(sigma + 2 * tau);
            }
        }
        set.into_iter().collect()
    }
}

/// Union-find over arc indices; appends circle ids (by smallest arc) to `ids`.
fn label_circles(xs: &[[usize; 4]], s: u64, parent: &mut [usize], ids: &mut Vec<u8>) -> usize {
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i;
    }
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (c, x) in xs.iter().enumerate() {
        let pairs = if s >> c & 1 == 0 { [(x[0], x[1]), (x[2], x[3])] } else { [(x[0], x[3]), (x[1], x[2])] };
        for (a, b) in pairs {
            let (ra, rb) = (root(parent, a), root(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut map = vec![u8::MAX; parent.len()];
    let mut next = 0u8;
    for a in 0..parent.len() {
        let r = root(parent, a);
        if map[r] == u8::MAX {
            map[r] = next;
            next += 1;
        }
        ids.push(map[r]);
    }
    next as usize
}

/// All `k`-subsets of `0..c` as bit masks in increasing numeric order.
pub fn subsets(c: u32, k: u32) -> impl Iterator<Item = u64> {
    let first: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let limit: u64 = 1u64 << c;
    std::iter::successors(Some(first), move |&x| {
        if x == 0 {
            return None;
        }
        // next mask with the same popcount
        let t = x | (x - 1);
        let next = (t + 1) | (((!t & (t + 1)) - 1) >> (x.trailing_zeros() + 1));
        (next < limit).then_some(next)
    })
    .take_while(move |&x| x < limit || (c == 0 && x == 0))
}

/// Rank of a `k`-subset mask among all `k`-subsets in numeric order.
pub fn subset_rank(mask: u64) -> u64 {
    let mut r = 0;
    let mut i = 0;
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros() as u64;
        i += 1;
        r += binom(p, i);
        m &= m - 1;
    }
    r
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// How one A-to-B switch changes the circles.
#[derive(Clone, Debug)]
pub enum Transition {
    /// Circles `a` and `b` of the source become circle `into` of the target.
    Merge { target: u64, a: usize, b: usize, into: usize, from: Vec<usize> },
    /// Circle `circle` of the source becomes circles `a` and `b`.
    Split { target: u64, circle: usize, a: usize, b: usize, from: Vec<usize> },
}

impl Transition {
    /// Minus-masks of the target states incident to `minus` in the source.
    pub fn targets(&self, minus: u64) -> Vec<u64> {
        let (Transition::Merge { from, .. } | Transition::Split { from, .. }) = self;
        let mut base = 0u64;
        for (k, &f) in from.iter().enumerate() {
            if f != usize::MAX && minus >> f & 1 == 1 {
                base |= 1 << k;
            }
        }
        match *self {
            Transition::Merge { a, b, into, .. } => {
                match (minus >> a & 1 == 1, minus >> b & 1 == 1) {
                    (true, true) => vec![base | 1 << into],
                    (true, false) | (false, true) => vec![base],
                    (false, false) => vec![],
                }
            }
            Transition::Split { circle, a, b, .. } => {
                if minus >> circle & 1 == 1 {
                    vec![base | 1 << b, base | 1 << a]
                } else {
                    vec![base]
                }
            }
        }
    }
}

/// Marker assignment with its circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KauffmanState {
    pub markers: u64,
    pub sigma: i32,
    pub circle_count: usize,
    /// Circle of each arc, arcs in increasing label order.
    pub circle_id: Vec<usize>,
}

/// A state together with a sign per circle (`minus` holds the `-1` circles).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub markers: u64,
    pub minus: u64,
    pub circles: u32,
    pub sigma: i32,
}

impl EnhancedState {
    pub fn tau(&self) -> i32 {
        self.circles as i32 - 2 * self.minus.count_ones() as i32
    }
}

/// `(a, b)` gradings.
pub fn gradings(e: &EnhancedState) -> (i32, i32) {
    (e.sigma, e.sigma + 2 * e.tau())
}

/// Smooths `d` according to `markers` (bit set = B).
pub fn smooth(d: &LinkDiagram, markers: u64) -> KauffmanState {
    let arcs: Vec<u32> = d.arcs().collect();
    let xs: Vec<[usize; 4]> = d
        .crossings()
        .iter()
        .map(|x| x.pd().map(|a| arcs.binary_search(&a).expect("arc")))
        .collect();
    let mut parent = vec![0; arcs.len()];
    let mut ids = Vec::with_capacity(arcs.len());
    let c = label_circles(&xs, markers, &mut parent, &mut ids);
    let n = d.crossing_count() as i32;
    KauffmanState {
        markers,
        sigma: n - 2 * markers.count_ones() as i32,
        circle_count: c + d.unknots(),
        circle_id: ids.into_iter().map(usize::from).collect(),
    }
}

/// Circle count found by walking the smoothed diagram end to end.
pub fn count_circles_by_walk(d: &LinkDiagram, markers: u64) -> usize {
    let xs = d.crossings();
    let partner = |c: usize, s: usize| -> usize {
        let b = markers >> c & 1 == 1;
        match (b, s) {
            (false, 0) => 1,
            (false, 1) => 0,
            (false, 2) => 3,
            (false, _) => 2,
            (true, 0) => 3,
            (true, 3) => 0,
            (true, 1) => 2,
            (true, _) => 1,
        }
    };
    let mut seen = vec![[false; 4]; xs.len()];
    let mut circles = d.unknots();
    for c0 in 0..xs.len() {
        for s0 in 0..4 {
            if seen[c0][s0] {
                continue;
            }
            circles += 1;
            let (mut c, mut s) = (c0, s0);
            while !seen[c][s] {
                seen[c][s] = true;
                let s2 = partner(c, s);
                seen[c][s2] = true;
                // leave through slot s2 along its arc to the other end
                let a = xs[c].pd()[s2];
                let (h, t) = (d.head(a).expect("arc"), d.tail(a).expect("arc"));
                (c, s) = if h == (c, s2) { t } else { h };
            }
        }
    }
    circles
}

/// Every enhanced state, grouped by quantum grading `b` (ascending).
pub fn enumerate_enhanced(
    d: &LinkDiagram,
    cap: usize,
) -> Result<Vec<(i32, Vec<EnhancedState>)>, StateError> {
    let space = StateSpace::new(d, cap)?;
    Ok(space
        .quantum_gradings()
        .into_iter()
        .map(|b| (b, space.enhanced_in_grading(b).into_iter().flat_map(|(_, v)| v).collect()))
        .collect())
}

/// Incidence number `(e : e2)`, zero when the states are not incident.
pub fn adjacency_sign(space: &StateSpace, e: &EnhancedState, e2: &EnhancedState) -> i32 {
    let diff = e.markers ^ e2.markers;
    if diff.count_ones() != 1 || e2.markers & diff == 0 || gradings(e).1 != gradings(e2).1 {
        return 0;
    }
    let y = diff.trailing_zeros() as usize;
    if !space.transition(e.markers, y).targets(e.minus).contains(&e2.minus) {
        return 0;
    }
    let later = (e.markers >> y >> 1).count_ones();
    if later % 2 == 0 {
        1
    } else {
        -1
    }
}
