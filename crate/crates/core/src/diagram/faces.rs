//! Faces of the planar 4-valent graph underlying a PD code.
//!
//! A corner `(c, p)` is the region between slot `p` and slot `p + 1` at
//! crossing `c`. Walking a face keeps it on the right: leave the corner along
//! slot `p + 1`, arrive at the other end `(c', q)` of that arc, and the face
//! continues at corner `(c', q)`.

use super::{Arc, LinkDiagram};

/// One arc traversed while walking a face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceEdge {
    pub arc: Arc,
    /// Occurrence (crossing, slot) the walk leaves from.
    pub from: (usize, usize),
    /// Occurrence the walk arrives at.
    pub to: (usize, usize),
}

pub type Face = Vec<FaceEdge>;

pub fn faces(d: &LinkDiagram) -> Vec<Face> {
    let xs = d.crossings();
    let n = xs.len();
    let other_end = |c: usize, s: usize| -> (usize, usize) {
        let a = xs[c].pd()[s];
        let h = d.head(a).expect("arc has a head");
        let t = d.tail(a).expect("arc has a tail");
        if h == (c, s) {
            t
        } else {
            h
        }
    };
    let mut seen = vec![[false; 4]; n];
    let mut out = Vec::new();
    for c0 in 0..n {
        for p0 in 0..4 {
            if seen[c0][p0] {
                continue;
            }
            let mut face = Vec::new();
            let (mut c, mut p) = (c0, p0);
            while !seen[c][p] {
                seen[c][p] = true;
                let s = (p + 1) % 4;
                let to = other_end(c, s);
                face.push(FaceEdge { arc: xs[c].pd()[s], from: (c, s), to });
                (c, p) = to;
            }
            out.push(face);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristic_of_trefoil() {
        let d = LinkDiagram::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap();
        let f = faces(&d);
        assert_eq!(f.len(), d.crossing_count() + 2);
        let total: usize = f.iter().map(Vec::len).sum();
        assert_eq!(total, 4 * d.crossing_count());
    }

    #[test]
    fn kink_faces() {
        let d = LinkDiagram::new(vec![[1, 1, 2, 2]], 0).unwrap();
        assert_eq!(faces(&d).len(), 3);
    }
}
