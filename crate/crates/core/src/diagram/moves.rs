//! Local moves used to generate equivalent diagrams in tests: Reidemeister I
//! and II insertions, and the full twist on braid-closure form.

use super::{AnnularDiagram, BraidWord, Corner, Crossing, DiagramError, Edge, External, HalfEdge, Strand};

/// Sign of an R1 kink. A positive kink multiplies the bracket by `-A^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkSign {
    Positive,
    Negative,
}

/// Side of a directed edge (from its first end to its second).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct R2Options {
    /// Face (by any of its corners) in which to push the finger; the first
    /// common face in trace order when absent.
    pub face: Option<Corner>,
    /// When set, the second edge passes over the finger instead of under it.
    pub second_over: bool,
}

impl AnnularDiagram {
    fn push_edge(&mut self, parity: bool) -> usize {
        self.edges.push(Edge { parity });
        self.edges.len() - 1
    }

    fn set_slot(&mut self, h: HalfEdge, e: usize) {
        self.crossings[h.crossing].slots[h.slot as usize] = e;
    }

    /// Inserts a kink on a strand segment.
    pub fn insert_r1(&self, at: Strand, sign: KinkSign, side: Side) -> Result<Self, DiagramError> {
        // (loop slots, entry slot, exit slot): the strand enters at `entry`,
        // runs around the loop and leaves at `exit`.
        let (lp, entry, exit) = match (sign, side) {
            (KinkSign::Positive, Side::Right) => ([1u8, 2], 0u8, 3u8),
            (KinkSign::Positive, Side::Left) => ([1, 2], 3, 0),
            (KinkSign::Negative, Side::Left) => ([0, 1], 2, 3),
            (KinkSign::Negative, Side::Right) => ([0, 1], 3, 2),
        };
        let mut d = self.clone();
        let k = d.crossings.len();
        d.crossings.push(Crossing { slots: [usize::MAX; 4] });
        let kink = d.push_edge(false);
        d.set_slot(HalfEdge::new(k, lp[0]), kink);
        d.set_slot(HalfEdge::new(k, lp[1]), kink);
        match at {
            Strand::Edge(e) => {
                if e >= self.edges.len() {
                    return Err(DiagramError::UnknownEdge(e));
                }
                let topo = self.topology()?;
                let [a, b] = topo.ends(e);
                // `e` keeps its id and parity on the first half
                d.set_slot(HalfEdge::new(k, entry), e);
                let rest = d.push_edge(false);
                d.set_slot(HalfEdge::new(k, exit), rest);
                d.set_slot(b, rest);
                d.set_slot(a, e);
            }
            Strand::FreeLoop(i) => {
                if i >= self.free_loops.len() {
                    return Err(DiagramError::UnknownFreeLoop(i));
                }
                let parity = d.free_loops.remove(i).parity;
                let body = d.push_edge(parity);
                d.set_slot(HalfEdge::new(k, entry), body);
                d.set_slot(HalfEdge::new(k, exit), body);
                if self.crossings.is_empty() {
                    let corner_between = |x: u8, y: u8| if (x + 1) % 4 == y { x } else { y };
                    let kink_lobe = corner_between(lp[0], lp[1]);
                    let body_lobe = corner_between(entry.min(exit), entry.max(exit));
                    let outside = Corner::new(k, kink_lobe + 1);
                    let inner = if parity { Corner::new(k, body_lobe) } else { outside };
                    d.external = [External::Corner(inner), External::Corner(outside)];
                }
            }
        }
        Ok(d)
    }

    /// Pushes a finger of `e1` across `e2` inside a face they both bound,
    /// creating a bigon. By default the finger passes over `e2`.
    ///
    /// Requires the crossings to form one connected piece. If the face carried
    /// an external designator, the puncture stays in the part of the split face
    /// that holds the designator corner; parities are then rebuilt from the
    /// designators.
    pub fn insert_r2(&self, e1: usize, e2: usize, opts: R2Options) -> Result<Self, DiagramError> {
        for e in [e1, e2] {
            if e >= self.edges.len() {
                return Err(DiagramError::UnknownEdge(e));
            }
        }
        if e1 == e2 {
            return Err(DiagramError::SameEdge);
        }
        let topo = self.topology()?;
        if topo.component_count() != 1 {
            return Err(DiagramError::Disconnected);
        }
        let wanted = match opts.face {
            Some(c) if c.crossing >= self.crossing_count() => return Err(DiagramError::UnknownCorner(c)),
            Some(c) => Some(topo.face_of(c)),
            None => None,
        };
        // directed occurrences (tail, head) with the face on the right
        let mut found = None;
        for (fid, face) in topo.faces().iter().enumerate() {
            if wanted.is_some_and(|w| w != fid) {
                continue;
            }
            let mut d1 = None;
            let mut d2 = None;
            for c in &face.corners {
                let tail = HalfEdge::new(c.crossing, c.index + 1);
                let e = self.edge_at(tail);
                let occ = (tail, topo.other_end(self, tail));
                if e == e1 && d1.is_none() {
                    d1 = Some(occ);
                } else if e == e2 && d2.is_none() {
                    d2 = Some(occ);
                }
            }
            if let (Some(a), Some(b)) = (d1, d2) {
                found = Some((a, b));
                break;
            }
        }
        let ((t1, h1), (t2, h2)) = found.ok_or(DiagramError::NoCommonFace(e1, e2))?;

        let mut d = self.clone();
        let (x, y) = (d.crossings.len(), d.crossings.len() + 1);
        d.crossings.push(Crossing { slots: [usize::MAX; 4] });
        d.crossings.push(Crossing { slots: [usize::MAX; 4] });
        // compass slots, east first, counterclockwise
        let (east, north, west, south) = if opts.second_over { (3u8, 0u8, 1u8, 2u8) } else { (0, 1, 2, 3) };
        let a1 = e1;
        let b1 = d.push_edge(false);
        let c1 = d.push_edge(false);
        let a2 = e2;
        let b2 = d.push_edge(false);
        let c2 = d.push_edge(false);
        d.set_slot(t1, a1);
        d.set_slot(HalfEdge::new(x, south), a1);
        d.set_slot(HalfEdge::new(x, north), b1);
        d.set_slot(HalfEdge::new(y, north), b1);
        d.set_slot(HalfEdge::new(y, south), c1);
        d.set_slot(h1, c1);
        d.set_slot(t2, a2);
        d.set_slot(HalfEdge::new(y, west), a2);
        d.set_slot(HalfEdge::new(y, east), b2);
        d.set_slot(HalfEdge::new(x, west), b2);
        d.set_slot(HalfEdge::new(x, east), c2);
        d.set_slot(h2, c2);

        match self.external {
            [External::Corner(a), External::Corner(b)] => {
                let same = topo.face_of(a) == topo.face_of(b);
                let b = if same { a } else { b };
                d.reembed(a, b).map(|mut r| {
                    r.meta = self.meta.clone();
                    r
                })
            }
            _ => Ok(d),
        }
    }
}

/// Appends a full twist `Δ²` (or its inverse) on all strands.
pub fn apply_full_twist(word: &BraidWord, positive: bool) -> BraidWord {
    let m = word.strands as i32;
    let mut letters = word.letters.clone();
    for _ in 0..m {
        if positive {
            letters.extend(1..m);
        } else {
            letters.extend((1..m).rev().map(|g| -g));
        }
    }
    BraidWord { strands: word.strands, letters }
}
