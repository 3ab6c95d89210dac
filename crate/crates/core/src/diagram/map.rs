use std::collections::VecDeque;

use super::{AnnularDiagram, Corner, CrossingId, EdgeId, External, HalfEdge, Violation};

/// A face of the map: a cycle of corners traversed with the face on the
/// right. Arriving at slot `i` the boundary continues out of slot `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<Corner>,
    /// Parity of the cut-arc intersections of the boundary.
    pub parity: bool,
    pub component: usize,
}

impl Face {
    /// Edges along the boundary in traversal order.
    pub fn boundary_edges<'a>(&'a self, d: &'a AnnularDiagram) -> impl Iterator<Item = EdgeId> + 'a {
        self.corners.iter().map(move |c| d.edge_at(HalfEdge::new(c.crossing, c.index + 1)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A link component. For components with crossings, `passages` lists the
/// slot through which the walk enters each crossing it meets, in order, and
/// `edges[i]` is the edge travelled just before `passages[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrandWalk {
    Closed { edges: Vec<EdgeId>, passages: Vec<HalfEdge> },
    FreeLoop(usize),
}

impl StrandWalk {
    pub fn parity(&self, d: &AnnularDiagram) -> bool {
        match self {
            StrandWalk::Closed { edges, .. } => edges.iter().fold(false, |a, &e| a ^ d.edges()[e].parity),
            StrandWalk::FreeLoop(i) => d.free_loops()[*i].parity,
        }
    }
}

/// Derived map structure of a valid diagram.
#[derive(Clone, Debug)]
pub struct Topology {
    ends: Vec<[HalfEdge; 2]>,
    corner_face: Vec<[usize; 4]>,
    faces: Vec<Face>,
    crossing_component: Vec<usize>,
    component_count: usize,
    external_faces: [Option<usize>; 2],
}

impl Topology {
    /// Assumes every edge has exactly two ends.
    pub(super) fn build_unchecked(d: &AnnularDiagram) -> Self {
        let n = d.crossing_count();
        let mut ends_acc: Vec<Vec<HalfEdge>> = vec![Vec::with_capacity(2); d.edges().len()];
        for (c, x) in d.crossings().iter().enumerate() {
            for (s, &e) in x.slots.iter().enumerate() {
                ends_acc[e].push(HalfEdge::new(c, s as u8));
            }
        }
        let ends: Vec<[HalfEdge; 2]> = ends_acc.into_iter().map(|v| [v[0], v[1]]).collect();

        // components via union-find over crossings
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for [a, b] in &ends {
            let (ra, rb) = (find(&mut parent, a.crossing), find(&mut parent, b.crossing));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut crossing_component = vec![0; n];
        let mut component_count = 0;
        for (c, comp) in crossing_component.iter_mut().enumerate() {
            let r = find(&mut parent, c);
            if label[r] == usize::MAX {
                label[r] = component_count;
                component_count += 1;
            }
            *comp = label[r];
        }

        let mut topo = Topology {
            ends,
            corner_face: vec![[usize::MAX; 4]; n],
            faces: Vec::new(),
            crossing_component,
            component_count,
            external_faces: [None, None],
        };
        for c in 0..n {
            for k in 0..4u8 {
                if topo.corner_face[c][k as usize] != usize::MAX {
                    continue;
                }
                let id = topo.faces.len();
                let start = Corner::new(c, k);
                let mut corners = Vec::new();
                let mut parity = false;
                let mut cur = start;
                loop {
                    topo.corner_face[cur.crossing][cur.index as usize] = id;
                    corners.push(cur);
                    let out = HalfEdge::new(cur.crossing, cur.index + 1);
                    parity ^= d.edges()[d.edge_at(out)].parity;
                    let arrive = topo.other_end(d, out);
                    cur = Corner::new(arrive.crossing, arrive.slot);
                    if cur == start {
                        break;
                    }
                }
                let component = topo.crossing_component[c];
                topo.faces.push(Face { corners, parity, component });
            }
        }
        for (i, x) in d.external().iter().enumerate() {
            if let External::Corner(c) = x {
                topo.external_faces[i] = Some(topo.face_of(*c));
            }
        }
        topo
    }

    pub(super) fn map_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.component_count;
        let mut v = vec![0usize; k];
        let mut e = vec![0usize; k];
        let mut f = vec![0usize; k];
        for &c in &self.crossing_component {
            v[c] += 1;
        }
        for ends in &self.ends {
            e[self.crossing_component[ends[0].crossing]] += 1;
        }
        for face in &self.faces {
            f[face.component] += 1;
        }
        for i in 0..k {
            if v[i] as i64 - e[i] as i64 + f[i] as i64 != 2 {
                out.push(Violation::EulerCharacteristic { component: i, vertices: v[i], edges: e[i], faces: f[i] });
            }
        }
        if !out.is_empty() {
            return out;
        }

        let ext = self.external_faces;
        for comp in 0..k {
            let odd: Vec<usize> = self.face_ids_in(comp).filter(|&i| self.faces[i].parity).collect();
            let marks: Vec<usize> =
                ext.iter().flatten().copied().filter(|&fid| self.faces[fid].component == comp).collect();
            match marks.as_slice() {
                [a, b] => {
                    for fid in self.face_ids_in(comp) {
                        let expected_odd = a != b && (fid == *a || fid == *b);
                        if self.faces[fid].parity != expected_odd {
                            out.push(Violation::FaceParity { face: fid, expected_odd });
                        }
                    }
                }
                [a] => {
                    let ok = odd.is_empty() || (odd.len() == 2 && odd.contains(a));
                    if !ok {
                        out.push(Violation::ComponentParity { component: comp, odd_faces: odd.len() });
                    }
                }
                _ => {
                    if !odd.is_empty() && odd.len() != 2 {
                        out.push(Violation::ComponentParity { component: comp, odd_faces: odd.len() });
                    }
                }
            }
        }
        out
    }

    fn face_ids_in(&self, comp: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&i| self.faces[i].component == comp)
    }

    pub fn ends(&self, e: EdgeId) -> [HalfEdge; 2] {
        self.ends[e]
    }

    pub fn other_end(&self, d: &AnnularDiagram, h: HalfEdge) -> HalfEdge {
        let [a, b] = self.ends[d.edge_at(h)];
        if a == h {
            b
        } else {
            a
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, c: Corner) -> usize {
        self.corner_face[c.crossing][c.index as usize]
    }

    /// Faces on the two sides of an edge: `[right of ends[0] -> ends[1], left]`.
    pub fn edge_sides(&self, e: EdgeId) -> [usize; 2] {
        let h = self.ends[e][0];
        [self.face_of(Corner::new(h.crossing, h.slot + 3)), self.face_of(Corner::new(h.crossing, h.slot))]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn crossing_component(&self, c: CrossingId) -> usize {
        self.crossing_component[c]
    }

    /// Faces containing the two external designators (`None` for sentinels).
    pub fn external_faces(&self) -> [Option<usize>; 2] {
        self.external_faces
    }

    /// Link components: closed walks that enter a crossing at slot `i` and
    /// leave at slot `i + 2`, followed by free loops.
    pub fn strand_walks(&self, d: &AnnularDiagram) -> Vec<StrandWalk> {
        let mut seen = vec![false; self.ends.len()];
        let mut out = Vec::new();
        for e0 in 0..self.ends.len() {
            if seen[e0] {
                continue;
            }
            let start = self.ends[e0][0];
            let mut leave = start;
            let mut edges = Vec::new();
            let mut passages = Vec::new();
            loop {
                let e = d.edge_at(leave);
                seen[e] = true;
                edges.push(e);
                let arrive = self.other_end(d, leave);
                passages.push(arrive);
                leave = arrive.across();
                if leave == start {
                    break;
                }
            }
            out.push(StrandWalk::Closed { edges, passages });
        }
        out.extend((0..d.free_loops().len()).map(StrandWalk::FreeLoop));
        out
    }

    /// Face adjacency across edges, as `(face, face, edge)` triples.
    pub fn face_adjacency(&self) -> impl Iterator<Item = (usize, usize, EdgeId)> + '_ {
        (0..self.ends.len()).map(|e| {
            let [a, b] = self.edge_sides(e);
            (a, b, e)
        })
    }

    /// Two-colours the faces so that faces sharing an edge differ. Within the
    /// component of the first external designator that face is black; other
    /// components start black at their lowest-numbered face. `None` if the
    /// face graph is not bipartite.
    pub fn chessboard(&self) -> Option<Vec<Color>> {
        let nf = self.faces.len();
        let mut adj = vec![Vec::new(); nf];
        for (a, b, _) in self.face_adjacency() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut color: Vec<Option<Color>> = vec![None; nf];
        let mut roots: Vec<usize> = self.external_faces[0].into_iter().collect();
        roots.extend(0..nf);
        for root in roots {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(Color::Black);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let cf = color[f].unwrap();
                for &g in &adj[f] {
                    match color[g] {
                        None => {
                            color[g] = Some(cf.flip());
                            queue.push_back(g);
                        }
                        Some(cg) if cg == cf => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Shortest dual path between two faces of one component, as the list of
    /// edges it crosses.
    pub fn dual_path(&self, from: usize, to: usize) -> Option<Vec<EdgeId>> {
        let nf = self.faces.len();
        let mut adj = vec![Vec::new(); nf];
        for (a, b, e) in self.face_adjacency() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut prev: Vec<Option<(usize, EdgeId)>> = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(f) = queue.pop_front() {
            if f == to {
                let mut path = Vec::new();
                let mut cur = to;
                while let Some((p, e)) = prev[cur] {
                    path.push(e);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &(g, e) in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    prev[g] = Some((f, e));
                    queue.push_back(g);
                }
            }
        }
        None
    }
}
