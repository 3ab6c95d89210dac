use std::collections::HashMap;
use std::fmt;

use super::{AnnularDiagram, Corner, Crossing, DiagramError, Edge, External, FreeLoop, HalfEdge};

/// A braid word: `k` stands for the generator `sigma_k`, `-k` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::NoStrands);
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(DiagramError::GeneratorOutOfRange { generator: g, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn mirror(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().map(|g| -g).collect() }
    }

    /// Permutation of strand positions induced by the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            pos.swap(i, i + 1);
        }
        pos
    }

    /// Number of cycles of the permutation: the component count of the closure.
    pub fn cycle_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid {}:", self.strands)?;
        for g in &self.letters {
            if *g < 0 {
                write!(f, " -s{}", -g)?;
            } else {
                write!(f, " s{g}")?;
            }
        }
        Ok(())
    }
}

impl AnnularDiagram {
    /// Closure of a braid around the core of the annulus.
    ///
    /// Position 1 is innermost. In the generator `sigma_i` the strand climbing
    /// from position `i` to `i + 1` passes over; each strand meets the cut arc
    /// once, on its closing edge. The external designators point at the
    /// innermost and outermost faces of the crossing part.
    pub fn from_braid_closure(word: &BraidWord) -> Self {
        let m = word.strands;
        let mut crossings = Vec::with_capacity(word.letters.len());
        let mut edges: Vec<Edge> = Vec::new();
        let mut slots: Vec<[usize; 4]> = Vec::new();
        let mut first_left: Vec<Option<HalfEdge>> = vec![None; m + 1];
        let mut last_right: Vec<Option<HalfEdge>> = vec![None; m + 1];
        let mut pending: Vec<(HalfEdge, HalfEdge, bool)> = Vec::new();
        let mut lo: Option<(i32, Corner)> = None;
        let mut hi = lo;

        for (t, &g) in word.letters.iter().enumerate() {
            let i = g.unsigned_abs() as usize;
            // slots of top-left, bottom-left, bottom-right, top-right
            let (tl, bl, br, tr) = if g > 0 { (0u8, 1u8, 2u8, 3u8) } else { (3, 0, 1, 2) };
            let bottom = Corner::new(t, bl);
            let top = Corner::new(t, tr);
            if lo.is_none_or(|(k, _)| (i as i32) < k) {
                lo = Some((i as i32, bottom));
            }
            if hi.is_none_or(|(k, _)| (i as i32) > k) {
                hi = Some((i as i32, top));
            }
            for (pos, left, right) in [(i, bl, br), (i + 1, tl, tr)] {
                let left = HalfEdge::new(t, left);
                match last_right[pos] {
                    Some(h) => pending.push((h, left, false)),
                    None => first_left[pos] = Some(left),
                }
                last_right[pos] = Some(HalfEdge::new(t, right));
            }
            slots.push([0; 4]);
        }
        let mut free = Vec::new();
        for pos in 1..=m {
            match (last_right[pos], first_left[pos]) {
                (Some(r), Some(l)) => pending.push((r, l, true)),
                _ => free.push(FreeLoop { parity: true }),
            }
        }
        for (a, b, parity) in pending {
            let id = edges.len();
            edges.push(Edge { parity });
            slots[a.crossing][a.slot as usize] = id;
            slots[b.crossing][b.slot as usize] = id;
        }
        crossings.extend(slots.into_iter().map(|s| Crossing { slots: s }));
        let external = match (lo, hi) {
            (Some((_, l)), Some((_, h))) => [External::Corner(l), External::Corner(h)],
            _ => [External::Unbounded; 2],
        };
        AnnularDiagram::from_parts(crossings, edges, free, external)
    }

    /// Embeds a planar-diagram code (`X[i,j,k,l]`, under-strand entering at
    /// `i`, labels counterclockwise) into the annulus inside a disk. All cut
    /// parities are zero and both external designators point at the outer
    /// face, which defaults to the face with the most corners.
    pub fn from_disk_pd(pd: &[[i64; 4]], outer: Option<Corner>) -> Result<Self, DiagramError> {
        if pd.is_empty() {
            return Ok(AnnularDiagram::empty());
        }
        let mut ids: HashMap<i64, usize> = HashMap::new();
        let mut uses: Vec<usize> = Vec::new();
        let mut crossings = Vec::with_capacity(pd.len());
        for x in pd {
            let mut slots = [0; 4];
            for (s, label) in x.iter().enumerate() {
                let next = ids.len();
                let id = *ids.entry(*label).or_insert(next);
                if id == uses.len() {
                    uses.push(0);
                }
                uses[id] += 1;
                slots[s] = id;
            }
            crossings.push(Crossing { slots });
        }
        if let Some((label, _)) = ids.iter().find(|(_, &id)| uses[id] != 2) {
            return Err(DiagramError::MalformedPd(format!("label {label} must appear exactly twice")));
        }
        let edges = vec![Edge { parity: false }; ids.len()];
        let placeholder = External::Corner(Corner::new(0, 0));
        let mut d = AnnularDiagram::from_parts(crossings, edges, vec![], [placeholder; 2]);
        let topo = d.topology().map_err(|e| DiagramError::MalformedPd(e.to_string()))?;
        if topo.component_count() != 1 {
            return Err(DiagramError::MalformedPd("the code describes a split diagram".into()));
        }
        let outer = match outer {
            Some(c) => {
                if c.crossing >= d.crossing_count() {
                    return Err(DiagramError::UnknownCorner(c));
                }
                c
            }
            None => {
                let best = topo
                    .faces()
                    .iter()
                    .enumerate()
                    .max_by_key(|(i, f)| (f.corners.len(), std::cmp::Reverse(*i)))
                    .map(|(_, f)| f.corners[0])
                    .expect("a diagram with crossings has faces");
                best
            }
        };
        d.external = [External::Corner(outer); 2];
        Ok(d)
    }

    /// Moves the two punctures of the annulus (the inner and outer boundary
    /// circles, seen on the sphere) into the faces of the given corners and
    /// recomputes every edge parity from a dual path between them.
    ///
    /// Only for diagrams whose crossings form a single connected piece; free
    /// loops keep their parities.
    pub fn reembed(&self, inner: Corner, outer: Corner) -> Result<Self, DiagramError> {
        for c in [inner, outer] {
            if c.crossing >= self.crossing_count() {
                return Err(DiagramError::UnknownCorner(c));
            }
        }
        let mut d = self.clone();
        d.external = [External::Corner(inner), External::Corner(outer)];
        // parities are rebuilt below; clear them first so the map builds
        for e in &mut d.edges {
            e.parity = false;
        }
        let structural = d.structural_violations();
        if !structural.is_empty() {
            return Err(DiagramError::Invalid(structural));
        }
        let topo = super::Topology::build_unchecked(&d);
        if topo.component_count() != 1 {
            return Err(DiagramError::Disconnected);
        }
        let (a, b) = (topo.face_of(inner), topo.face_of(outer));
        let path = topo.dual_path(a, b).ok_or(DiagramError::Disconnected)?;
        for e in path {
            d.edges[e].parity ^= true;
        }
        Ok(d)
    }

    /// Same diagram read as lying inside a disk: both punctures in the face of
    /// the given corner.
    pub fn in_disk_at(&self, corner: Corner) -> Result<Self, DiagramError> {
        self.reembed(corner, corner)
    }
}
