//! Diagram predicates: connectedness, alternation, position in the annulus,
//! crossing types, the constant-state circle counts and adequacy.

use serde::Serialize;

use crate::diagram::{AnnularDiagram, DiagramError, External, HalfEdge, StrandWalk, Topology};
use crate::skein::{KauffmanState, Resolver};

/// Crossing type with respect to the faces around it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingClass {
    Regular,
    /// A contractible loop through the crossing meets the diagram only there:
    /// a face that is not external (or, in a disk, any face) touches the
    /// crossing at two opposite corners along an even-parity boundary arc.
    Nugatory,
    /// The crossing touches both external faces, or one external face twice.
    ExternalAdjacent,
}

/// Why a crossing's class deserves a second look.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambiguity {
    /// Both the nugatory and the external-adjacent rule apply; classified as
    /// external-adjacent.
    Tie,
    /// A non-external face meets the crossing twice but the loop through it
    /// winds around the annulus, so neither rule applies.
    EssentialLoop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub classes: Vec<CrossingClass>,
    pub flagged: Vec<(usize, Ambiguity)>,
}

impl Classification {
    pub fn count(&self, class: CrossingClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// No nugatory and no external-adjacent crossings.
    pub fn is_simple(&self) -> bool {
        self.count(CrossingClass::Nugatory) == 0 && self.count(CrossingClass::ExternalAdjacent) == 0
    }

    /// No nugatory crossings and at most one external-adjacent one.
    pub fn is_quasi_simple(&self) -> bool {
        self.count(CrossingClass::Nugatory) == 0 && self.count(CrossingClass::ExternalAdjacent) <= 1
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("crossing classification needs a connected diagram")]
    NotConnected,
}

/// Sum of all cut parities mod 2.
pub fn z2_class(d: &AnnularDiagram) -> bool {
    d.z2_class()
}

/// One piece: the crossings form a single connected graph and there are no
/// free loops, or the diagram is a single free loop.
pub fn is_connected(d: &AnnularDiagram) -> Result<bool, DiagramError> {
    let topo = d.topology()?;
    Ok(topo.component_count() + d.free_loops().len() == 1)
}

/// Both external designators in one face and every cut parity zero.
pub fn is_in_disk(d: &AnnularDiagram) -> Result<bool, DiagramError> {
    let topo = d.topology()?;
    Ok(in_disk_with(d, &topo))
}

fn in_disk_with(d: &AnnularDiagram, topo: &Topology) -> bool {
    let [a, b] = topo.external_faces();
    let same = match d.external() {
        [External::Unbounded, External::Unbounded] => true,
        _ => a.is_some() && a == b,
    };
    same && d.edges().iter().all(|e| !e.parity) && d.free_loops().iter().all(|l| !l.parity)
}

/// Every strand walk meets over- and underpasses alternately.
pub fn is_alternating(d: &AnnularDiagram) -> Result<bool, DiagramError> {
    let topo = d.topology()?;
    Ok(topo.strand_walks(d).iter().all(|w| match w {
        StrandWalk::Closed { passages, .. } => {
            let len = passages.len();
            (0..len).all(|i| passages[i].is_over() != passages[(i + 1) % len].is_over())
        }
        StrandWalk::FreeLoop(_) => true,
    }))
}

/// Classifies every crossing. Only defined for connected diagrams.
pub fn classify_crossings(d: &AnnularDiagram) -> Result<Classification, AnalysisError> {
    if !is_connected(d)? {
        return Err(AnalysisError::NotConnected);
    }
    let topo = d.topology()?;
    let disk = in_disk_with(d, &topo);
    let external: Vec<usize> = topo.external_faces().iter().flatten().copied().collect();
    let mut classes = Vec::with_capacity(d.crossing_count());
    let mut flagged = Vec::new();
    for c in 0..d.crossing_count() {
        let face: Vec<usize> = (0..4u8).map(|k| topo.face_of(crate::diagram::Corner::new(c, k))).collect();
        // opposite corners in one face. The loop through that face and the
        // crossing bounds a disk when the boundary arc between the two
        // visits is even; inside an external face the loop can be rerouted
        // around the puncture, so it always bounds one.
        let mut bounds_disk = false;
        let mut essential_double = false;
        for k in 0..2 {
            if face[k] == face[k + 2] {
                if external.contains(&face[k]) || !arc_parity(d, &topo, c, k as u8) {
                    bounds_disk = true;
                } else {
                    essential_double = true;
                }
            }
        }
        let (class, note) = if disk {
            if bounds_disk {
                (CrossingClass::Nugatory, None)
            } else {
                (CrossingClass::Regular, None)
            }
        } else {
            let ext_hits = face.iter().filter(|f| external.contains(f)).count();
            let distinct_ext =
                external.len() == 2 && external[0] != external[1] && external.iter().all(|e| face.contains(e));
            let ext_adjacent = distinct_ext || ext_hits >= 2;
            match (ext_adjacent, bounds_disk) {
                (true, true) => (CrossingClass::ExternalAdjacent, Some(Ambiguity::Tie)),
                (true, false) => (CrossingClass::ExternalAdjacent, None),
                (false, true) => (CrossingClass::Nugatory, None),
                (false, false) if essential_double => (CrossingClass::Regular, Some(Ambiguity::EssentialLoop)),
                (false, false) => (CrossingClass::Regular, None),
            }
        };
        classes.push(class);
        if let Some(a) = note {
            flagged.push((c, a));
        }
    }
    Ok(Classification { classes, flagged })
}

/// Parity of the face boundary from corner `k` of crossing `c` to corner
/// `k + 2` (the two visits of the face). Closing this arc through the
/// crossing gives a loop meeting the diagram once; it is contractible in the
/// annulus iff the parity is even.
fn arc_parity(d: &AnnularDiagram, topo: &Topology, c: usize, k: u8) -> bool {
    let start = crate::diagram::Corner::new(c, k);
    let stop = crate::diagram::Corner::new(c, k + 2);
    let mut cur = start;
    let mut parity = false;
    loop {
        let out = HalfEdge::new(cur.crossing, cur.index + 1);
        parity ^= d.edges()[d.edge_at(out)].parity;
        let arrive = topo.other_end(d, out);
        cur = crate::diagram::Corner::new(arrive.crossing, arrive.slot);
        if cur == stop {
            return parity;
        }
        debug_assert!(cur != start, "corner {stop} not on the face of {start}");
    }
}

/// Circle counts of the all-`+1` and all-`-1` states, free loops included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StateCounts {
    pub s_plus: usize,
    pub p_plus: usize,
    pub s_minus: usize,
    pub p_minus: usize,
}

pub fn state_counts(d: &AnnularDiagram) -> Result<StateCounts, DiagramError> {
    let r = Resolver::new(d)?;
    Ok(state_counts_with(&r))
}

fn state_counts_with(r: &Resolver) -> StateCounts {
    let n = r.crossing_count();
    let plus = r.resolve(&KauffmanState::all_plus(n)).expect("state length matches");
    let minus = r.resolve(&KauffmanState::all_minus(n)).expect("state length matches");
    StateCounts { s_plus: plus.trivial, p_plus: plus.nontrivial, s_minus: minus.trivial, p_minus: minus.nontrivial }
}

/// `(plus, minus)`: the constant state has strictly more trivial circles than
/// each state obtained from it by changing one crossing.
pub fn is_adequate(d: &AnnularDiagram) -> Result<(bool, bool), DiagramError> {
    let r = Resolver::new(d)?;
    Ok(adequacy_with(&r))
}

fn adequacy_with(r: &Resolver) -> (bool, bool) {
    let n = r.crossing_count();
    let check = |base: KauffmanState| {
        let s0 = r.resolve(&base).expect("state length matches").trivial;
        (0..n).all(|c| r.resolve(&base.flipped(c)).expect("state length matches").trivial < s0)
    };
    (check(KauffmanState::all_plus(n)), check(KauffmanState::all_minus(n)))
}

/// Everything the checks need to know about a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramProfile {
    pub name: Option<String>,
    pub crossings: usize,
    pub free_loops: usize,
    pub faces: usize,
    pub components: usize,
    pub connected: bool,
    pub alternating: bool,
    pub in_disk: bool,
    pub z2_class: bool,
    pub s_plus: usize,
    pub p_plus: usize,
    pub s_minus: usize,
    pub p_minus: usize,
    pub plus_adequate: bool,
    pub minus_adequate: bool,
    /// `None` when the diagram is not connected.
    pub nugatory: Option<usize>,
    pub external_adjacent: Option<usize>,
    pub simple: Option<bool>,
    pub quasi_simple: Option<bool>,
    pub flagged: Vec<(usize, Ambiguity)>,
}

impl DiagramProfile {
    pub fn adequate(&self) -> bool {
        self.plus_adequate && self.minus_adequate
    }
}

pub fn profile(d: &AnnularDiagram) -> Result<DiagramProfile, DiagramError> {
    let topo = d.topology()?;
    let r = Resolver::new(d)?;
    let counts = state_counts_with(&r);
    let (plus_adequate, minus_adequate) = adequacy_with(&r);
    let connected = is_connected(d)?;
    let classification = match classify_crossings(d) {
        Ok(c) => Some(c),
        Err(AnalysisError::NotConnected) => None,
        Err(AnalysisError::Diagram(e)) => return Err(e),
    };
    Ok(DiagramProfile {
        name: d.meta.name.clone(),
        crossings: d.crossing_count(),
        free_loops: d.free_loops().len(),
        faces: topo.faces().len(),
        components: topo.strand_walks(d).len(),
        connected,
        alternating: is_alternating(d)?,
        in_disk: in_disk_with(d, &topo),
        z2_class: d.z2_class(),
        s_plus: counts.s_plus,
        p_plus: counts.p_plus,
        s_minus: counts.s_minus,
        p_minus: counts.p_minus,
        plus_adequate,
        minus_adequate,
        nugatory: classification.as_ref().map(|c| c.count(CrossingClass::Nugatory)),
        external_adjacent: classification.as_ref().map(|c| c.count(CrossingClass::ExternalAdjacent)),
        simple: classification.as_ref().map(Classification::is_simple),
        quasi_simple: classification.as_ref().map(Classification::is_quasi_simple),
        flagged: classification.map(|c| c.flagged).unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests;
