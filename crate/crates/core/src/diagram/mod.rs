//! Link diagrams in the annulus `S^1 x [-1, 1]`, stored as 4-valent
//! combinatorial maps.
//!
//! Every crossing has four slots numbered counterclockwise. Slots 0 and 2 carry
//! the under-strand, slots 1 and 3 the over-strand. Each edge joins two slots
//! and records the parity of its intersections with a fixed cut arc running
//! from the inner to the outer boundary of the annulus. Crossingless
//! components are kept as free loops carrying only that parity.
//!
//! The two external faces (the regions touching the inner and the outer
//! boundary circle) are designated by a representative corner; corner `k` of
//! a crossing sits between slots `k` and `k + 1`.

mod build;
mod format;
mod map;
mod moves;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use build::BraidWord;
pub use format::{parse_pd, ParseError};
pub use map::{Color, Face, StrandWalk, Topology};
pub use moves::{apply_full_twist, KinkSign, R2Options, Side};

pub type CrossingId = usize;
pub type EdgeId = usize;

/// One of the four slots of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub crossing: CrossingId,
    pub slot: u8,
}

impl HalfEdge {
    pub fn new(crossing: CrossingId, slot: u8) -> Self {
        Self { crossing, slot: slot % 4 }
    }

    pub fn rotate(self, k: u8) -> Self {
        Self::new(self.crossing, self.slot + k)
    }

    /// Slot on the same strand across the crossing.
    pub fn across(self) -> Self {
        self.rotate(2)
    }

    pub fn is_over(self) -> bool {
        self.slot % 2 == 1
    }
}

/// Corner `index` of a crossing: the angle between slots `index` and `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub crossing: CrossingId,
    pub index: u8,
}

impl Corner {
    pub fn new(crossing: CrossingId, index: u8) -> Self {
        Self { crossing, index: index % 4 }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing, self.index)
    }
}

impl FromStr for Corner {
    type Err = String;

    /// Parses `crossing.corner`, e.g. `3.1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected `crossing.corner`, found `{s}`");
        let (c, k) = s.split_once('.').ok_or_else(bad)?;
        let c = c.parse().map_err(|_| bad())?;
        let k: u8 = k.parse().ok().filter(|k| *k < 4).ok_or_else(bad)?;
        Ok(Corner::new(c, k))
    }
}

/// Designator of an external face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum External {
    Corner(Corner),
    /// Used when the diagram has no crossings.
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [EdgeId; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub parity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeLoop {
    pub parity: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Meta {
    pub name: Option<String>,
    pub provenance: Option<String>,
}

/// A (possibly invalid) annular diagram. Construction never fails; call
/// [`AnnularDiagram::validate`] or [`AnnularDiagram::topology`] before relying
/// on the map structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnnularDiagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    free_loops: Vec<FreeLoop>,
    external: [External; 2],
    pub meta: Meta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownEdge {
        crossing: CrossingId,
        slot: u8,
        edge: EdgeId,
    },
    DanglingHalfEdge {
        edge: EdgeId,
    },
    OverusedEdge {
        edge: EdgeId,
        uses: usize,
    },
    UnusedEdge {
        edge: EdgeId,
    },
    EulerCharacteristic {
        component: usize,
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    UnresolvedExternal {
        which: usize,
    },
    /// The boundary of a face crosses the cut arc an unexpected number of
    /// times (internal faces must be even, a lone external face odd).
    FaceParity {
        face: usize,
        expected_odd: bool,
    },
    /// A crossing-free component carries an odd number of odd faces.
    ComponentParity {
        component: usize,
        odd_faces: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownEdge { crossing, slot, edge } => {
                write!(f, "unknown edge {edge} at crossing {crossing} slot {slot}")
            }
            Violation::DanglingHalfEdge { edge } => write!(f, "dangling half-edge: edge {edge} has one end"),
            Violation::OverusedEdge { edge, uses } => write!(f, "edge {edge} is attached to {uses} slots"),
            Violation::UnusedEdge { edge } => write!(f, "edge {edge} is not attached to any crossing"),
            Violation::EulerCharacteristic { component, vertices, edges, faces } => write!(
                f,
                "Euler characteristic != 2 in component {component}: V - E + F = {vertices} - {edges} + {faces}"
            ),
            Violation::UnresolvedExternal { which } => {
                write!(f, "external designator {which} does not resolve to a face")
            }
            Violation::FaceParity { face, expected_odd } => write!(
                f,
                "malformed parities: face {face} boundary should cross the cut arc an {} number of times",
                if *expected_odd { "odd" } else { "even" }
            ),
            Violation::ComponentParity { component, odd_faces } => {
                write!(f, "malformed parities: component {component} has {odd_faces} faces with odd boundary parity")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i32, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("no such edge: {0}")]
    UnknownEdge(EdgeId),
    #[error("no such free loop: {0}")]
    UnknownFreeLoop(usize),
    #[error("edges {0} and {1} do not bound a common face")]
    NoCommonFace(EdgeId, EdgeId),
    #[error("R2 needs two distinct edges")]
    SameEdge,
    #[error("operation needs a diagram whose crossings form one connected piece")]
    Disconnected,
    #[error("no such corner: {0}")]
    UnknownCorner(Corner),
}

/// Reference to a strand segment that a move may act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strand {
    Edge(EdgeId),
    FreeLoop(usize),
}

impl AnnularDiagram {
    /// Builds a diagram from raw parts without validating it.
    pub fn from_parts(
        crossings: Vec<Crossing>,
        edges: Vec<Edge>,
        free_loops: Vec<FreeLoop>,
        external: [External; 2],
    ) -> Self {
        Self { crossings, edges, free_loops, external, meta: Meta::default() }
    }

    pub fn empty() -> Self {
        Self::from_parts(vec![], vec![], vec![], [External::Unbounded; 2])
    }

    /// Crossingless diagram made of free loops with the given parities.
    pub fn from_free_loops(parities: &[bool]) -> Self {
        let loops = parities.iter().map(|&parity| FreeLoop { parity }).collect();
        Self::from_parts(vec![], vec![], loops, [External::Unbounded; 2])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.meta.name = Some(name.into());
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.meta.provenance = Some(provenance.into());
        self
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn free_loops(&self) -> &[FreeLoop] {
        &self.free_loops
    }

    pub fn external(&self) -> [External; 2] {
        self.external
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops.is_empty()
    }

    pub fn edge_at(&self, h: HalfEdge) -> EdgeId {
        self.crossings[h.crossing].slots[h.slot as usize]
    }

    /// Disjoint union with extra free loops.
    pub fn with_free_loops(mut self, parities: &[bool]) -> Self {
        self.free_loops.extend(parities.iter().map(|&parity| FreeLoop { parity }));
        self
    }

    /// Sum of all cut parities mod 2: the class of the link in
    /// `H_1(S^1 x S^2; Z/2)`.
    pub fn z2_class(&self) -> bool {
        self.edges.iter().map(|e| e.parity).chain(self.free_loops.iter().map(|l| l.parity)).fold(false, |a, b| a ^ b)
    }

    /// Mirror image: every crossing switches over and under. Slot labels shift
    /// by one so the under-strand stays on slots 0 and 2.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { slots: [c.slots[1], c.slots[2], c.slots[3], c.slots[0]] })
            .collect();
        let shift = |x: External| match x {
            External::Corner(c) => External::Corner(Corner::new(c.crossing, c.index + 3)),
            External::Unbounded => External::Unbounded,
        };
        Self {
            crossings,
            edges: self.edges.clone(),
            free_loops: self.free_loops.clone(),
            external: [shift(self.external[0]), shift(self.external[1])],
            meta: self.meta.clone(),
        }
    }

    /// Structural checks only: every edge used exactly twice.
    fn structural_violations(&self) -> Vec<Violation> {
        let mut uses = vec![0usize; self.edges.len()];
        let mut out = Vec::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.slots.iter().enumerate() {
                match uses.get_mut(e) {
                    Some(u) => *u += 1,
                    None => out.push(Violation::UnknownEdge { crossing: c, slot: s as u8, edge: e }),
                }
            }
        }
        for (e, &u) in uses.iter().enumerate() {
            match u {
                2 => {}
                0 => out.push(Violation::UnusedEdge { edge: e }),
                1 => out.push(Violation::DanglingHalfEdge { edge: e }),
                _ => out.push(Violation::OverusedEdge { edge: e, uses: u }),
            }
        }
        for (i, x) in self.external.iter().enumerate() {
            let ok = match x {
                External::Corner(c) => c.crossing < self.crossings.len() && c.index < 4,
                External::Unbounded => self.crossings.is_empty(),
            };
            if !ok {
                out.push(Violation::UnresolvedExternal { which: i });
            }
        }
        out
    }

    /// Lists every violation; empty iff the diagram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let structural = self.structural_violations();
        if !structural.is_empty() {
            return structural;
        }
        let topo = Topology::build_unchecked(self);
        topo.map_violations()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Builds the combinatorial map, failing with the violation list when
    /// the diagram is invalid.
    pub fn topology(&self) -> Result<Topology, DiagramError> {
        let structural = self.structural_violations();
        if !structural.is_empty() {
            return Err(DiagramError::Invalid(structural));
        }
        let topo = Topology::build_unchecked(self);
        let v = topo.map_violations();
        if v.is_empty() {
            Ok(topo)
        } else {
            Err(DiagramError::Invalid(v))
        }
    }
}
