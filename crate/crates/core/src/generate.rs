//! Seeded random diagram families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{AnnularDiagram, BraidWord, Corner, DiagramError, KinkSign, R2Options, Side, Strand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    AlternatingBraidClosures,
    RandomBraidClosures,
    DiskAlternating,
    ParallelCores,
    RMovePerturbations,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::AlternatingBraidClosures,
        Family::RandomBraidClosures,
        Family::DiskAlternating,
        Family::ParallelCores,
        Family::RMovePerturbations,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::AlternatingBraidClosures => "alternating-braid-closures",
            Family::RandomBraidClosures => "random-braid-closures",
            Family::DiskAlternating => "disk-alternating",
            Family::ParallelCores => "parallel-cores",
            Family::RMovePerturbations => "r-move-perturbations",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.as_str()).collect();
            format!("unknown family `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub strands: usize,
    /// Braid length, or number of cores for `parallel-cores`, or number of
    /// moves for `r-move-perturbations`.
    pub length: usize,
    pub count: usize,
    /// Diagram to perturb for `r-move-perturbations`.
    pub base: Option<AnnularDiagram>,
}

/// Deterministic source of random diagrams.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Random word. With `alternating`, `sigma_i` always carries the sign
    /// `(-1)^(i+1)`, which makes the closure alternating.
    pub fn braid_word(&mut self, strands: usize, length: usize, alternating: bool) -> BraidWord {
        let letters = if strands < 2 {
            Vec::new()
        } else {
            (0..length)
                .map(|_| {
                    let i = self.rng.gen_range(1..strands as i32);
                    let positive = if alternating { i % 2 == 1 } else { self.rng.gen_bool(0.5) };
                    if positive {
                        i
                    } else {
                        -i
                    }
                })
                .collect()
        };
        BraidWord::new(strands.max(1), letters).expect("letters are in range")
    }

    /// Like [`Generator::braid_word`] but every generator occurs, so the
    /// closure is connected.
    pub fn connected_braid_word(&mut self, strands: usize, length: usize, alternating: bool) -> BraidWord {
        loop {
            let w = self.braid_word(strands, length.max(strands.saturating_sub(1)), alternating);
            let mut used = vec![false; strands];
            for g in &w.letters {
                used[g.unsigned_abs() as usize] = true;
            }
            if (1..strands).all(|i| used[i]) {
                return w;
            }
        }
    }

    pub fn corner(&mut self, d: &AnnularDiagram) -> Corner {
        Corner::new(self.rng.gen_range(0..d.crossing_count()), self.rng.gen_range(0..4u8))
    }

    /// Places the punctures in two random faces (possibly the same one).
    pub fn reembed(&mut self, d: &AnnularDiagram) -> Result<AnnularDiagram, DiagramError> {
        let (a, b) = (self.corner(d), self.corner(d));
        d.reembed(a, b)
    }

    /// One random Reidemeister I or II insertion; R2 is tried first when
    /// `prefer_r2` and falls back to R1 when no face offers two edges.
    pub fn perturb(&mut self, d: &AnnularDiagram, prefer_r2: bool) -> Result<AnnularDiagram, DiagramError> {
        if prefer_r2 && d.crossing_count() > 0 {
            if let Some(out) = self.try_r2(d)? {
                return Ok(out);
            }
        }
        self.r1(d)
    }

    pub fn r1(&mut self, d: &AnnularDiagram) -> Result<AnnularDiagram, DiagramError> {
        let sign = if self.rng.gen_bool(0.5) { KinkSign::Positive } else { KinkSign::Negative };
        let side = if self.rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        let strands = d.edges().len() + d.free_loops().len();
        if strands == 0 {
            return Err(DiagramError::UnknownEdge(0));
        }
        let pick = self.rng.gen_range(0..strands);
        let at = if pick < d.edges().len() { Strand::Edge(pick) } else { Strand::FreeLoop(pick - d.edges().len()) };
        d.insert_r1(at, sign, side)
    }

    /// R2 across two distinct edges of a random face, if some face has them.
    pub fn try_r2(&mut self, d: &AnnularDiagram) -> Result<Option<AnnularDiagram>, DiagramError> {
        let topo = d.topology()?;
        if topo.component_count() != 1 {
            return Ok(None);
        }
        let mut faces: Vec<usize> = (0..topo.faces().len()).collect();
        faces.shuffle(&mut self.rng);
        for f in faces {
            let face = &topo.faces()[f];
            let mut edges: Vec<usize> = face.boundary_edges(d).collect();
            edges.sort_unstable();
            edges.dedup();
            if edges.len() < 2 {
                continue;
            }
            edges.shuffle(&mut self.rng);
            let opts = R2Options { face: Some(face.corners[0]), second_over: self.rng.gen_bool(0.5) };
            return d.insert_r2(edges[0], edges[1], opts).map(Some);
        }
        Ok(None)
    }
}

fn tag(d: AnnularDiagram, family: Family, seed: u64, i: usize, detail: Option<String>) -> AnnularDiagram {
    let mut provenance = format!("generator {family} seed {seed} index {i}");
    if let Some(detail) = detail {
        provenance.push_str(", ");
        provenance.push_str(&detail);
    }
    d.with_name(format!("{family}-{seed}-{i}")).with_provenance(provenance)
}

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error("family r-move-perturbations needs a base diagram")]
    MissingBase,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `count` diagrams of a family; identical seeds give identical output.
pub fn generate(family: Family, params: &FamilyParams, seed: u64) -> Result<Vec<AnnularDiagram>, GenerateError> {
    let mut g = Generator::new(seed);
    let mut out = Vec::with_capacity(params.count);
    for i in 0..params.count {
        let (d, detail) = match family {
            Family::AlternatingBraidClosures => {
                let w = g.braid_word(params.strands, params.length, true);
                (AnnularDiagram::from_braid_closure(&w), Some(w.to_string()))
            }
            Family::RandomBraidClosures => {
                let w = g.braid_word(params.strands, params.length, false);
                (AnnularDiagram::from_braid_closure(&w), Some(w.to_string()))
            }
            Family::DiskAlternating => {
                let w = g.connected_braid_word(params.strands.max(2), params.length, true);
                let d = AnnularDiagram::from_braid_closure(&w);
                let c = g.corner(&d);
                (d.in_disk_at(c)?, Some(format!("{w} moved into a disk at corner {c}")))
            }
            Family::ParallelCores => (AnnularDiagram::from_free_loops(&vec![true; params.length]), None),
            Family::RMovePerturbations => {
                let mut d = params.base.clone().ok_or(GenerateError::MissingBase)?;
                for _ in 0..params.length.max(1) {
                    let prefer_r2 = g.rng().gen_bool(0.5);
                    d = g.perturb(&d, prefer_r2)?;
                }
                (d, None)
            }
        };
        out.push(tag(d, family, seed, i, detail));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(strands: usize, length: usize, count: usize) -> FamilyParams {
        FamilyParams { strands, length, count, base: None }
    }

    #[test]
    fn families_are_deterministic() {
        for f in [Family::AlternatingBraidClosures, Family::RandomBraidClosures, Family::DiskAlternating] {
            let a = generate(f, &params(4, 6, 5), 1).unwrap();
            let b = generate(f, &params(4, 6, 5), 1).unwrap();
            assert_eq!(a, b);
            assert!(a.iter().all(AnnularDiagram::is_valid), "{f}");
        }
    }

    #[test]
    fn parallel_cores_are_free_loops() {
        let d = &generate(Family::ParallelCores, &params(0, 6, 1), 0).unwrap()[0];
        assert_eq!(d.free_loops().len(), 6);
        assert!(d.free_loops().iter().all(|l| l.parity));
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn alternating_family_uses_sign_pattern() {
        for d in generate(Family::AlternatingBraidClosures, &params(4, 6, 10), 1).unwrap() {
            assert!(crate::analysis::is_alternating(&d).unwrap());
        }
    }

    #[test]
    fn disk_family_lies_in_a_disk() {
        for d in generate(Family::DiskAlternating, &params(3, 5, 10), 3).unwrap() {
            assert!(crate::analysis::is_in_disk(&d).unwrap());
            assert!(crate::analysis::is_alternating(&d).unwrap());
        }
    }

    #[test]
    fn perturbations_need_a_base() {
        assert!(matches!(generate(Family::RMovePerturbations, &params(0, 2, 1), 7), Err(GenerateError::MissingBase)));
        let base = AnnularDiagram::from_disk_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], None).unwrap();
        let p = FamilyParams { base: Some(base), ..params(0, 2, 3) };
        let out = generate(Family::RMovePerturbations, &p, 7).unwrap();
        assert!(out.iter().all(|d| d.is_valid() && d.crossing_count() > 3));
    }

    #[test]
    fn unknown_family_is_rejected() {
        assert!("knots".parse::<Family>().is_err());
        for f in Family::ALL {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
    }
}
