//! The Kauffman bracket in `S^1 x S^2` as a state sum.
//!
//! A state picks a smoothing at every crossing. The `+1` smoothing joins slot
//! 0 with slot 3 and slot 1 with slot 2; the `-1` smoothing joins 0 with 1 and
//! 2 with 3. The resolved circles are trivial or parallel to the core
//! according to their cut parity, and
//!
//! ```text
//! <D> = sum over states s of  alpha(p(s)) * A^(sum s) * delta^(sD)
//! ```
//!
//! with `alpha(k)` the bracket of `k` parallel cores.

use std::num::NonZeroUsize;
use std::thread;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{AnnularDiagram, DiagramError, EdgeId, HalfEdge, StrandWalk};
use crate::laurent::LaurentPoly;

/// State sums are refused above this many crossings.
pub const MAX_CROSSINGS: usize = 26;

#[derive(Debug, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{crossings} crossings exceed the state-sum cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("state has {found} entries but the diagram has {expected} crossings")]
    StateLength { expected: usize, found: usize },
    #[error("orientation has {found} entries but the diagram has {expected} components")]
    Orientation { expected: usize, found: usize },
}

/// `+1` / `-1` smoothing choice per crossing; `true` is `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KauffmanState {
    plus: Vec<bool>,
}

impl KauffmanState {
    pub fn all_plus(n: usize) -> Self {
        Self { plus: vec![true; n] }
    }

    pub fn all_minus(n: usize) -> Self {
        Self { plus: vec![false; n] }
    }

    pub fn from_plus(plus: Vec<bool>) -> Self {
        Self { plus }
    }

    /// Low bit is crossing 0.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self { plus: (0..n).map(|c| mask >> c & 1 == 1).collect() }
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    pub fn sign(&self, c: usize) -> i32 {
        if self.plus[c] {
            1
        } else {
            -1
        }
    }

    pub fn flipped(&self, c: usize) -> Self {
        let mut s = self.clone();
        s.plus[c] = !s.plus[c];
        s
    }

    /// `sum_i s(i)`.
    pub fn sum(&self) -> i64 {
        self.plus.iter().map(|&p| if p { 1 } else { -1 }).sum()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.plus
    }
}

/// Circle counts of a resolved state, free loops included.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Resolution {
    /// Homotopically trivial circles (`sD`).
    pub trivial: usize,
    /// Circles parallel to the core (`p(s)`).
    pub nontrivial: usize,
}

impl Resolution {
    pub fn total(&self) -> usize {
        self.trivial + self.nontrivial
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedCircle {
    pub edges: Vec<EdgeId>,
    pub parity: bool,
}

#[inline]
fn partner(slot: usize, plus: bool) -> usize {
    if plus {
        3 - slot
    } else {
        slot ^ 1
    }
}

/// Precomputed half-edge tables for resolving many states of one diagram.
/// Half-edge `4c + s` is slot `s` of crossing `c`.
#[derive(Clone, Debug)]
pub struct Resolver {
    n: usize,
    mate: Vec<u32>,
    parity: Vec<bool>,
    edge: Vec<EdgeId>,
    free_trivial: usize,
    free_nontrivial: usize,
}

impl Resolver {
    pub fn new(d: &AnnularDiagram) -> Result<Self, DiagramError> {
        let topo = d.topology()?;
        let n = d.crossing_count();
        let mut mate = vec![0u32; 4 * n];
        let mut parity = vec![false; 4 * n];
        let mut edge = vec![0; 4 * n];
        for h in 0..4 * n {
            let he = HalfEdge::new(h / 4, (h % 4) as u8);
            let o = topo.other_end(d, he);
            mate[h] = (4 * o.crossing + o.slot as usize) as u32;
            edge[h] = d.edge_at(he);
            parity[h] = d.edges()[edge[h]].parity;
        }
        let free_nontrivial = d.free_loops().iter().filter(|l| l.parity).count();
        Ok(Self { n, mate, parity, edge, free_trivial: d.free_loops().len() - free_nontrivial, free_nontrivial })
    }

    pub fn crossing_count(&self) -> usize {
        self.n
    }

    fn check(&self, s: &KauffmanState) -> Result<(), SkeinError> {
        if s.len() != self.n {
            return Err(SkeinError::StateLength { expected: self.n, found: s.len() });
        }
        Ok(())
    }

    /// Walks the circle leaving through half-edge `start`, calling `visit` on
    /// every half-edge it leaves through; returns its parity.
    fn walk(&self, start: usize, plus: impl Fn(usize) -> bool, mut visit: impl FnMut(usize, usize)) -> bool {
        let mut h = start;
        let mut par = false;
        loop {
            let m = self.mate[h] as usize;
            visit(h, m);
            par ^= self.parity[h];
            let c = m / 4;
            h = 4 * c + partner(m % 4, plus(c));
            if h == start {
                return par;
            }
        }
    }

    /// Circles of the crossing part only.
    fn count_mask(&self, mask: u64, seen: &mut [bool]) -> (usize, usize) {
        seen.iter_mut().for_each(|x| *x = false);
        let (mut t, mut p) = (0, 0);
        for h in 0..4 * self.n {
            if seen[h] {
                continue;
            }
            let par = self.walk(
                h,
                |c| mask >> c & 1 == 1,
                |a, b| {
                    seen[a] = true;
                    seen[b] = true;
                },
            );
            if par {
                p += 1;
            } else {
                t += 1;
            }
        }
        (t, p)
    }

    pub fn resolve(&self, s: &KauffmanState) -> Result<Resolution, SkeinError> {
        Ok(self.circles(s)?.iter().fold(
            Resolution { trivial: self.free_trivial, nontrivial: self.free_nontrivial },
            |mut r, c| {
                if c.parity {
                    r.nontrivial += 1;
                } else {
                    r.trivial += 1;
                }
                r
            },
        ))
    }

    /// Resolved circles of the crossing part (free loops are not listed).
    pub fn circles(&self, s: &KauffmanState) -> Result<Vec<ResolvedCircle>, SkeinError> {
        self.check(s)?;
        let plus = s.as_slice();
        let mut seen = vec![false; 4 * self.n];
        let mut out = Vec::new();
        for h in 0..4 * self.n {
            if seen[h] {
                continue;
            }
            let mut edges = Vec::new();
            let parity = self.walk(
                h,
                |c| plus[c],
                |a, b| {
                    seen[a] = true;
                    seen[b] = true;
                    edges.push(self.edge[a]);
                },
            );
            out.push(ResolvedCircle { edges, parity });
        }
        Ok(out)
    }
}

/// Resolves one state.
pub fn resolve(d: &AnnularDiagram, s: &KauffmanState) -> Result<Resolution, SkeinError> {
    Resolver::new(d)?.resolve(s)
}

/// `alpha(k)`: zero for odd `k`, the Catalan number `C(k/2)` for even `k`.
pub fn alpha(k: usize) -> BigUint {
    if k % 2 == 1 {
        return BigUint::zero();
    }
    let n = k / 2;
    // binom(2n, n) / (n + 1)
    let mut b = BigUint::one();
    for i in 0..n {
        b = b * BigUint::from(2 * n - i) / BigUint::from(i + 1);
    }
    b / BigUint::from(n + 1)
}

/// Independent count for `alpha(k)`: fusing the cores one at a time, colour
/// `c` goes to `c + 1` or `c - 1` (never below zero), and only colour 0 at
/// the end survives. Counts those walks by dynamic programming.
pub fn alpha_walk_oracle(k: usize) -> BigUint {
    let mut ways = vec![BigUint::zero(); k + 2];
    ways[0] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); k + 2];
        for c in 0..=k {
            if ways[c].is_zero() {
                continue;
            }
            next[c + 1] += &ways[c];
            if c > 0 {
                next[c - 1] += &ways[c];
            }
        }
        ways = next;
    }
    ways.swap_remove(0)
}

/// Counts of states by (number of `+1` crossings, trivial circles, nontrivial
/// circles), crossing part only.
struct Tally {
    n: usize,
    side: usize,
    counts: Vec<u64>,
}

impl Tally {
    fn new(n: usize) -> Self {
        let side = 2 * n + 1;
        Self { n, side, counts: vec![0; (n + 1) * side * side] }
    }

    #[inline]
    fn add(&mut self, k: usize, t: usize, p: usize) {
        self.counts[(k * self.side + t) * self.side + p] += 1;
    }

    fn merge(&mut self, other: &Tally) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    fn into_poly(self, free_trivial: usize, free_nontrivial: usize) -> LaurentPoly {
        let n = self.n as i64;
        let mut total = LaurentPoly::zero();
        for t in 0..self.side {
            let mut part = LaurentPoly::zero();
            for k in 0..=self.n {
                for p in 0..self.side {
                    let count = self.counts[(k * self.side + t) * self.side + p];
                    if count == 0 {
                        continue;
                    }
                    let a = alpha(p + free_nontrivial);
                    if a.is_zero() {
                        continue;
                    }
                    let coef = BigInt::from(a) * BigInt::from(count);
                    part += &LaurentPoly::monomial(coef, 2 * k as i64 - n);
                }
            }
            if !part.is_zero() {
                total += &(&part * &LaurentPoly::delta_power((t + free_trivial) as u32));
            }
        }
        total
    }
}

fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

fn prepare(d: &AnnularDiagram) -> Result<Resolver, SkeinError> {
    let r = Resolver::new(d)?;
    if r.n > MAX_CROSSINGS {
        return Err(SkeinError::TooManyCrossings { crossings: r.n, cap: MAX_CROSSINGS });
    }
    Ok(r)
}

/// Splits `[0, 2^n)` into contiguous ranges and tallies them on worker
/// threads. The result does not depend on the split.
fn run_chunks(r: &Resolver, threads: usize, work: impl Fn(&Resolver, u64, u64, &mut Tally) + Sync) -> Tally {
    let total = 1u64 << r.n;
    let chunks = (threads.max(1) as u64 * 4).min(total);
    let size = total.div_ceil(chunks);
    let mut tally = Tally::new(r.n);
    if threads <= 1 || chunks <= 1 {
        work(r, 0, total, &mut tally);
        return tally;
    }
    let ranges: Vec<(u64, u64)> =
        (0..chunks).map(|i| (i * size, ((i + 1) * size).min(total))).filter(|(a, b)| a < b).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let parts: Vec<Tally> = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Tally::new(r.n);
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(&(a, b)) = ranges.get(i) else { break };
                        work(r, a, b, &mut local);
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bracket worker panicked")).collect()
    });
    for p in &parts {
        tally.merge(p);
    }
    tally
}

/// The bracket by direct enumeration of all `2^n` states, on all available
/// cores.
pub fn bracket(d: &AnnularDiagram) -> Result<LaurentPoly, SkeinError> {
    bracket_with_threads(d, default_threads())
}

pub fn bracket_with_threads(d: &AnnularDiagram, threads: usize) -> Result<LaurentPoly, SkeinError> {
    let r = prepare(d)?;
    if r.n == 0 {
        return Ok(Tally::new(0).into_poly_free(&r));
    }
    let tally = run_chunks(&r, threads, |r, lo, hi, tally| {
        let mut seen = vec![false; 4 * r.n];
        for mask in lo..hi {
            let (t, p) = r.count_mask(mask, &mut seen);
            tally.add(mask.count_ones() as usize, t, p);
        }
    });
    Ok(tally.into_poly(r.free_trivial, r.free_nontrivial))
}

impl Tally {
    fn into_poly_free(self, r: &Resolver) -> LaurentPoly {
        let mut t = self;
        t.add(0, 0, 0);
        t.into_poly(r.free_trivial, r.free_nontrivial)
    }
}

/// Circle labels for incremental updates in Gray-code order.
struct Labels<'a> {
    r: &'a Resolver,
    mask: u64,
    label: Vec<u32>,
    parity: Vec<bool>,
    alive: Vec<bool>,
    free: Vec<u32>,
    trivial: usize,
    nontrivial: usize,
}

impl<'a> Labels<'a> {
    fn new(r: &'a Resolver, mask: u64) -> Self {
        let mut l = Labels {
            r,
            mask,
            label: vec![u32::MAX; 4 * r.n],
            parity: Vec::new(),
            alive: Vec::new(),
            free: Vec::new(),
            trivial: 0,
            nontrivial: 0,
        };
        for h in 0..4 * r.n {
            if l.label[h] == u32::MAX {
                l.relabel(h);
            }
        }
        l
    }

    fn fresh(&mut self) -> u32 {
        match self.free.pop() {
            Some(id) => id,
            None => {
                self.parity.push(false);
                self.alive.push(false);
                (self.parity.len() - 1) as u32
            }
        }
    }

    fn relabel(&mut self, start: usize) {
        let id = self.fresh();
        let mask = self.mask;
        let label = &mut self.label;
        let par = self.r.walk(
            start,
            |c| mask >> c & 1 == 1,
            |a, b| {
                label[a] = id;
                label[b] = id;
            },
        );
        self.parity[id as usize] = par;
        self.alive[id as usize] = true;
        if par {
            self.nontrivial += 1;
        } else {
            self.trivial += 1;
        }
    }

    fn flip(&mut self, c: usize) {
        let mut dead = [u32::MAX; 4];
        for (s, slot) in dead.iter_mut().enumerate() {
            let id = self.label[4 * c + s];
            if self.alive[id as usize] {
                self.alive[id as usize] = false;
                if self.parity[id as usize] {
                    self.nontrivial -= 1;
                } else {
                    self.trivial -= 1;
                }
                *slot = id;
            }
        }
        self.mask ^= 1 << c;
        for s in 0..4 {
            if !self.alive[self.label[4 * c + s] as usize] {
                self.relabel(4 * c + s);
            }
        }
        // recycle only after relabelling so stale labels never look alive
        self.free.extend(dead.into_iter().filter(|&id| id != u32::MAX));
    }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Same value as [`bracket`], enumerating states in Gray-code order and
/// re-walking only the circles through the flipped crossing.
pub fn bracket_gray(d: &AnnularDiagram) -> Result<LaurentPoly, SkeinError> {
    bracket_gray_with_threads(d, default_threads())
}

pub fn bracket_gray_with_threads(d: &AnnularDiagram, threads: usize) -> Result<LaurentPoly, SkeinError> {
    let r = prepare(d)?;
    if r.n == 0 {
        return Ok(Tally::new(0).into_poly_free(&r));
    }
    let tally = run_chunks(&r, threads, |r, lo, hi, tally| {
        let mut l = Labels::new(r, gray(lo));
        tally.add(l.mask.count_ones() as usize, l.trivial, l.nontrivial);
        for i in lo + 1..hi {
            l.flip(i.trailing_zeros() as usize);
            tally.add(l.mask.count_ones() as usize, l.trivial, l.nontrivial);
        }
    });
    Ok(tally.into_poly(r.free_trivial, r.free_nontrivial))
}

/// Direction choice per link component, in the order of
/// [`crate::diagram::Topology::strand_walks`]; `true` keeps the walk's
/// direction. Entries for free loops are accepted and ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation(pub Vec<bool>);

impl Orientation {
    /// Every component in its walk direction.
    pub fn default_for(d: &AnnularDiagram) -> Result<Self, DiagramError> {
        Ok(Self(vec![true; d.topology()?.strand_walks(d).len()]))
    }
}

/// Sum of crossing signs. A crossing is positive when the under-strand runs
/// from slot 0 to slot 2 and the over-strand from slot 1 to slot 3, or both
/// the other way; the positive kink has writhe `+1`.
pub fn writhe(d: &AnnularDiagram, orientation: &Orientation) -> Result<i64, SkeinError> {
    let topo = d.topology()?;
    let walks = topo.strand_walks(d);
    if orientation.0.len() != walks.len() {
        return Err(SkeinError::Orientation { expected: walks.len(), found: orientation.0.len() });
    }
    // direction per crossing: +1 if the strand on that slot pair runs from the
    // lower slot to the higher one
    let mut dir = vec![[0i64; 2]; d.crossing_count()];
    for (w, &forward) in walks.iter().zip(&orientation.0) {
        let StrandWalk::Closed { passages, .. } = w else { continue };
        for p in passages {
            let low_to_high = p.slot < 2;
            let v = if low_to_high == forward { 1 } else { -1 };
            dir[p.crossing][(p.slot % 2) as usize] = v;
        }
    }
    Ok(dir.iter().map(|[u, o]| u * o).sum())
}

/// `(-A^3)^(-w) <D>`.
pub fn jones(d: &AnnularDiagram, orientation: &Orientation) -> Result<LaurentPoly, SkeinError> {
    let w = writhe(d, orientation)?;
    Ok(&LaurentPoly::framing_unit(-w) * &bracket(d)?)
}

/// Checks the smoothing convention against two fixed values: the one-crossing
/// closure on two strands evaluates to `-A^3` or `-A^-3`, and a positive kink
/// multiplies by `-A^3`.
pub fn calibrate() -> Result<(), String> {
    use crate::diagram::{BraidWord, KinkSign, Side, Strand};
    let word = BraidWord::new(2, vec![1]).map_err(|e| e.to_string())?;
    let one = bracket_with_threads(&AnnularDiagram::from_braid_closure(&word), 1).map_err(|e| e.to_string())?;
    if one != LaurentPoly::monomial(-1, 3) && one != LaurentPoly::monomial(-1, -3) {
        return Err(format!("one-crossing closure evaluates to {one}, expected -A^3 or -A^-3"));
    }
    let unknot = AnnularDiagram::from_free_loops(&[false]);
    let kinked = unknot.insert_r1(Strand::FreeLoop(0), KinkSign::Positive, Side::Right).map_err(|e| e.to_string())?;
    let got = bracket_with_threads(&kinked, 1).map_err(|e| e.to_string())?;
    let want = &LaurentPoly::monomial(-1, 3) * &LaurentPoly::delta();
    if got != want {
        return Err(format!("positive kink evaluates to {got}, expected {want}"));
    }
    Ok(())
}
