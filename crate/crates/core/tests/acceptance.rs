//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 6 and 7 contain clauses that no implementation can meet (see
//! the notes printed with them). They are evaluated as written and reported
//! as FAIL; the process exits nonzero only when a result differs from the
//! expected outcome listed in `KNOWN_FAILURES`.

use std::time::Instant;

use annular_skein::analysis::{self, DiagramProfile};
use annular_skein::corpus::{self, Corpus};
use annular_skein::diagram::{apply_full_twist, AnnularDiagram, BraidWord, KinkSign, Side, Strand};
use annular_skein::generate::{self, Family, FamilyParams, Generator};
use annular_skein::skein::{self, alpha, alpha_walk_oracle, bracket, bracket_gray};
use annular_skein::theorems::{self, classify_nonalternating, CriterionCase, LinkAssertions, Verdict};
use annular_skein::LaurentPoly;
use num_bigint::BigUint;
use rand::Rng;

/// Criteria expected to fail, with the reason.
const KNOWN_FAILURES: [(usize, &str); 2] = [
    (
        6,
        "closures of (s1 -s2 s3)^m have total winding 4 for every m, so odd m is Z/2-trivial and the breadth check applies (and passes) instead of reporting hypotheses-not-met",
    ),
    (
        7,
        "every bracket has all exponents congruent mod 4 (one smoothing flip changes the trivial-circle count by one), so A - A^-3 - A^-5 is not the bracket of any diagram",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn closure(m: usize, w: &[i32]) -> AnnularDiagram {
    AnnularDiagram::from_braid_closure(&BraidWord::new(m, w.to_vec()).unwrap())
}

fn profile(d: &AnnularDiagram) -> DiagramProfile {
    analysis::profile(d).unwrap()
}

/// Every diagram the criteria look at, for the evaluator comparison.
#[derive(Default)]
struct Seen(Vec<AnnularDiagram>);

fn catalan(n: u64) -> BigUint {
    // binom(2n, n) / (n + 1)
    let mut b = BigUint::from(1u32);
    for i in 0..n {
        b = b * BigUint::from(2 * n - i) / BigUint::from(i + 1);
    }
    b / BigUint::from(n + 1)
}

fn c1_alpha() -> Outcome {
    let walk = (0..=20).all(|k| alpha(k) == alpha_walk_oracle(k));
    let closed = (0..=10u64).all(|n| alpha(2 * n as usize) == catalan(n));
    outcome(
        walk && closed,
        format!("alpha = walk count for k <= 20: {walk}; alpha(2n) = Catalan(n) for n <= 10: {closed}"),
    )
}

fn c2_calibration() -> Outcome {
    let one = bracket(&closure(2, &[1])).unwrap();
    let pm3 = [LaurentPoly::from_terms([(3, -1)]), LaurentPoly::from_terms([(-3, -1)])];
    let unknot = bracket(&AnnularDiagram::from_free_loops(&[false])).unwrap();
    let core = bracket(&AnnularDiagram::from_free_loops(&[true])).unwrap();
    let ok = pm3.contains(&one) && unknot == LaurentPoly::delta() && core.is_zero();
    outcome(ok, format!("one-crossing closure {one}; unknot {unknot}; core {core}"))
}

fn c3_vanishing(seen: &mut Seen) -> Outcome {
    let mut g = Generator::new(3);
    let mut bad = 0;
    for i in 0..100 {
        let strands = [3, 5, 7][i % 3];
        let len = g.rng().gen_range(0..=12);
        let w = g.braid_word(strands, len, i % 2 == 0);
        let d = AnnularDiagram::from_braid_closure(&w);
        if !bracket(&d).unwrap().is_zero() {
            bad += 1;
        }
        seen.0.push(d);
    }
    outcome(bad == 0, format!("100 odd-strand closures, {bad} with nonzero bracket"))
}

/// `count` Z/2-trivial diagrams with at most 12 crossings: annular braid
/// closures on an even number of strands (some with moved punctures), disk
/// diagrams, and R-move perturbations.
fn even_population(seed: u64, count: usize) -> Vec<AnnularDiagram> {
    let mut g = Generator::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        let strands = [2, 4, 6][i % 3];
        let len = g.rng().gen_range(1..=10);
        let d = match i % 4 {
            0 => AnnularDiagram::from_braid_closure(&g.connected_braid_word(strands, len.max(strands - 1), true)),
            1 => {
                let d =
                    AnnularDiagram::from_braid_closure(&g.connected_braid_word(strands, len.max(strands - 1), false));
                g.reembed(&d).unwrap()
            }
            2 => {
                let d = AnnularDiagram::from_braid_closure(&g.connected_braid_word(strands, len, i % 8 == 2));
                let c = g.corner(&d);
                d.in_disk_at(c).unwrap()
            }
            _ => {
                let d = AnnularDiagram::from_braid_closure(&g.braid_word(strands, len.min(9), false));
                g.perturb(&d, i % 8 == 3).unwrap()
            }
        };
        i += 1;
        if d.crossing_count() <= 12 && !analysis::z2_class(&d) {
            out.push(d);
        }
    }
    out
}

fn c4_breadth_bound(pop: &[AnnularDiagram]) -> Outcome {
    let (mut bad_bound, mut bad_eq, mut adequate, mut trivial) = (0, 0, 0, 0);
    for d in pop {
        let p = profile(d);
        if p.z2_class {
            continue;
        }
        trivial += 1;
        let b = bracket(d).unwrap().breadth() as usize;
        let bound = 2 * (p.crossings + p.s_plus + p.s_minus);
        if b > bound {
            bad_bound += 1;
        }
        if p.adequate() {
            adequate += 1;
            if b != bound {
                bad_eq += 1;
            }
        }
    }
    outcome(
        trivial == 200 && bad_bound == 0 && bad_eq == 0,
        format!(
            "{trivial} Z/2-trivial diagrams: {bad_bound} above the bound; {adequate} adequate, {bad_eq} off equality"
        ),
    )
}

fn c5_state_counts(pop: &[AnnularDiagram]) -> Outcome {
    let (mut connected, mut alternating, mut bad_bound, mut bad_eq) = (0, 0, 0, 0);
    for d in pop {
        let p = profile(d);
        if !p.connected || p.z2_class {
            continue;
        }
        connected += 1;
        let bound = p.crossings + if p.in_disk { 2 } else { 0 };
        let sum = p.s_plus + p.s_minus;
        if sum > bound {
            bad_bound += 1;
        }
        if p.alternating {
            alternating += 1;
            if sum != bound {
                bad_eq += 1;
            }
        }
    }
    outcome(
        bad_bound == 0 && bad_eq == 0 && alternating > 0,
        format!("{connected} connected: {bad_bound} above n+2 / n; {alternating} alternating, {bad_eq} off equality"),
    )
}

fn c6_breadth_theorem(seen: &mut Seen) -> Outcome {
    // disk: reduced alternating diagrams
    let mut disk = Vec::new();
    for (i, strands) in [2, 3, 4, 5].into_iter().enumerate() {
        let params = FamilyParams { strands, length: 10, count: 60, base: None };
        disk.extend(generate::generate(Family::DiskAlternating, &params, 60 + i as u64).unwrap());
    }
    let (mut reduced, mut disk_bad) = (0, 0);
    for d in disk.iter().filter(|d| d.crossing_count() <= 10) {
        let p = profile(d);
        if p.nugatory != Some(0) || !p.alternating || !p.connected {
            continue;
        }
        reduced += 1;
        if bracket(d).unwrap().breadth() as usize != 4 * p.crossings + 4 {
            disk_bad += 1;
        }
        seen.0.push(d.clone());
    }
    let disk_ok = reduced >= 30 && disk_bad == 0;

    // annular family (s1 -s2 s3)^m
    let mut family_ok = true;
    let mut family = Vec::new();
    for m in 1..=6 {
        let d = closure(4, &[1, -2, 3].repeat(m));
        let c = theorems::Computed::new(&d, 1).unwrap();
        let r = theorems::check_breadth_theorem(&c);
        let b = c.bracket.breadth();
        let ok = if m % 2 == 0 {
            r.verdict == Verdict::Pass && b == 4 * 3 * m as u64
        } else {
            r.verdict == Verdict::HypothesesNotMet
        };
        family_ok &= ok;
        family.push(format!("m={m} B={b} {}{}", r.verdict, if ok { "" } else { " (clause violated)" }));
        seen.0.push(d);
    }

    // closures of s1^(2m): B = 4n - 4k = 0
    let mut twist_ok = true;
    for m in 1..=4 {
        let d = closure(2, &vec![1; 2 * m]);
        let p = profile(&d);
        let b = bracket(&d).unwrap().breadth();
        twist_ok &= p.external_adjacent == Some(2 * m) && b == 0;
        twist_ok &= theorems::check_breadth_theorem(&theorems::Computed::new(&d, 1).unwrap()).verdict == Verdict::Pass;
        seen.0.push(d);
    }
    outcome(
        disk_ok && family_ok && twist_ok,
        format!(
            "disk: {reduced} reduced alternating, {disk_bad} off 4n+4; annular family: {}; s1^(2m) m<=4 breadth 0 with k=n: {twist_ok}",
            family.join(", ")
        ),
    )
}

fn c7_examples(corpus: &Corpus) -> Outcome {
    let flags = LinkAssertions { non_h_split: true, ..Default::default() };
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, stated) in [("fig13", LaurentPoly::zero()), ("fig14", "A - A^-3 - A^-5".parse::<LaurentPoly>().unwrap())]
    {
        let d = &corpus.get(name).unwrap().diagram;
        let b = bracket(d).unwrap();
        let p = profile(d);
        let v = classify_nonalternating(&b, p.crossings, flags, false, !p.z2_class).unwrap();
        let fires = v.fired.iter().any(|f| f.case == CriterionCase::BreadthNotPositiveMultipleOf4);
        ok &= b == stated && fires;
        parts.push(format!("{name}: bracket {b} (stated {stated}), case 1 fires: {fires}"));
    }
    outcome(ok, parts.join("; "))
}

fn c8_pairs(corpus: &Corpus) -> Outcome {
    let get = |n: &str| {
        let d = &corpus.get(n).unwrap().diagram;
        (bracket(d).unwrap(), analysis::z2_class(d))
    };
    let (l4, r4) = (get("fig4_left"), get("fig4_right"));
    let (l5, r5) = (get("fig5_left"), get("fig5_right"));
    let fig4 = l4.0.is_zero() && r4.0.is_zero() && l4.1 && r4.1;
    let fig5 = l5.0.breadth() == r5.0.breadth();
    outcome(
        fig4 && fig5,
        format!(
            "fig4 brackets {} and {} (odd class); fig5 breadths {} and {}",
            l4.0,
            r4.0,
            l5.0.breadth(),
            r5.0.breadth()
        ),
    )
}

fn c9_moves(seen: &mut Seen) -> Outcome {
    let mut g = Generator::new(9);
    let (mut r2_done, mut r2_bad) = (0, 0);
    let mut attempts = 0;
    while r2_done < 100 && attempts < 1000 {
        attempts += 1;
        let w = g.connected_braid_word(2 + attempts % 4, 2 + attempts % 7, false);
        let mut d = AnnularDiagram::from_braid_closure(&w);
        if attempts % 2 == 0 {
            d = g.reembed(&d).unwrap();
        }
        if let Some(r) = g.try_r2(&d).unwrap() {
            r2_done += 1;
            if bracket(&r).unwrap() != bracket(&d).unwrap() {
                r2_bad += 1;
            }
            seen.0.push(r);
        }
    }
    let mut r1_bad = 0;
    for i in 0..50 {
        let w = g.braid_word(2 + i % 4, 1 + i % 8, false);
        let d = AnnularDiagram::from_braid_closure(&w);
        let sign = if i % 2 == 0 { KinkSign::Positive } else { KinkSign::Negative };
        let side = if i % 3 == 0 { Side::Left } else { Side::Right };
        let at = if d.edges().is_empty() {
            Strand::FreeLoop(0)
        } else {
            Strand::Edge(g.rng().gen_range(0..d.edges().len()))
        };
        let k = d.insert_r1(at, sign, side).unwrap();
        let unit = LaurentPoly::framing_unit(if sign == KinkSign::Positive { 1 } else { -1 });
        if bracket(&k).unwrap() != &unit * &bracket(&d).unwrap() {
            r1_bad += 1;
        }
        seen.0.push(k);
    }
    let mut twist_bad = 0;
    for i in 0..20 {
        let w = g.braid_word(2 + i % 3, 2 + i % 5, i % 2 == 0);
        let t = apply_full_twist(&w, i % 4 < 2);
        let (d, dt) = (AnnularDiagram::from_braid_closure(&w), AnnularDiagram::from_braid_closure(&t));
        if bracket(&d).unwrap().breadth() != bracket(&dt).unwrap().breadth() {
            twist_bad += 1;
        }
        seen.0.push(dt);
    }
    outcome(
        r2_done == 100 && r2_bad == 0 && r1_bad == 0 && twist_bad == 0,
        format!("R2: {r2_done} insertions, {r2_bad} changed; R1: 50 kinks, {r1_bad} off -A^(+-3); full twist: 20 closures, {twist_bad} breadth changes"),
    )
}

fn c10_adequacy(seen: &mut Seen) -> Outcome {
    let mut g = Generator::new(10);
    let (mut instances, mut bad) = (0, 0);
    for i in 0..600 {
        let strands = [2, 4, 6, 3, 5][i % 5];
        let len = g.rng().gen_range(strands - 1..=12);
        let d = AnnularDiagram::from_braid_closure(&g.connected_braid_word(strands, len, true));
        let d = if i % 3 == 0 { d } else { g.reembed(&d).unwrap() };
        let p = profile(&d);
        if p.simple == Some(true) && p.alternating && p.connected && !p.z2_class {
            instances += 1;
            if !analysis::is_adequate(&d).unwrap().0 || !analysis::is_adequate(&d).unwrap().1 {
                bad += 1;
            }
            seen.0.push(d);
        }
    }
    outcome(
        instances >= 50 && bad == 0,
        format!("{instances} simple alternating connected Z/2-trivial diagrams, {bad} inadequate"),
    )
}

fn c11_oracle(seen: &Seen) -> Outcome {
    let bad = seen.0.iter().filter(|d| bracket(d).unwrap() != bracket_gray(d).unwrap()).count();
    outcome(bad == 0, format!("{} diagrams, {bad} disagreements between the two evaluators", seen.0.len()))
}

fn c12_performance(corpus: &Corpus) -> Outcome {
    let mut g = Generator::new(12);
    let w = g.connected_braid_word(5, 20, false);
    let d = g.reembed(&AnnularDiagram::from_braid_closure(&w)).unwrap();
    let start = Instant::now();
    let one = skein::bracket_with_threads(&d, 1).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let same_bracket = [2, 3, 8].iter().all(|&t| {
        skein::bracket_with_threads(&d, t).unwrap() == one && skein::bracket_gray_with_threads(&d, t).unwrap() == one
    });
    let report =
        |t| serde_json::to_string(&corpus::verify_corpus(corpus, LinkAssertions::default(), t).unwrap()).unwrap();
    let same_corpus = report(1) == report(4);
    outcome(
        d.crossing_count() == 20 && secs < 120.0 && same_bracket && same_corpus,
        format!("20 crossings in {secs:.2} s single-threaded; same bracket for 1/2/3/8 threads: {same_bracket}; same corpus report for 1/4 threads: {same_corpus}"),
    )
}

fn main() {
    let corpus = Corpus::bundled();
    let mut seen = Seen::default();
    let pop = even_population(4, 200);
    seen.0.extend(pop.iter().cloned());
    let names = [
        "alpha consistency",
        "calibration",
        "vanishing for odd class",
        "breadth upper bound",
        "constant-state counts",
        "breadth equalities",
        "non-alternating examples",
        "figure pairs",
        "move invariance",
        "simple alternating is adequate",
        "evaluator agreement",
        "performance and determinism",
    ];
    let mut unexpected = 0;
    for (i, name) in names.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let o = match n {
            1 => c1_alpha(),
            2 => c2_calibration(),
            3 => c3_vanishing(&mut seen),
            4 => c4_breadth_bound(&pop),
            5 => c5_state_counts(&pop),
            6 => c6_breadth_theorem(&mut seen),
            7 => c7_examples(&corpus),
            8 => c8_pairs(&corpus),
            9 => c9_moves(&mut seen),
            10 => c10_adequacy(&mut seen),
            11 => c11_oracle(&seen),
            _ => c12_performance(&corpus),
        };
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        println!(
            "criterion {n:>2} {}: {name}: {} ({:.2} s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        match (o.pass, known) {
            (false, Some((_, why))) => println!("             expected failure: {why}"),
            (true, Some(_)) => {
                println!("             listed as a known failure but passed");
                unexpected += 1;
            }
            (false, None) => unexpected += 1,
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected acceptance result(s)");
        std::process::exit(1);
    }
}
