//! Plain-text report layout. Field order is fixed so output can be diffed.

use std::fmt::Write as _;

use annular_skein::analysis::{Ambiguity, DiagramProfile};
use annular_skein::corpus::{CorpusReport, EntryReport};
use annular_skein::diagram::AnnularDiagram;
use annular_skein::theorems::{CheckRecord, NonalternatingVerdict, Verdict, VerificationReport};

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn profile(p: &DiagramProfile) -> String {
    let flagged: Vec<String> = p
        .flagged
        .iter()
        .map(|(c, a)| {
            let a = match a {
                Ambiguity::Tie => "tie",
                Ambiguity::EssentialLoop => "essential-loop",
            };
            format!("{c}:{a}")
        })
        .collect();
    let rows: [(&str, String); 20] = [
        ("name", p.name.clone().unwrap_or_else(|| "-".into())),
        ("crossings", p.crossings.to_string()),
        ("free_loops", p.free_loops.to_string()),
        ("faces", p.faces.to_string()),
        ("components", p.components.to_string()),
        ("connected", bit(p.connected).into()),
        ("alternating", bit(p.alternating).into()),
        ("in_disk", bit(p.in_disk).into()),
        ("z2", bit(p.z2_class).into()),
        ("s_plus", p.s_plus.to_string()),
        ("p_plus", p.p_plus.to_string()),
        ("s_minus", p.s_minus.to_string()),
        ("p_minus", p.p_minus.to_string()),
        ("plus_adequate", bit(p.plus_adequate).into()),
        ("minus_adequate", bit(p.minus_adequate).into()),
        ("nugatory", opt(p.nugatory)),
        ("external_adjacent", opt(p.external_adjacent)),
        ("simple", opt(p.simple.map(bit))),
        ("quasi_simple", opt(p.quasi_simple.map(bit))),
        ("flagged", if flagged.is_empty() { "-".into() } else { flagged.join(" ") }),
    ];
    rows.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

fn pairs<T: ToString>(items: &[(String, T)]) -> String {
    items.iter().map(|(k, v)| format!("{k}={}", v.to_string())).collect::<Vec<_>>().join(" ")
}

pub fn check(c: &CheckRecord) -> String {
    let hyp: Vec<(String, &str)> = c.hypotheses.iter().map(|(k, v)| (k.clone(), bit(*v))).collect();
    format!(
        "check {}: {} | hypotheses {} | claim {} | {}",
        c.id,
        c.verdict,
        if hyp.is_empty() { "-".into() } else { pairs(&hyp) },
        c.claim,
        pairs(&c.quantities)
    )
}

pub fn classifier(v: &NonalternatingVerdict) -> String {
    let mut s = format!("classifier: breadth {} claimed crossings {}", v.breadth, v.n_claim);
    if !v.hypotheses_met {
        s.push_str(" | hypotheses not met");
    } else if v.fired.is_empty() {
        s.push_str(" | no case fires");
    }
    for f in &v.fired {
        let _ = write!(s, " | {}: {}", f.case, f.conclusion);
    }
    s.push('\n');
    s
}

/// Diagram, constant-state table and the failing checks.
pub fn diagnostic(r: &VerificationReport, d: &AnnularDiagram) -> String {
    let p = &r.profile;
    let mut s = format!("diagnostic for {}:\n", r.name);
    for line in d.to_text().lines() {
        let _ = writeln!(s, "  | {line}");
    }
    let _ = writeln!(s, "  all-plus state: trivial={} essential={}", p.s_plus, p.p_plus);
    let _ = writeln!(s, "  all-minus state: trivial={} essential={}", p.s_minus, p.p_minus);
    for c in r.failures() {
        let _ = writeln!(s, "  failed {}: {} with {}", c.id, c.claim, pairs(&c.quantities));
    }
    s
}

pub fn report(r: &VerificationReport, d: &AnnularDiagram, verdict: Option<&NonalternatingVerdict>) -> String {
    let mut s = format!("diagram: {}\n", r.name);
    let _ =
        writeln!(s, "assumptions: {}", if r.assumptions.is_empty() { "none".into() } else { r.assumptions.join("; ") });
    let _ = writeln!(s, "bracket: {}", r.bracket);
    for c in &r.checks {
        s.push_str(&check(c));
        s.push('\n');
    }
    if let Some(v) = verdict {
        s.push_str(&classifier(v));
    }
    if !r.passed() {
        s.push_str(&diagnostic(r, d));
    }
    let _ = writeln!(s, "result: {}", if r.passed() { "pass" } else { "FAIL" });
    s
}

fn entry(e: &EntryReport, d: &AnnularDiagram) -> String {
    let mut s = format!("entry {}: {}\n", e.name, if e.passed() { "pass" } else { "FAIL" });
    let _ = writeln!(s, "  source: {}", e.source);
    if !e.note.is_empty() {
        let _ = writeln!(s, "  note: {}", e.note);
    }
    let _ = writeln!(s, "  bracket: {}", e.report.bracket);
    for x in &e.expectations {
        let mark = if x.ok { "ok" } else { "MISMATCH" };
        let _ = writeln!(s, "  expect {} = {} ({}): {mark}, found {}", x.field.as_str(), x.expected, x.basis, x.found);
    }
    for c in &e.report.checks {
        if c.verdict != Verdict::HypothesesNotMet || !e.report.passed() {
            let _ = writeln!(s, "  {}", check(c));
        }
    }
    if !e.passed() {
        for line in diagnostic(&e.report, d).lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    s
}

pub fn corpus(r: &CorpusReport, diagrams: &[&AnnularDiagram]) -> String {
    let mut s = String::new();
    for (e, d) in r.entries.iter().zip(diagrams) {
        s.push_str(&entry(e, d));
    }
    for rel in &r.relations {
        let members: Vec<String> = rel.members.iter().map(|(n, b)| format!("{n}={b}")).collect();
        let _ = writeln!(
            s,
            "relation {} {} ({}): {} | {}",
            rel.name,
            rel.kind,
            rel.basis,
            if rel.ok { "pass" } else { "FAIL" },
            members.join(" ")
        );
    }
    let failed = r.entries.iter().filter(|e| !e.passed()).count() + r.relations.iter().filter(|x| !x.ok).count();
    let _ = writeln!(
        s,
        "summary: {} entries, {} relations, {failed} failing; result: {}",
        r.entries.len(),
        r.relations.len(),
        if r.passed() { "pass" } else { "FAIL" }
    );
    s
}
