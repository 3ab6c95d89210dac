//! Named diagrams with expected values, and relations between them.
//!
//! The text format has one section per entry or relation:
//!
//! ```text
//! [entry fig13]
//! recipe = braid 4: s1 s2 s3 | punctures 0.1 2.3   # or: file = some.diagram
//! basis = published           # default basis for the expectations below
//! note = where the diagram comes from
//! bracket = 0
//! alternating = 0 @derived    # per-value basis override
//!
//! [relation fig4]
//! kind = both-zero
//! members = fig4_left fig4_right
//! basis = published
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::DiagramProfile;
use crate::diagram::AnnularDiagram;
use crate::laurent::LaurentPoly;
use crate::recipe::Recipe;
use crate::skein::SkeinError;
use crate::theorems::{self, LinkAssertions, VerificationReport};

const BUNDLED: &str = include_str!("../corpus/corpus.txt");

/// How an expected value is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Stated in the published source the entry transcribes.
    Published,
    /// Immediate from the definitions.
    Elementary,
    /// Computed here and pinned as a regression value.
    Derived,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Published => "published",
            Basis::Elementary => "elementary",
            Basis::Derived => "derived",
        }
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Basis::Published, Basis::Elementary, Basis::Derived]
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| format!("unknown basis `{s}` (expected published, elementary or derived)"))
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Bracket,
    Breadth,
    Crossings,
    Connected,
    Alternating,
    InDisk,
    Z2,
    Nugatory,
    ExternalAdjacent,
    Simple,
    QuasiSimple,
    PlusAdequate,
    MinusAdequate,
}

impl Field {
    const ALL: [Field; 13] = [
        Field::Bracket,
        Field::Breadth,
        Field::Crossings,
        Field::Connected,
        Field::Alternating,
        Field::InDisk,
        Field::Z2,
        Field::Nugatory,
        Field::ExternalAdjacent,
        Field::Simple,
        Field::QuasiSimple,
        Field::PlusAdequate,
        Field::MinusAdequate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Field::Bracket => "bracket",
            Field::Breadth => "breadth",
            Field::Crossings => "crossings",
            Field::Connected => "connected",
            Field::Alternating => "alternating",
            Field::InDisk => "in_disk",
            Field::Z2 => "z2",
            Field::Nugatory => "nugatory",
            Field::ExternalAdjacent => "external_adjacent",
            Field::Simple => "simple",
            Field::QuasiSimple => "quasi_simple",
            Field::PlusAdequate => "plus_adequate",
            Field::MinusAdequate => "minus_adequate",
        }
    }

    /// The value of this field on a computed diagram, in the corpus notation.
    pub fn read(self, bracket: &LaurentPoly, p: &DiagramProfile) -> String {
        let bit = |b: bool| if b { "1" } else { "0" }.to_string();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        match self {
            Field::Bracket => bracket.to_string(),
            Field::Breadth => bracket.breadth().to_string(),
            Field::Crossings => p.crossings.to_string(),
            Field::Connected => bit(p.connected),
            Field::Alternating => bit(p.alternating),
            Field::InDisk => bit(p.in_disk),
            Field::Z2 => bit(p.z2_class),
            Field::Nugatory => opt(p.nugatory.map(|v| v.to_string())),
            Field::ExternalAdjacent => opt(p.external_adjacent.map(|v| v.to_string())),
            Field::Simple => opt(p.simple.map(bit)),
            Field::QuasiSimple => opt(p.quasi_simple.map(bit)),
            Field::PlusAdequate => bit(p.plus_adequate),
            Field::MinusAdequate => bit(p.minus_adequate),
        }
    }

    /// Canonical spelling of an expected value, so that e.g. `A - A^-3`
    /// and `A^1 - A^-3` compare equal.
    fn normalise(self, value: &str) -> Result<String, String> {
        match self {
            Field::Bracket => value
                .parse::<LaurentPoly>()
                .map(|p| p.to_string())
                .map_err(|e| format!("bad polynomial `{value}`: {e}")),
            Field::Breadth | Field::Crossings => {
                value.parse::<u64>().map(|v| v.to_string()).map_err(|_| format!("expected a count, found `{value}`"))
            }
            Field::Nugatory | Field::ExternalAdjacent => match value {
                "-" => Ok(value.into()),
                _ => value
                    .parse::<u64>()
                    .map(|v| v.to_string())
                    .map_err(|_| format!("expected a count or `-`, found `{value}`")),
            },
            Field::Simple | Field::QuasiSimple if value == "-" => Ok(value.into()),
            _ => match value {
                "0" | "1" => Ok(value.into()),
                _ => Err(format!("expected 0 or 1, found `{value}`")),
            },
        }
    }
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| format!("unknown key `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub field: Field,
    pub value: String,
    pub basis: Basis,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    /// The recipe text, or the file path the diagram was read from.
    pub source: String,
    pub diagram: AnnularDiagram,
    pub note: String,
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// All members have the same bracket.
    EqualBracket,
    /// Brackets agree up to a factor `(-A^3)^k`.
    EqualUpToFraming,
    EqualBreadth,
    BothZero,
}

impl RelationKind {
    const ALL: [RelationKind; 4] = [
        RelationKind::EqualBracket,
        RelationKind::EqualUpToFraming,
        RelationKind::EqualBreadth,
        RelationKind::BothZero,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::EqualBracket => "equal-bracket",
            RelationKind::EqualUpToFraming => "equal-up-to-framing",
            RelationKind::EqualBreadth => "equal-breadth",
            RelationKind::BothZero => "both-zero",
        }
    }

    fn holds(self, brackets: &[&LaurentPoly]) -> bool {
        let first = brackets[0];
        match self {
            RelationKind::EqualBracket => brackets.iter().all(|b| *b == first),
            RelationKind::EqualUpToFraming => {
                brackets.iter().all(|b| (b.is_zero() && first.is_zero()) || b.framing_ratio(first).is_some())
            }
            RelationKind::EqualBreadth => brackets.iter().all(|b| b.breadth() == first.breadth()),
            RelationKind::BothZero => brackets.iter().all(|b| b.is_zero()),
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub kind: RelationKind,
    pub members: Vec<String>,
    pub basis: Basis,
    pub note: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("corpus line {line}: {msg}")]
pub struct CorpusError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    /// Sorted by name.
    pub entries: Vec<CorpusEntry>,
    pub relations: Vec<Relation>,
}

enum Pending {
    Entry { name: String, line: usize, keys: Vec<(String, String, usize)> },
    Relation { name: String, line: usize, keys: Vec<(String, String, usize)> },
}

impl Corpus {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED, None).expect("the bundled corpus parses")
    }

    /// Parses the corpus format; `file = ...` paths resolve against `dir`.
    pub fn parse(text: &str, dir: Option<&Path>) -> Result<Self, CorpusError> {
        let mut sections = Vec::new();
        let mut current: Option<Pending> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(header) = content.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
                sections.extend(current.take());
                let err = || CorpusError { line, msg: format!("bad section header `{content}`") };
                let (kind, name) = header.trim().split_once(' ').ok_or_else(err)?;
                let name = name.trim().to_string();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err());
                }
                current = Some(match kind {
                    "entry" => Pending::Entry { name, line, keys: Vec::new() },
                    "relation" => Pending::Relation { name, line, keys: Vec::new() },
                    _ => return Err(err()),
                });
                continue;
            }
            let (k, v) = content
                .split_once('=')
                .ok_or_else(|| CorpusError { line, msg: format!("expected `key = value`, found `{content}`") })?;
            match current.as_mut() {
                Some(Pending::Entry { keys, .. } | Pending::Relation { keys, .. }) => {
                    keys.push((k.trim().to_string(), v.trim().to_string(), line))
                }
                None => return Err(CorpusError { line, msg: "key outside a section".into() }),
            }
        }
        sections.extend(current);

        let mut entries = Vec::new();
        let mut relations = Vec::new();
        for s in sections {
            match s {
                Pending::Entry { name, line, keys } => entries.push(build_entry(name, line, keys, dir)?),
                Pending::Relation { name, line, keys } => relations.push(build_relation(name, line, keys)?),
            }
        }
        entries.sort_by(|a: &CorpusEntry, b| a.name.cmp(&b.name));
        if let Some(w) = entries.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(CorpusError { line: 0, msg: format!("duplicate entry `{}`", w[0].name) });
        }
        for r in &relations {
            if let Some(m) = r.members.iter().find(|m| entries.binary_search_by(|e| e.name.as_str().cmp(m)).is_err()) {
                return Err(CorpusError { line: 0, msg: format!("relation `{}` names unknown entry `{m}`", r.name) });
            }
        }
        Ok(Self { entries, relations })
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.binary_search_by(|e| e.name.as_str().cmp(name)).ok().map(|i| &self.entries[i])
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }
}

fn build_entry(
    name: String,
    line: usize,
    keys: Vec<(String, String, usize)>,
    dir: Option<&Path>,
) -> Result<CorpusEntry, CorpusError> {
    let mut source = None;
    let mut basis = None;
    let mut note = String::new();
    let mut raw_expected = Vec::new();
    for (k, v, l) in keys {
        let err = |msg: String| CorpusError { line: l, msg };
        match k.as_str() {
            "recipe" | "file" if source.is_some() => return Err(err(format!("entry `{name}` has two diagrams"))),
            "recipe" => {
                let d = Recipe::parse(&v).and_then(|r| r.build()).map_err(|e| err(e.to_string()))?;
                source = Some((v, d));
            }
            "file" => {
                let path = dir.map_or_else(|| Path::new(&v).to_path_buf(), |d| d.join(&v));
                let text = std::fs::read_to_string(&path).map_err(|e| err(format!("{}: {e}", path.display())))?;
                let d = AnnularDiagram::parse(&text).map_err(|e| err(format!("{}: {e}", path.display())))?;
                source = Some((v, d));
            }
            "basis" => basis = Some(v.parse::<Basis>().map_err(err)?),
            "note" => note = v,
            _ => {
                let field = k.parse::<Field>().map_err(err)?;
                raw_expected.push((field, v, l));
            }
        }
    }
    let (source, diagram) = source.ok_or(CorpusError { line, msg: format!("entry `{name}` has no recipe or file") })?;
    let mut expected = Vec::new();
    for (field, v, l) in raw_expected {
        let err = |msg: String| CorpusError { line: l, msg };
        let (value, b) = match v.rsplit_once('@') {
            Some((value, b)) => (value.trim().to_string(), Some(b.trim().parse::<Basis>().map_err(err)?)),
            None => (v, None),
        };
        let basis = b.or(basis).ok_or_else(|| err(format!("no basis for `{}` in entry `{name}`", field.as_str())))?;
        expected.push(Expectation { field, value: field.normalise(&value).map_err(err)?, basis });
    }
    let diagram = diagram.with_name(name.clone());
    Ok(CorpusEntry { name, source, diagram, note, expected })
}

fn build_relation(name: String, line: usize, keys: Vec<(String, String, usize)>) -> Result<Relation, CorpusError> {
    let (mut kind, mut members, mut basis, mut note) = (None, Vec::new(), None, String::new());
    for (k, v, l) in keys {
        let err = |msg: String| CorpusError { line: l, msg };
        match k.as_str() {
            "kind" => {
                kind = Some(
                    RelationKind::ALL
                        .into_iter()
                        .find(|r| r.as_str() == v)
                        .ok_or_else(|| err(format!("unknown relation kind `{v}`")))?,
                )
            }
            "members" => members = v.split_whitespace().map(String::from).collect(),
            "basis" => basis = Some(v.parse::<Basis>().map_err(err)?),
            "note" => note = v,
            _ => return Err(err(format!("unknown key `{k}` in relation `{name}`"))),
        }
    }
    let missing = |what: &str| CorpusError { line, msg: format!("relation `{name}` has no {what}") };
    let kind = kind.ok_or_else(|| missing("kind"))?;
    let basis = basis.ok_or_else(|| missing("basis"))?;
    if members.len() < 2 {
        return Err(missing("pair of members"));
    }
    Ok(Relation { name, kind, members, basis, note })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationOutcome {
    pub field: Field,
    pub basis: Basis,
    pub expected: String,
    pub found: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub source: String,
    pub note: String,
    pub expectations: Vec<ExpectationOutcome>,
    pub report: VerificationReport,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.expectations.iter().all(|e| e.ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationOutcome {
    pub name: String,
    pub kind: RelationKind,
    pub basis: Basis,
    pub note: String,
    /// Member name and its bracket.
    pub members: Vec<(String, String)>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub relations: Vec<RelationOutcome>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed) && self.relations.iter().all(|r| r.ok)
    }
}

pub fn check_entry(entry: &CorpusEntry, flags: LinkAssertions, threads: usize) -> Result<EntryReport, SkeinError> {
    let report = theorems::verify_all(&entry.diagram, flags, threads)?;
    let expectations = entry
        .expected
        .iter()
        .map(|e| {
            let found = e.field.read(&report.bracket, &report.profile);
            ExpectationOutcome {
                field: e.field,
                basis: e.basis,
                ok: found == e.value,
                expected: e.value.clone(),
                found,
            }
        })
        .collect();
    Ok(EntryReport {
        name: entry.name.clone(),
        source: entry.source.clone(),
        note: entry.note.clone(),
        expectations,
        report,
    })
}

/// Verifies every entry, `threads` entries at a time, then every relation.
/// The report is ordered by entry name whatever the thread count.
pub fn verify_corpus(corpus: &Corpus, flags: LinkAssertions, threads: usize) -> Result<CorpusReport, SkeinError> {
    let next = Mutex::new(0usize);
    let results: Mutex<Vec<Option<Result<EntryReport, SkeinError>>>> =
        Mutex::new((0..corpus.entries.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, corpus.entries.len().max(1)) {
            s.spawn(|| loop {
                let i = {
                    let mut n = next.lock().unwrap();
                    *n += 1;
                    *n - 1
                };
                let Some(entry) = corpus.entries.get(i) else { break };
                let r = check_entry(entry, flags, 1);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let entries = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every entry was checked"))
        .collect::<Result<Vec<_>, _>>()?;
    let relations = corpus
        .relations
        .iter()
        .map(|rel| {
            let found: Vec<&EntryReport> = rel
                .members
                .iter()
                .map(|m| entries.iter().find(|e| &e.name == m).expect("members were resolved"))
                .collect();
            let brackets: Vec<&LaurentPoly> = found.iter().map(|e| &e.report.bracket).collect();
            RelationOutcome {
                name: rel.name.clone(),
                kind: rel.kind,
                basis: rel.basis,
                note: rel.note.clone(),
                members: found.iter().map(|e| (e.name.clone(), e.report.bracket.to_string())).collect(),
                ok: rel.kind.holds(&brackets),
            }
        })
        .collect();
    Ok(CorpusReport { entries, relations })
}

#[cfg(test)]
mod tests;
