//! Text formats: the sectioned diagram file and classical PD codes.
//!
//! ```text
//! [meta]
//! name = trefoil
//! [crossings]
//! 0 = 0 1 2 3        # edge ids in slot order
//! [edges]
//! 0 = 1              # cut parity
//! [free_loops]
//! 1
//! [external]
//! inner = 0.2        # crossing.corner, or `unbounded`
//! outer = 0.0
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{AnnularDiagram, Corner, Crossing, Edge, External, FreeLoop};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Meta,
    Crossings,
    Edges,
    FreeLoops,
    External,
}

fn parse_bit(s: &str, line: usize) -> Result<bool, ParseError> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(err(line, format!("expected parity 0 or 1, found `{s}`"))),
    }
}

fn parse_id(s: &str, line: usize, what: &str) -> Result<u64, ParseError> {
    s.parse().map_err(|_| err(line, format!("bad {what} id `{s}`")))
}

impl AnnularDiagram {
    /// Parses the sectioned diagram format. Ids are renumbered densely in
    /// order of declaration; structural problems that are not syntax errors
    /// (dangling or unused edges) are left for [`AnnularDiagram::validate`].
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut section = Section::None;
        let mut seen_sections: Vec<Section> = Vec::new();
        let mut meta = super::Meta::default();
        let mut crossings: Vec<(u64, [u64; 4], usize)> = Vec::new();
        let mut crossing_ids: HashMap<u64, usize> = HashMap::new();
        let mut edge_ids: HashMap<u64, usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut free_loops = Vec::new();
        let mut external: [Option<(String, usize)>; 2] = [None, None];

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| err(line, "unterminated section header"))?.trim();
                section = match name {
                    "meta" => Section::Meta,
                    "crossings" => Section::Crossings,
                    "edges" => Section::Edges,
                    "free_loops" => Section::FreeLoops,
                    "external" => Section::External,
                    _ => return Err(err(line, format!("unknown section `{name}`"))),
                };
                if seen_sections.contains(&section) {
                    return Err(err(line, format!("duplicate section `{name}`")));
                }
                seen_sections.push(section);
                continue;
            }
            let kv = || -> Result<(&str, &str), ParseError> {
                let (k, v) = content.split_once('=').ok_or_else(|| err(line, "expected `key = value`"))?;
                Ok((k.trim(), v.trim()))
            };
            match section {
                Section::None => return Err(err(line, "content outside of a section")),
                Section::Meta => {
                    let (k, v) = kv()?;
                    let slot = match k {
                        "name" => &mut meta.name,
                        "provenance" => &mut meta.provenance,
                        _ => return Err(err(line, format!("unknown meta key `{k}`"))),
                    };
                    if slot.is_some() {
                        return Err(err(line, format!("duplicate meta key `{k}`")));
                    }
                    *slot = Some(v.to_string());
                }
                Section::Crossings => {
                    let (k, v) = kv()?;
                    let id = parse_id(k, line, "crossing")?;
                    if crossing_ids.insert(id, crossings.len()).is_some() {
                        return Err(err(line, format!("duplicate crossing id {id}")));
                    }
                    let parts: Vec<&str> = v.split_whitespace().collect();
                    if parts.len() != 4 {
                        return Err(err(line, format!("crossing {id} needs 4 edge ids, found {}", parts.len())));
                    }
                    let mut slots = [0u64; 4];
                    for (s, p) in parts.iter().enumerate() {
                        slots[s] = parse_id(p, line, "edge")?;
                    }
                    crossings.push((id, slots, line));
                }
                Section::Edges => {
                    let (k, v) = kv()?;
                    let id = parse_id(k, line, "edge")?;
                    if edge_ids.insert(id, edges.len()).is_some() {
                        return Err(err(line, format!("duplicate edge id {id}")));
                    }
                    edges.push(Edge { parity: parse_bit(v, line)? });
                }
                Section::FreeLoops => {
                    for p in content.split_whitespace() {
                        free_loops.push(FreeLoop { parity: parse_bit(p, line)? });
                    }
                }
                Section::External => {
                    let (k, v) = kv()?;
                    let which = match k {
                        "inner" => 0,
                        "outer" => 1,
                        _ => return Err(err(line, format!("unknown external key `{k}`"))),
                    };
                    if external[which].is_some() {
                        return Err(err(line, format!("duplicate external key `{k}`")));
                    }
                    external[which] = Some((v.to_string(), line));
                }
            }
        }

        let mut out = Vec::with_capacity(crossings.len());
        for (id, slots, line) in &crossings {
            let mut mapped = [0usize; 4];
            for (s, e) in slots.iter().enumerate() {
                mapped[s] = *edge_ids
                    .get(e)
                    .ok_or_else(|| err(*line, format!("crossing {id} refers to undeclared edge {e}")))?;
            }
            out.push(Crossing { slots: mapped });
        }
        let mut ext = [External::Unbounded; 2];
        for (which, entry) in external.iter().enumerate() {
            let Some((v, line)) = entry else { continue };
            if v == "unbounded" {
                continue;
            }
            let (c, k) =
                v.split_once('.').ok_or_else(|| err(*line, format!("expected `crossing.corner`, found `{v}`")))?;
            let c = parse_id(c.trim(), *line, "crossing")?;
            let k: u8 = k
                .trim()
                .parse()
                .ok()
                .filter(|k| *k < 4)
                .ok_or_else(|| err(*line, format!("bad corner index in `{v}`")))?;
            let c = *crossing_ids.get(&c).ok_or_else(|| err(*line, format!("unknown crossing {c}")))?;
            ext[which] = External::Corner(Corner::new(c, k));
        }
        let mut d = AnnularDiagram::from_parts(out, edges, free_loops, ext);
        d.meta = meta;
        Ok(d)
    }

    /// Writes the sectioned format; `parse(to_text(d)) == d` for every diagram
    /// whose ids are dense.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.meta.name.is_some() || self.meta.provenance.is_some() {
            s.push_str("[meta]\n");
            let clean = |v: &str| v.replace(['\n', '\r', '#'], " ");
            if let Some(n) = &self.meta.name {
                let _ = writeln!(s, "name = {}", clean(n));
            }
            if let Some(p) = &self.meta.provenance {
                let _ = writeln!(s, "provenance = {}", clean(p));
            }
        }
        s.push_str("[crossings]\n");
        for (i, c) in self.crossings.iter().enumerate() {
            let _ = writeln!(s, "{i} = {} {} {} {}", c.slots[0], c.slots[1], c.slots[2], c.slots[3]);
        }
        s.push_str("[edges]\n");
        for (i, e) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "{i} = {}", e.parity as u8);
        }
        s.push_str("[free_loops]\n");
        for l in &self.free_loops {
            let _ = writeln!(s, "{}", l.parity as u8);
        }
        s.push_str("[external]\n");
        for (key, x) in ["inner", "outer"].iter().zip(self.external) {
            match x {
                External::Corner(c) => {
                    let _ = writeln!(s, "{key} = {c}");
                }
                External::Unbounded => {
                    let _ = writeln!(s, "{key} = unbounded");
                }
            }
        }
        s
    }
}

/// Parses `X[a,b,c,d] X[...] ...` (separators between crossings are free).
pub fn parse_pd(text: &str) -> Result<Vec<[i64; 4]>, String> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    rest = rest.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')).unwrap_or(rest);
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            return Ok(out);
        }
        let body = rest.strip_prefix("X[").ok_or_else(|| format!("expected `X[` at `{}`", head(rest)))?;
        let close = body.find(']').ok_or("unterminated `X[`")?;
        let labels: Vec<&str> = body[..close].split(',').map(str::trim).collect();
        if labels.len() != 4 {
            return Err(format!("crossing `X[{}]` needs 4 labels", &body[..close]));
        }
        let mut x = [0i64; 4];
        for (i, l) in labels.iter().enumerate() {
            x[i] = l.parse().map_err(|_| format!("bad label `{l}`"))?;
        }
        out.push(x);
        rest = &body[close + 1..];
    }
}

fn head(s: &str) -> &str {
    let end = s.char_indices().nth(12).map_or(s.len(), |(i, _)| i);
    &s[..end]
}
