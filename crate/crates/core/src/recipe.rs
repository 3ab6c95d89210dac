//! One-line builder recipes, so small diagrams need no file.
//!
//! ```text
//! braid 4: s1 -s2 s3                 closure of a braid word
//! pd: X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]   classical PD code, placed in a disk
//! loops: 1 0                         free loops by cut parity
//! ```
//!
//! Stages after `|` transform the base diagram, left to right:
//! `punctures C.K C.K` moves the two punctures into the faces of the given
//! corners, `disk C.K` puts both in one face, `mirror`, `twist +` (braids
//! only, before any other stage), `kink E + left` or `kink loop0 - right`,
//! `r2 E E` or `r2 E E over`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{
    apply_full_twist, parse_pd, AnnularDiagram, BraidWord, Corner, DiagramError, KinkSign, R2Options, Side, Strand,
};

#[derive(Debug, Error)]
pub enum RecipeError {
    #[error("recipe `{recipe}`: {msg}")]
    Syntax { recipe: String, msg: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Braid(BraidWord),
    Pd(Vec<[i64; 4]>),
    Loops(Vec<bool>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    Punctures(Corner, Corner),
    Disk(Corner),
    Mirror,
    Twist(bool),
    Kink(Strand, KinkSign, Side),
    R2(usize, usize, bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub base: Base,
    pub stages: Vec<Stage>,
    source: String,
}

impl Recipe {
    pub fn parse(text: &str) -> Result<Self, RecipeError> {
        let source = text.split_whitespace().collect::<Vec<_>>().join(" ");
        let fail = |msg: String| RecipeError::Syntax { recipe: source.clone(), msg };
        let mut parts = source.split('|').map(str::trim);
        let base = parse_base(parts.next().unwrap_or("")).map_err(fail)?;
        let mut stages = Vec::new();
        for part in parts {
            let stage = parse_stage(part).map_err(fail)?;
            if matches!(stage, Stage::Twist(_)) && (!matches!(base, Base::Braid(_)) || !stages.is_empty()) {
                return Err(fail("`twist` applies only to a braid, before other stages".into()));
            }
            stages.push(stage);
        }
        Ok(Self { base, stages, source })
    }

    pub fn build(&self) -> Result<AnnularDiagram, RecipeError> {
        let mut stages = self.stages.iter().peekable();
        let mut d = match &self.base {
            Base::Braid(w) => {
                let mut w = w.clone();
                while let Some(Stage::Twist(positive)) = stages.peek() {
                    w = apply_full_twist(&w, *positive);
                    stages.next();
                }
                AnnularDiagram::from_braid_closure(&w)
            }
            Base::Pd(code) => AnnularDiagram::from_disk_pd(code, None)?,
            Base::Loops(parities) => AnnularDiagram::from_free_loops(parities),
        };
        for stage in stages {
            d = match *stage {
                Stage::Punctures(a, b) => d.reembed(a, b)?,
                Stage::Disk(c) => d.in_disk_at(c)?,
                Stage::Mirror => d.mirror(),
                Stage::Twist(_) => unreachable!("rejected by the parser"),
                Stage::Kink(at, sign, side) => d.insert_r1(at, sign, side)?,
                Stage::R2(e1, e2, second_over) => d.insert_r2(e1, e2, R2Options { face: None, second_over })?,
            };
        }
        Ok(d)
    }
}

impl FromStr for Recipe {
    type Err = RecipeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Recipe::parse(s)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn parse_base(text: &str) -> Result<Base, String> {
    if let Some(rest) = text.strip_prefix("braid") {
        let (m, letters) = rest.split_once(':').ok_or("expected `braid M: letters`")?;
        let m: usize = m.trim().parse().map_err(|_| format!("bad strand count `{}`", m.trim()))?;
        let letters = letters.split_whitespace().map(parse_letter).collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(m, letters).map(Base::Braid).map_err(|e| e.to_string())
    } else if let Some(rest) = text.strip_prefix("pd:") {
        parse_pd(rest).map(Base::Pd)
    } else if let Some(rest) = text.strip_prefix("loops:") {
        rest.split_whitespace()
            .map(|p| match p {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(format!("loop parity must be 0 or 1, found `{p}`")),
            })
            .collect::<Result<_, _>>()
            .map(Base::Loops)
    } else {
        Err("expected `braid M: ...`, `pd: ...` or `loops: ...`".into())
    }
}

fn parse_letter(l: &str) -> Result<i32, String> {
    let (sign, body) = match l.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, l),
    };
    body.strip_prefix('s')
        .and_then(|g| g.parse::<i32>().ok())
        .filter(|g| *g > 0)
        .map(|g| sign * g)
        .ok_or_else(|| format!("bad braid letter `{l}`"))
}

fn parse_sign(t: Option<&str>) -> Result<bool, String> {
    match t {
        Some("+") => Ok(true),
        Some("-") => Ok(false),
        other => Err(format!("expected `+` or `-`, found `{}`", other.unwrap_or(""))),
    }
}

fn parse_stage(text: &str) -> Result<Stage, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let corner = |w: &str| w.parse::<Corner>();
    let edge = |w: &str| w.parse::<usize>().map_err(|_| format!("bad edge id `{w}`"));
    match words.as_slice() {
        ["punctures", a, b] => Ok(Stage::Punctures(corner(a)?, corner(b)?)),
        ["disk", c] => Ok(Stage::Disk(corner(c)?)),
        ["mirror"] => Ok(Stage::Mirror),
        ["twist", s] => Ok(Stage::Twist(parse_sign(Some(s))?)),
        ["kink", at, s, side] => {
            let at = match at.strip_prefix("loop") {
                Some(i) => Strand::FreeLoop(i.parse().map_err(|_| format!("bad loop `{at}`"))?),
                None => Strand::Edge(edge(at)?),
            };
            let sign = if parse_sign(Some(s))? { KinkSign::Positive } else { KinkSign::Negative };
            let side = match *side {
                "left" => Side::Left,
                "right" => Side::Right,
                _ => return Err(format!("expected `left` or `right`, found `{side}`")),
            };
            Ok(Stage::Kink(at, sign, side))
        }
        ["r2", a, b] => Ok(Stage::R2(edge(a)?, edge(b)?, false)),
        ["r2", a, b, "over"] => Ok(Stage::R2(edge(a)?, edge(b)?, true)),
        _ => Err(format!("unknown stage `{text}`")),
    }
}
