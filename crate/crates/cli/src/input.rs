//! Turns a command-line diagram argument into a diagram.

use std::path::Path;

use annular_skein::corpus::Corpus;
use annular_skein::diagram::AnnularDiagram;
use annular_skein::recipe::Recipe;

use crate::Failure;

/// Accepts `corpus:NAME`, a path to a diagram file, or an inline recipe
/// such as `braid 4: s1 -s2 s3`.
pub fn load(arg: &str, corpus: &Corpus) -> Result<AnnularDiagram, Failure> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        return corpus
            .get(name)
            .map(|e| e.diagram.clone())
            .ok_or_else(|| Failure::Input(format!("no corpus entry `{name}`")));
    }
    let path = Path::new(arg);
    if path.is_file() {
        return read_file(path);
    }
    match Recipe::parse(arg) {
        Ok(r) => r.build().map(|d| d.with_name(arg)).map_err(|e| Failure::Input(e.to_string())),
        Err(_) if !looks_like_recipe(arg) => Err(Failure::Input(format!("{arg}: no such file"))),
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

pub fn read_file(path: &Path) -> Result<AnnularDiagram, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let line = e.as_bytes()[..e.utf8_error().valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        Failure::Input(format!("{}: line {line}: not UTF-8 text", path.display()))
    })?;
    let d = AnnularDiagram::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(match d.meta.name {
        Some(_) => d,
        None => d.with_name(path.display().to_string()),
    })
}

fn looks_like_recipe(arg: &str) -> bool {
    ["braid", "pd:", "loops:"].iter().any(|p| arg.trim_start().starts_with(p))
}
