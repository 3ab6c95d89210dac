mod input;
mod render;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use annular_skein::corpus::{self, Corpus};
use annular_skein::diagram::AnnularDiagram;
use annular_skein::generate::{self, Family, FamilyParams};
use annular_skein::skein::{self, Orientation, SkeinError};
use annular_skein::theorems::{self, LinkAssertions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "askein", version, about = "Kauffman bracket and breadth checks for annular link diagrams")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for state sums and corpus runs.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    /// Seed for `generate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Mirror every input diagram first.
    #[arg(long, global = true)]
    mirror: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// JSON.
    Structured,
}

/// A diagram: `corpus:NAME`, a diagram file, or a recipe such as
/// "braid 4: s1 -s2 s3".
type InputArg = String;

#[derive(Subcommand)]
enum Command {
    /// Check a diagram for structural violations.
    Validate { input: InputArg },
    /// Print the Kauffman bracket and its breadth.
    Bracket {
        input: InputArg,
        /// Also print the Jones polynomial in the variable A.
        #[arg(long)]
        jones: bool,
        /// One 0/1 per component: 0 reverses that component's direction.
        #[arg(long, requires = "jones")]
        orientation: Option<String>,
    },
    /// Print the diagram profile.
    Props { input: InputArg },
    /// Run every check on a diagram, or on a corpus.
    Verify(VerifyArgs),
    /// Write seeded random diagrams.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Diagram to verify; omit with --corpus or --corpus-file.
    #[arg(required_unless_present_any = ["corpus", "corpus_file"], conflicts_with_all = ["corpus", "corpus_file"])]
    input: Option<InputArg>,
    /// Verify the bundled corpus.
    #[arg(long, conflicts_with = "corpus_file")]
    corpus: bool,
    /// Verify a corpus file.
    #[arg(long)]
    corpus_file: Option<PathBuf>,
    /// Assert the link is not split by a trivial sphere or a Heegaard torus.
    #[arg(long)]
    non_h_split: bool,
    /// Assert the link lies in a 3-ball.
    #[arg(long, conflicts_with = "not_in_3ball")]
    in_3ball: bool,
    #[arg(long)]
    not_in_3ball: bool,
    /// Assert the link does not meet a non-separating sphere in two points.
    #[arg(long)]
    no_double_sphere: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// alternating-braid-closures, random-braid-closures, disk-alternating,
    /// parallel-cores or r-move-perturbations.
    family: String,
    #[arg(long, default_value_t = 3)]
    strands: usize,
    /// Braid length, number of cores, or number of moves.
    #[arg(long, visible_alias = "size", default_value_t = 6)]
    length: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Diagram to perturb, for r-move-perturbations.
    #[arg(long)]
    base: Option<InputArg>,
    /// Directory to write `NAME.diagram` files into; stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors that end a command before it produces a result.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Cap(String),
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::TooManyCrossings { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Ctx {
    format: Format,
    threads: usize,
    mirror: bool,
    corpus: Corpus,
    out: String,
}

impl Ctx {
    fn load(&self, arg: &str) -> Result<AnnularDiagram, Failure> {
        let d = input::load(arg, &self.corpus)?;
        Ok(if self.mirror { d.mirror() } else { d })
    }

    fn emit(&mut self, text: String, value: &impl Serialize) {
        match self.format {
            Format::Text => self.out.push_str(&text),
            Format::Structured => {
                self.out.push_str(&serde_json::to_string_pretty(value).expect("reports serialise"));
                self.out.push('\n');
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        format: cli.format,
        threads: cli.threads as usize,
        mirror: cli.mirror,
        corpus: Corpus::bundled(),
        out: String::new(),
    };
    let status = match run(&mut ctx, cli.command, cli.seed) {
        Ok(status) => status,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    };
    let _ = std::io::stdout().write_all(ctx.out.as_bytes());
    ExitCode::from(status)
}

fn run(ctx: &mut Ctx, command: Command, seed: u64) -> Result<u8, Failure> {
    match command {
        Command::Validate { input } => validate(ctx, &input),
        Command::Bracket { input, jones, orientation } => bracket(ctx, &input, jones, orientation.as_deref()),
        Command::Props { input } => {
            let d = ctx.load(&input)?;
            let p = annular_skein::analysis::profile(&d).map_err(|e| Failure::Input(e.to_string()))?;
            ctx.emit(render::profile(&p), &p);
            Ok(0)
        }
        Command::Verify(args) => verify(ctx, args),
        Command::Generate(args) => generate(ctx, args, seed),
    }
}

#[derive(Serialize)]
struct Validation {
    name: Option<String>,
    valid: bool,
    violations: Vec<String>,
}

fn validate(ctx: &mut Ctx, arg: &str) -> Result<u8, Failure> {
    let d = ctx.load(arg)?;
    let violations: Vec<String> = d.validate().iter().map(ToString::to_string).collect();
    let text = if violations.is_empty() {
        "OK\n".to_string()
    } else {
        violations.iter().map(|v| format!("violation: {v}\n")).collect()
    };
    let valid = violations.is_empty();
    ctx.emit(text, &Validation { name: d.meta.name.clone(), valid, violations });
    Ok(if valid { 0 } else { 1 })
}

#[derive(Serialize)]
struct BracketOut {
    name: Option<String>,
    bracket: String,
    breadth: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    writhe: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    jones: Option<String>,
}

fn bracket(ctx: &mut Ctx, arg: &str, jones: bool, orientation: Option<&str>) -> Result<u8, Failure> {
    let d = ctx.load(arg)?;
    let b = skein::bracket_with_threads(&d, ctx.threads)?;
    let mut out = BracketOut {
        name: d.meta.name.clone(),
        bracket: b.to_string(),
        breadth: b.breadth(),
        writhe: None,
        jones: None,
    };
    if jones {
        let o = match orientation {
            Some(bits) => Orientation(
                bits.chars()
                    .map(|c| match c {
                        '1' => Ok(true),
                        '0' => Ok(false),
                        _ => Err(Failure::Input(format!("orientation must be 0s and 1s, found `{bits}`"))),
                    })
                    .collect::<Result<_, _>>()?,
            ),
            None => Orientation::default_for(&d).map_err(|e| Failure::Input(e.to_string()))?,
        };
        let w = skein::writhe(&d, &o)?;
        out.writhe = Some(w);
        out.jones = Some((&annular_skein::LaurentPoly::framing_unit(-w) * &b).to_string());
    }
    let mut text = format!("bracket: {}\nbreadth: {}\n", out.bracket, out.breadth);
    if let (Some(w), Some(j)) = (out.writhe, &out.jones) {
        text.push_str(&format!("writhe: {w}\njones: {j}\n"));
    }
    ctx.emit(text, &out);
    Ok(0)
}

#[derive(Serialize)]
struct DiagramVerification<'a> {
    report: &'a theorems::VerificationReport,
    classifier: &'a theorems::NonalternatingVerdict,
    passed: bool,
}

fn verify(ctx: &mut Ctx, args: VerifyArgs) -> Result<u8, Failure> {
    let flags = LinkAssertions {
        non_h_split: args.non_h_split,
        not_in_3ball: args.not_in_3ball,
        no_double_sphere_intersection: args.no_double_sphere,
    };
    if let Some(arg) = &args.input {
        let d = ctx.load(arg)?;
        let report = theorems::verify_all(&d, flags, ctx.threads)?;
        let verdict = theorems::classify_nonalternating(
            &report.bracket,
            report.profile.crossings,
            flags,
            args.in_3ball,
            !report.profile.z2_class,
        )
        .map_err(|e| Failure::Input(e.to_string()))?;
        let passed = report.passed();
        let text = render::report(&report, &d, Some(&verdict));
        ctx.emit(text, &DiagramVerification { report: &report, classifier: &verdict, passed });
        return Ok(if passed { 0 } else { 1 });
    }
    let corpus = match &args.corpus_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Corpus::parse(&text, path.parent()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => ctx.corpus.clone(),
    };
    let corpus = if ctx.mirror {
        Corpus {
            entries: corpus
                .entries
                .into_iter()
                .map(|mut e| {
                    e.diagram = e.diagram.mirror();
                    e
                })
                .collect(),
            ..corpus
        }
    } else {
        corpus
    };
    let report = corpus::verify_corpus(&corpus, flags, ctx.threads)?;
    let diagrams: Vec<&AnnularDiagram> = corpus.entries.iter().map(|e| &e.diagram).collect();
    let passed = report.passed();
    ctx.emit(render::corpus(&report, &diagrams), &report);
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct Generated {
    name: String,
    provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
    diagram: String,
}

fn generate(ctx: &mut Ctx, args: GenerateArgs, seed: u64) -> Result<u8, Failure> {
    let family: Family = args.family.parse().map_err(Failure::Input)?;
    let base = args.base.as_deref().map(|b| ctx.load(b)).transpose()?;
    let params = FamilyParams { strands: args.strands, length: args.length, count: args.count, base };
    let mut diagrams = generate::generate(family, &params, seed).map_err(|e| Failure::Input(e.to_string()))?;
    if ctx.mirror {
        diagrams = diagrams.iter().map(AnnularDiagram::mirror).collect();
    }
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    }
    let mut out = Vec::new();
    let mut text = String::new();
    for d in &diagrams {
        let name = d.meta.name.clone().unwrap_or_default();
        let body = d.to_text();
        let path = match &args.out {
            Some(dir) => {
                let p = dir.join(format!("{name}.diagram"));
                std::fs::write(&p, &body).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
                text.push_str(&format!("wrote {}\n", p.display()));
                Some(p.display().to_string())
            }
            None => {
                text.push_str(&body);
                text.push('\n');
                None
            }
        };
        out.push(Generated { name, provenance: d.meta.provenance.clone().unwrap_or_default(), path, diagram: body });
    }
    ctx.emit(text, &out);
    Ok(0)
}
