//! The `thma` command-line tool as a library, so tests can drive it without
//! spawning processes. [`run`] parses arguments, executes one command and
//! returns the exit code with everything that would be printed.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use thma_core::cat::{validate_category, validate_functor, CatFunctor, FinCat};
use thma_core::constructions::{
    cech_category, comma_slice, fatten, s_category, t_category, t_op_category, twisted_arrow,
    CoverData,
};
use thma_core::doc::{
    format_of, to_canonical_json, to_dot, BiSimplicialDocument, CategoryDocument, CoverDocument,
    FattenDocument, FunctorDocument, SimplicialDocument, CATEGORY_FORMAT, COVER_FORMAT,
    FATTEN_FORMAT, FUNCTOR_FORMAT, SIMPLICIAL_FORMAT,
};
use thma_core::homology::{homology, normalized_chains, set_basis_shuffle, HomologyReport};
use thma_core::simplicial::{
    bisimplicial_d, diagonal, nerve, Bounds, SimplicialSet, DEFAULT_BUDGET, DEFAULT_TRUNCATION,
};
use thma_core::verifiers::{morita_check, segal_cover_check, theorem_a_check, TheoremVerdict};
use thma_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "thma",
    version,
    about = "Finite categories, their nerves and homology, and checkers for Theorem A"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Simplicial truncation level N.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION)]
    trunc: usize,

    /// Largest number of cells any single level may hold.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Where to write the produced document (build, export-dot).
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Reorders every chain basis before reducing. Reports must not change.
    #[arg(long, global = true, hide = true)]
    shuffle_seed: Option<u64>,

    /// Adds wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a document against the category, functor or cover axioms.
    Validate { path: PathBuf },
    /// Build a construction and write its document.
    Build {
        construction: Construction,
        input: PathBuf,
    },
    /// Integral homology of a nerve or of a simplicial-set document.
    Homology { path: PathBuf },
    /// Run a theorem checker.
    Check { theorem: Theorem, input: PathBuf },
    /// Write a category as a DOT digraph.
    ExportDot { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    #[value(name = "T")]
    T,
    #[value(name = "Top")]
    Top,
    #[value(name = "twisted")]
    Twisted,
    #[value(name = "comma")]
    Comma,
    #[value(name = "S")]
    S,
    #[value(name = "cech")]
    Cech,
    #[value(name = "fatten")]
    Fatten,
    #[value(name = "D")]
    D,
    #[value(name = "diag")]
    Diag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    A,
    Morita,
    Cover,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;
pub const EXIT_CONCLUSION: i32 = 5;

#[derive(Debug)]
enum Fail {
    /// Unreadable or unparsable input, or the wrong kind of document.
    Input(String),
    /// Parsed, but the axioms fail.
    Invalid(Vec<String>),
    Budget(String),
}

impl Fail {
    fn code(&self) -> i32 {
        match self {
            Fail::Input(_) => EXIT_INPUT,
            Fail::Invalid(_) => EXIT_INVALID,
            Fail::Budget(_) => EXIT_BUDGET,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Fail::Input(_) => "input",
            Fail::Invalid(_) => "invalid",
            Fail::Budget(_) => "budget",
        }
    }

    fn message(&self) -> String {
        match self {
            Fail::Input(m) | Fail::Budget(m) => m.clone(),
            Fail::Invalid(v) => v.join("; "),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
            other => Fail::Input(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct InputDigest {
    file: String,
    bytes: usize,
    sha256: String,
}

/// Reads files and remembers a digest of each one.
#[derive(Default)]
struct Inputs {
    seen: RefCell<BTreeMap<String, InputDigest>>,
}

impl Inputs {
    fn read(&self, path: &Path) -> Result<String, Fail> {
        let bytes = std::fs::read(path)
            .map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
        let file = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let sha256 = Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        self.seen.borrow_mut().insert(
            file.clone(),
            InputDigest {
                file,
                bytes: bytes.len(),
                sha256,
            },
        );
        String::from_utf8(bytes).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
    }

    /// Loader for category references, relative to `base`.
    fn category_loader<'a>(
        &'a self,
        base: &'a Path,
    ) -> impl Fn(&str) -> thma_core::Result<CategoryDocument> + 'a {
        move |p: &str| {
            let path = base.join(p);
            let text = self.read(&path).map_err(|f| Error::Document(f.message()))?;
            CategoryDocument::parse(&text)
                .map_err(|e| Error::Document(format!("{}: {e}", path.display())))
        }
    }

    fn digests(&self) -> Vec<InputDigest> {
        self.seen.borrow().values().cloned().collect()
    }
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or_else(|| Path::new("."))
}

#[derive(Serialize)]
struct Report {
    command: String,
    truncation: usize,
    budget: usize,
    inputs: Vec<InputDigest>,
    exit_code: i32,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

/// What a command produced: the report body, its exit code, and an
/// optional document for `-o`.
struct Done {
    code: i32,
    result: Value,
    text: Vec<String>,
    document: Option<String>,
}

/// Runs one invocation. The first argument is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            };
        }
    };
    set_basis_shuffle(cli.shuffle_seed);
    let outcome = execute(&cli);
    set_basis_shuffle(None);
    outcome
}

fn command_echo(cli: &Cli) -> String {
    match &cli.command {
        Command::Validate { .. } => "validate".into(),
        Command::Build { construction, .. } => {
            format!("build {}", construction.to_possible_value().unwrap().get_name())
        }
        Command::Homology { .. } => "homology".into(),
        Command::Check { theorem, .. } => {
            format!("check {}", theorem.to_possible_value().unwrap().get_name())
        }
        Command::ExportDot { .. } => "export-dot".into(),
    }
}

fn execute(cli: &Cli) -> Outcome {
    let bounds = Bounds::new(cli.trunc, cli.budget);
    let inputs = Inputs::default();
    let start = Instant::now();

    if let Command::ExportDot { path } = &cli.command {
        return export_dot(cli, &inputs, path);
    }

    let done = match &cli.command {
        Command::Validate { path } => validate(&inputs, path),
        Command::Build { construction, input } => build(&inputs, *construction, input, bounds),
        Command::Homology { path } => homology_cmd(&inputs, path, bounds),
        Command::Check { theorem, input } => check(&inputs, *theorem, input, bounds),
        Command::ExportDot { .. } => unreachable!(),
    };
    let mut stderr = String::new();
    let done = match done {
        Ok(d) => d,
        Err(f) => {
            stderr = format!("error: {}\n", f.message());
            Done {
                code: f.code(),
                result: json!({ "error": { "kind": f.kind(), "message": f.message() } }),
                text: vec![format!("error ({}): {}", f.kind(), f.message())],
                document: None,
            }
        }
    };

    let mut result = done.result;
    if let Some(doc) = done.document {
        match &cli.output {
            Some(out) => {
                if let Err(e) = std::fs::write(out, &doc) {
                    return Outcome {
                        code: EXIT_INPUT,
                        stdout: String::new(),
                        stderr: format!("error: {}: {e}\n", out.display()),
                    };
                }
            }
            None => {
                let v: Value = serde_json::from_str(&doc).expect("documents are JSON");
                result["document"] = v;
            }
        }
    }

    let report = Report {
        command: command_echo(cli),
        truncation: bounds.truncation,
        budget: bounds.budget,
        inputs: inputs.digests(),
        exit_code: done.code,
        result,
        timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
    };
    let stdout = match cli.format {
        OutputFormat::Json => to_canonical_json(&report).expect("reports serialize"),
        OutputFormat::Text => render_text(&report, &done.text),
    };
    Outcome {
        code: done.code,
        stdout,
        stderr,
    }
}

fn render_text(report: &Report, lines: &[String]) -> String {
    let mut out = format!("thma {}\n", report.command);
    for i in &report.inputs {
        out.push_str(&format!("input {} ({} bytes) sha256 {}\n", i.file, i.bytes, i.sha256));
    }
    out.push_str(&format!("truncation N = {}\n", report.truncation));
    for l in lines {
        out.push_str(l);
        out.push('\n');
    }
    out.push_str(&format!("exit {}\n", report.exit_code));
    if let Some(ms) = report.timing_ms {
        out.push_str(&format!("time {ms} ms\n"));
    }
    out
}

fn export_dot(cli: &Cli, inputs: &Inputs, path: &Path) -> Outcome {
    let dot = load_category(inputs, path).map(|c| to_dot(&c));
    match (dot, &cli.output) {
        (Ok(dot), Some(out)) => match std::fs::write(out, &dot) {
            Ok(()) => Outcome { code: EXIT_OK, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", out.display()),
            },
        },
        (Ok(dot), None) => Outcome { code: EXIT_OK, stdout: dot, stderr: String::new() },
        (Err(f), _) => Outcome {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

// ---------------------------------------------------------------------------
// loading

enum Loaded {
    Category(FinCat),
    Functor(CatFunctor),
    Cover(CoverData),
    Fatten(Arc<FinCat>, Vec<(String, thma_core::cat::Obj)>),
    Simplicial(SimplicialSet),
}

impl Loaded {
    fn kind(&self) -> &'static str {
        match self {
            Loaded::Category(_) => "category",
            Loaded::Functor(_) => "functor",
            Loaded::Cover(_) => "cover",
            Loaded::Fatten(..) => "fatten",
            Loaded::Simplicial(_) => "simplicial",
        }
    }
}

/// Parses any supported document, without checking axioms.
fn load_any(inputs: &Inputs, path: &Path) -> Result<Loaded, Fail> {
    let text = inputs.read(path)?;
    let format = format_of(&text)?;
    let load = inputs.category_loader(parent(path));
    Ok(match format.as_str() {
        CATEGORY_FORMAT => Loaded::Category(CategoryDocument::parse(&text)?.to_cat()?),
        FUNCTOR_FORMAT => Loaded::Functor(FunctorDocument::parse(&text)?.to_functor(&load)?),
        COVER_FORMAT => Loaded::Cover(CoverDocument::parse(&text)?.to_cover()),
        FATTEN_FORMAT => {
            let (y, p) = FattenDocument::parse(&text)?.resolve(&load)?;
            Loaded::Fatten(y, p)
        }
        SIMPLICIAL_FORMAT => Loaded::Simplicial(SimplicialDocument::parse(&text)?.to_set()?),
        other => return Err(Fail::Input(format!("unsupported document format `{other}`"))),
    })
}

fn violations_of_category(c: &FinCat) -> Vec<String> {
    validate_category(c).violations.iter().map(|v| v.to_string()).collect()
}

fn violations_of_functor(f: &CatFunctor) -> Vec<String> {
    let mut out: Vec<String> = violations_of_category(f.dom())
        .into_iter()
        .map(|v| format!("domain: {v}"))
        .collect();
    out.extend(violations_of_category(f.cod()).into_iter().map(|v| format!("codomain: {v}")));
    if out.is_empty() {
        out.extend(validate_functor(f).violations.iter().map(|v| v.to_string()));
    }
    out
}

fn require_valid(violations: Vec<String>) -> Result<(), Fail> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Fail::Invalid(violations))
    }
}

fn mismatch(want: &str, got: &Loaded) -> Fail {
    Fail::Input(format!("expected a {want} document, got a {} document", got.kind()))
}

fn load_category(inputs: &Inputs, path: &Path) -> Result<FinCat, Fail> {
    match load_any(inputs, path)? {
        Loaded::Category(c) => {
            require_valid(violations_of_category(&c))?;
            Ok(c)
        }
        other => Err(mismatch("category", &other)),
    }
}

fn load_functor(inputs: &Inputs, path: &Path) -> Result<CatFunctor, Fail> {
    match load_any(inputs, path)? {
        Loaded::Functor(f) => {
            require_valid(violations_of_functor(&f))?;
            Ok(f)
        }
        other => Err(mismatch("functor", &other)),
    }
}

fn load_cover(inputs: &Inputs, path: &Path) -> Result<CoverData, Fail> {
    match load_any(inputs, path)? {
        Loaded::Cover(c) => {
            c.check()?;
            Ok(c)
        }
        other => Err(mismatch("cover", &other)),
    }
}

// ---------------------------------------------------------------------------
// commands

fn validate(inputs: &Inputs, path: &Path) -> Result<Done, Fail> {
    let loaded = load_any(inputs, path)?;
    let kind = loaded.kind();
    let violations = match &loaded {
        Loaded::Category(c) => violations_of_category(c),
        Loaded::Functor(f) => violations_of_functor(f),
        Loaded::Cover(c) => c.check().err().map(|e| vec![e.to_string()]).unwrap_or_default(),
        Loaded::Fatten(y, p) => {
            let mut v = violations_of_category(y);
            if v.is_empty() {
                if let Err(e) = fatten(y, p) {
                    v.push(e.to_string());
                }
            }
            v
        }
        // identities were checked while parsing
        Loaded::Simplicial(_) => Vec::new(),
    };
    let code = if violations.is_empty() { EXIT_OK } else { EXIT_INVALID };
    let mut text = vec![format!("{kind} document")];
    if violations.is_empty() {
        text.push("valid".into());
    } else {
        text.extend(violations.iter().map(|v| format!("violation: {v}")));
    }
    Ok(Done {
        code,
        result: json!({ "kind": kind, "valid": violations.is_empty(), "violations": violations }),
        text,
        document: None,
    })
}

fn category_output(c: &FinCat, what: &str) -> Result<Done, Fail> {
    let doc = CategoryDocument::from_cat(c).to_json()?;
    Ok(Done {
        code: EXIT_OK,
        result: json!({
            "output_kind": "category",
            "sizes": { "objects": c.object_count(), "morphisms": c.morphism_count() },
        }),
        text: vec![format!(
            "{what}: {} objects, {} morphisms",
            c.object_count(),
            c.morphism_count()
        )],
        document: Some(doc),
    })
}

fn simplicial_sizes(x: &SimplicialSet) -> Value {
    let top = x.truncation();
    json!({
        "simplices": x.sizes(),
        "nondegenerate": (0..=top).map(|n| x.nondegenerate_count(n)).collect::<Vec<_>>(),
    })
}

fn build(inputs: &Inputs, what: Construction, path: &Path, bounds: Bounds) -> Result<Done, Fail> {
    let name = what.to_possible_value().unwrap().get_name().to_string();
    match what {
        Construction::T | Construction::Top | Construction::Twisted => {
            let y = Arc::new(load_category(inputs, path)?);
            let c = match what {
                Construction::T => t_category(&y)?.cat,
                Construction::Top => t_op_category(&y)?.cat,
                _ => twisted_arrow(&y)?.cat,
            };
            category_output(&c, &name)
        }
        Construction::Comma | Construction::S => {
            let f = load_functor(inputs, path)?;
            let c = match what {
                Construction::Comma => comma_slice(&f)?.cat,
                _ => s_category(&f)?.s,
            };
            category_output(&c, &name)
        }
        Construction::Cech => {
            let cover = load_cover(inputs, path)?;
            category_output(&cech_category(&cover)?.cat, &name)
        }
        Construction::Fatten => {
            let (y, p) = match load_any(inputs, path)? {
                Loaded::Fatten(y, p) => (y, p),
                other => return Err(mismatch("fatten", &other)),
            };
            require_valid(violations_of_category(&y))?;
            let fx = fatten(&y, &p)?;
            let doc = to_canonical_json(&FunctorDocument::from_functor(&fx.f))?;
            Ok(Done {
                code: EXIT_OK,
                result: json!({
                    "output_kind": "functor",
                    "sizes": { "objects": fx.x.object_count(), "morphisms": fx.x.morphism_count() },
                }),
                text: vec![format!(
                    "fatten: {} objects, {} morphisms over {} objects",
                    fx.x.object_count(),
                    fx.x.morphism_count(),
                    y.object_count()
                )],
                document: Some(doc),
            })
        }
        Construction::D => {
            let f = load_functor(inputs, path)?;
            let d = bisimplicial_d(&f, bounds)?;
            let doc = BiSimplicialDocument::from_set(&d);
            let text = doc
                .sizes
                .iter()
                .enumerate()
                .map(|(p, row)| format!("D_{p},* sizes {row:?}"))
                .collect();
            Ok(Done {
                code: EXIT_OK,
                result: json!({
                    "output_kind": "bisimplicial",
                    "sizes": { "cells": doc.sizes, "nondegenerate": doc.nondegenerate },
                }),
                text,
                document: Some(to_canonical_json(&doc)?),
            })
        }
        Construction::Diag => {
            let f = load_functor(inputs, path)?;
            let x = diagonal(&bisimplicial_d(&f, bounds)?)?;
            let doc = SimplicialDocument::from_set(&x);
            Ok(Done {
                code: EXIT_OK,
                result: json!({ "output_kind": "simplicial", "sizes": simplicial_sizes(&x) }),
                text: vec![format!("diag: simplices per level {:?}", x.sizes())],
                document: Some(to_canonical_json(&doc)?),
            })
        }
    }
}

fn reliability(report: &HomologyReport) -> String {
    match report.certified_through {
        Some(d) => format!(
            "degrees 0..={d} are exact; degree {} lacks boundaries from above and is not certified",
            report.truncation
        ),
        None => "no degree is certified at truncation 0".into(),
    }
}

fn homology_cmd(inputs: &Inputs, path: &Path, bounds: Bounds) -> Result<Done, Fail> {
    let (kind, x) = match load_any(inputs, path)? {
        Loaded::Category(c) => {
            require_valid(violations_of_category(&c))?;
            ("category", nerve(&c, bounds)?)
        }
        Loaded::Simplicial(x) => {
            let x = if bounds.truncation < x.truncation() {
                x.truncated(bounds.truncation)?
            } else {
                x
            };
            ("simplicial", x)
        }
        other => return Err(mismatch("category or simplicial", &other)),
    };
    let report = homology(&normalized_chains(&x)?);
    let groups = report.groups();
    let note = reliability(&report);
    let mut text: Vec<String> = groups
        .iter()
        .enumerate()
        .map(|(n, g)| format!("H_{n} = {g}"))
        .collect();
    text.push(note.clone());
    Ok(Done {
        code: EXIT_OK,
        result: json!({
            "input_kind": kind,
            "sizes": simplicial_sizes(&x),
            "homology": report,
            "groups": groups,
            "reliability": note,
        }),
        text,
        document: None,
    })
}

fn verdict_text(v: &TheoremVerdict) -> Vec<String> {
    let id = serde_json::to_value(v.theorem).unwrap();
    let mut out = vec![format!("theorem {}", id.as_str().unwrap_or_default())];
    for h in &v.hypotheses {
        out.push(format!("hypothesis {}: {}", h.name, if h.holds { "holds" } else { "fails" }));
    }
    out.push(format!(
        "conclusion through degree {}: {}",
        v.conclusion.through_degree,
        if v.conclusion.holds { "holds" } else { "fails" }
    ));
    out.extend(v.notes.iter().map(|n| format!("note: {n}")));
    out
}

fn check(inputs: &Inputs, theorem: Theorem, path: &Path, bounds: Bounds) -> Result<Done, Fail> {
    let verdict = match theorem {
        Theorem::A => theorem_a_check(&load_functor(inputs, path)?, bounds)?,
        Theorem::Morita => morita_check(&load_functor(inputs, path)?, bounds)?,
        Theorem::Cover => segal_cover_check(&load_cover(inputs, path)?, bounds)?,
    };
    Ok(Done {
        code: verdict.exit_code(),
        result: json!({ "verdict": verdict }),
        text: verdict_text(&verdict),
        document: None,
    })
}

#[cfg(test)]
mod tests;
