//! Run configuration: where graphs and coefficient systems come from.

use std::fmt;
use std::fs;
use std::path::Path;

use tutte_core::complex::DEFAULT_EDGE_BOUND;
use tutte_core::graph::{generate_family_by_name, MAX_CUBE_EDGES};
use tutte_core::theorems::corpus::CORPUS_SEED;
use tutte_core::{CheckKind, CoefficientSystem, Graph};

/// Failure to set up a run. Always reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<tutte_core::Error> for UsageError {
    fn from(e: tutte_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub inputs: Vec<String>,
    pub system: CoefficientSystem,
    pub checks: Vec<CheckKind>,
    pub format: Format,
    pub seed: u64,
    pub max_edges: usize,
    pub corpus: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            system: CoefficientSystem::default_system(),
            checks: CheckKind::ALL.to_vec(),
            format: Format::Text,
            seed: CORPUS_SEED,
            max_edges: DEFAULT_EDGE_BOUND,
            corpus: false,
        }
    }
}

/// `default`, `chromatic`, `zero-b0`, or `custom:<path>` to a JSON description.
pub fn resolve_system(spec: &str) -> Result<CoefficientSystem, UsageError> {
    if let Some(path) = spec.strip_prefix("custom:") {
        let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))?;
        let name = Path::new(path)
            .file_stem()
            .map_or_else(|| "custom".to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(CoefficientSystem::from_json(&name, &text)?);
    }
    CoefficientSystem::builtin(spec).ok_or_else(|| {
        UsageError(format!(
            "unknown system `{spec}` (expected default, chromatic, zero-b0 or custom:<path>)"
        ))
    })
}

/// A graph file, or `<family>:<n>` for a generated family member.
pub fn load_graph(input: &str) -> Result<Graph, UsageError> {
    if !Path::new(input).exists() {
        if let Some((family, n)) = input.split_once(':') {
            if let Ok(n) = n.parse::<usize>() {
                return Ok(generate_family_by_name(family, n)?);
            }
        }
    }
    let text = fs::read_to_string(input).map_err(|e| UsageError(format!("{input}: {e}")))?;
    Graph::parse(&text).map_err(|e| UsageError(format!("{input}: {e}")))
}

pub fn parse_max_edges(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if n > MAX_CUBE_EDGES {
        return Err(format!("at most {MAX_CUBE_EDGES}"));
    }
    Ok(n)
}

pub fn parse_checks(s: &str) -> Result<Vec<CheckKind>, String> {
    CheckKind::parse_list(s).map_err(|e| e.to_string())
}
