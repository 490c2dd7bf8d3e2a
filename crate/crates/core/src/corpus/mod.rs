//! Built-in corpus of worked examples with their expected-results manifests.

mod claims;
mod manifest;

pub use claims::{run_claim, ClaimOutcome};
pub use manifest::{Check, Claim, Manifest};

use std::path::Path;

use crate::codec;
use crate::error::{Error, Result};
use crate::structure::FinStructure;

/// Names of the built-in entries, in report order.
pub const NAMES: [&str; 8] = ["fig1", "fig2", "mo2", "o6", "fig5", "fig6", "fig7", "fig1alt"];

const ALGEBRAS: [(&str, &str); 8] = [
    ("fig1", include_str!("../../corpus/fig1.alg")),
    ("fig2", include_str!("../../corpus/fig2.alg")),
    ("mo2", include_str!("../../corpus/mo2.alg")),
    ("o6", include_str!("../../corpus/o6.alg")),
    ("fig5", include_str!("../../corpus/fig5.alg")),
    ("fig6", include_str!("../../corpus/fig6.alg")),
    ("fig7", include_str!("../../corpus/fig7.alg")),
    ("fig1alt", include_str!("../../corpus/fig1alt.alg")),
];

const MANIFESTS: [(&str, &str); 8] = [
    ("fig1", include_str!("../../corpus/fig1.toml")),
    ("fig2", include_str!("../../corpus/fig2.toml")),
    ("mo2", include_str!("../../corpus/mo2.toml")),
    ("o6", include_str!("../../corpus/o6.toml")),
    ("fig5", include_str!("../../corpus/fig5.toml")),
    ("fig6", include_str!("../../corpus/fig6.toml")),
    ("fig7", include_str!("../../corpus/fig7.toml")),
    ("fig1alt", include_str!("../../corpus/fig1alt.toml")),
];

pub fn algebra_text(name: &str) -> Option<&'static str> {
    ALGEBRAS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn manifest_text(name: &str) -> Option<&'static str> {
    MANIFESTS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A built-in structure. Panics on an unknown name; the corpus is fixed.
pub fn load(name: &str) -> FinStructure {
    let text = algebra_text(name).unwrap_or_else(|| panic!("no corpus entry `{name}`"));
    codec::parse(text).unwrap_or_else(|e| panic!("corpus entry `{name}` does not parse: {e}"))
}

/// One corpus entry: its structure and manifest.
#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub structure: FinStructure,
    pub manifest: Manifest,
}

pub fn builtin() -> Result<Vec<Entry>> {
    NAMES
        .iter()
        .map(|&n| {
            Ok(Entry {
                name: n.to_string(),
                structure: codec::parse(algebra_text(n).unwrap())?,
                manifest: Manifest::parse(manifest_text(n).unwrap())?,
            })
        })
        .collect()
}

/// Load every `NAME.toml` manifest in `dir` together with its `NAME.alg`.
pub fn from_dir(dir: &Path) -> Result<Vec<Entry>> {
    let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", dir.display()));
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let p = e.path();
            (p.extension()? == "toml").then(|| p.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort_by_key(|n| (NAMES.iter().position(|b| b == n).unwrap_or(usize::MAX), n.clone()));
    names
        .into_iter()
        .map(|n| {
            let alg = std::fs::read_to_string(dir.join(format!("{n}.alg"))).map_err(io)?;
            let man = std::fs::read_to_string(dir.join(format!("{n}.toml"))).map_err(io)?;
            Ok(Entry { structure: codec::parse(&alg)?, manifest: Manifest::parse(&man)?, name: n })
        })
        .collect()
}

/// Outcomes for every claim of one entry.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct EntryReport {
    pub name: String,
    pub description: String,
    pub pass: bool,
    pub claims: Vec<ClaimOutcome>,
}

pub fn verify_entry(e: &Entry) -> EntryReport {
    let claims: Vec<ClaimOutcome> = e.manifest.claims.iter().map(|c| run_claim(&e.structure, c)).collect();
    EntryReport {
        name: e.name.clone(),
        description: e.manifest.description.clone(),
        pass: claims.iter().all(|c| c.pass),
        claims,
    }
}

/// Verifies entries concurrently; the result keeps the input order.
pub fn verify(entries: &[Entry]) -> Vec<EntryReport> {
    use rayon::prelude::*;
    entries.par_iter().map(verify_entry).collect()
}
