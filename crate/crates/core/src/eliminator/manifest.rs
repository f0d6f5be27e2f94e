//! The expected-unresolved manifest: case ids left to external character
//! data, each with a one-line reason.
//!
//! A pattern is matched segment by segment (segments split on `/` and `,`).
//! In a `key=value` segment the value may be `*`, `even` or `odd`.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub pattern: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ManifestCheck {
    /// Unresolved ids no entry accounts for.
    pub unexpected: Vec<String>,
    /// Entries (within the checked scope) that matched nothing.
    pub stale: Vec<String>,
}

impl ManifestCheck {
    pub fn ok(&self) -> bool {
        self.unexpected.is_empty() && self.stale.is_empty()
    }
}

fn segments(s: &str) -> Vec<&str> {
    s.split(['/', ',']).collect()
}

fn segment_matches(pat: &str, got: &str) -> bool {
    if pat == got {
        return true;
    }
    let (Some((pk, pv)), Some((gk, gv))) = (pat.split_once('='), got.split_once('=')) else {
        return false;
    };
    if pk != gk {
        return false;
    }
    let parity = gv.parse::<u64>().ok().map(|v| v % 2);
    match pv {
        "*" => true,
        "even" => parity == Some(0),
        "odd" => parity == Some(1),
        _ => false,
    }
}

pub fn pattern_matches(pattern: &str, id: &str) -> bool {
    let (p, g) = (segments(pattern), segments(id));
    p.len() == g.len() && p.iter().zip(&g).all(|(a, b)| segment_matches(a, b))
}

const BUILTIN: &str = include_str!("../../data/expected_unresolved.txt");

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (pattern, reason) = line.split_once('|').ok_or_else(|| {
                Error::data(format!(
                    "manifest line {}: expected 'case-id | reason'",
                    i + 1
                ))
            })?;
            let (pattern, reason) = (pattern.trim(), reason.trim());
            if pattern.is_empty() || reason.is_empty() {
                return Err(Error::data(format!("manifest line {}: empty field", i + 1)));
            }
            entries.push(ManifestEntry {
                pattern: pattern.to_string(),
                reason: reason.to_string(),
            });
        }
        Ok(Manifest { entries })
    }

    pub fn builtin() -> &'static Manifest {
        static M: OnceLock<Manifest> = OnceLock::new();
        M.get_or_init(|| Manifest::parse(BUILTIN).expect("bundled manifest parses"))
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
        Manifest::parse(&text)
    }

    pub fn reason_for(&self, id: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| pattern_matches(&e.pattern, id))
            .map(|e| e.reason.as_str())
    }

    /// Compares the unresolved ids of a run against the entries whose first
    /// segment is among `scopes` (e.g. `3.2`).
    pub fn check<'a>(
        &self,
        unresolved: impl IntoIterator<Item = &'a str>,
        scopes: &BTreeSet<String>,
    ) -> ManifestCheck {
        let unresolved: Vec<&str> = unresolved.into_iter().collect();
        let unexpected = unresolved
            .iter()
            .filter(|id| self.reason_for(id).is_none())
            .map(|s| s.to_string())
            .collect();
        let stale = self
            .entries
            .iter()
            .filter(|e| scopes.contains(segments(&e.pattern)[0]))
            .filter(|e| !unresolved.iter().any(|id| pattern_matches(&e.pattern, id)))
            .map(|e| e.pattern.clone())
            .collect();
        ManifestCheck { unexpected, stale }
    }
}
