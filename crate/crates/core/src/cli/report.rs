//! The verification report and its text and JSON renderings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::eliminator::{LemmaRun, Manifest, Outcome, Step};

pub const SCHEMA: &str = include_str!("../../data/report.schema.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub command: String,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case_id: String,
    pub paper_ref: String,
    pub outcome: Outcome,
    pub witness: Option<String>,
    pub revalidated: bool,
    pub millis: u64,
    pub candidate: String,
    pub target: String,
    pub failed: bool,
    pub failure: Option<String>,
    /// The manifest's reason, for unresolved cases it accounts for.
    pub expected_reason: Option<String>,
    pub chain: Vec<Step>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub eliminated: usize,
    pub unresolved: usize,
    /// Failed cases plus stale manifest entries.
    pub failed: usize,
    pub unresolved_ids: Vec<String>,
    pub unexpected_unresolved: Vec<String>,
    pub stale_manifest_entries: Vec<String>,
    pub exit_code: i32,
}

impl VerificationReport {
    /// Assembles the report of one or more lemma runs. A case fails when a
    /// re-check contradicted it or when it is unresolved without a manifest
    /// entry. Timings are zeroed unless `timing` is set, so that repeated
    /// runs are byte-identical.
    pub fn build(
        command: &str,
        runs: &[LemmaRun],
        manifest: &Manifest,
        timing: bool,
    ) -> VerificationReport {
        let mut cases = Vec::new();
        let mut scopes = BTreeSet::new();
        for run in runs {
            scopes.extend(run.lemma.scopes());
            for r in &run.reports {
                let expected_reason = (!r.outcome.is_eliminated())
                    .then(|| manifest.reason_for(&r.case_id).map(str::to_string))
                    .flatten();
                let unexpected = !r.outcome.is_eliminated() && expected_reason.is_none();
                cases.push(CaseResult {
                    case_id: r.case_id.clone(),
                    paper_ref: r.paper_ref(),
                    outcome: r.outcome,
                    witness: r.witness.clone(),
                    revalidated: r.revalidated,
                    millis: if timing { r.millis } else { 0 },
                    candidate: r.candidate.clone(),
                    target: r.target.clone(),
                    failed: r.failure.is_some() || unexpected,
                    failure: r.failure.clone(),
                    expected_reason,
                    chain: r.chain.clone(),
                });
            }
        }
        cases.sort_by(|a, b| a.case_id.cmp(&b.case_id));

        let unresolved_ids: Vec<String> = cases
            .iter()
            .filter(|c| !c.outcome.is_eliminated())
            .map(|c| c.case_id.clone())
            .collect();
        let check = manifest.check(unresolved_ids.iter().map(String::as_str), &scopes);
        let failed_cases = cases.iter().filter(|c| c.failed).count();
        let failed = failed_cases + check.stale.len();
        let summary = Summary {
            cases: cases.len(),
            eliminated: cases
                .iter()
                .filter(|c| !c.failed && c.outcome.is_eliminated())
                .count(),
            unresolved: cases
                .iter()
                .filter(|c| !c.failed && !c.outcome.is_eliminated())
                .count(),
            failed,
            unresolved_ids,
            unexpected_unresolved: check.unexpected,
            stale_manifest_entries: check.stale,
            exit_code: if failed > 0 { 1 } else { 0 },
        };
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            cases,
            summary,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(report: &VerificationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

fn render_text(report: &VerificationReport) -> String {
    let s = &report.summary;
    let mut out = String::new();
    let mut counts = std::collections::BTreeMap::new();
    for c in &report.cases {
        *counts.entry(c.outcome).or_insert(0usize) += 1;
    }
    for o in Outcome::ALL {
        let _ = writeln!(
            out,
            "{:<30} {}",
            o.as_str(),
            counts.get(&o).copied().unwrap_or(0)
        );
    }
    for c in report
        .cases
        .iter()
        .filter(|c| !c.outcome.is_eliminated() && !c.failed)
    {
        let _ = writeln!(
            out,
            "unresolved {}: {}",
            c.case_id,
            c.expected_reason.as_deref().unwrap_or("")
        );
    }
    for c in report.cases.iter().filter(|c| c.failed) {
        let why = c
            .failure
            .as_deref()
            .unwrap_or("unresolved and not in the expected-unresolved manifest");
        let _ = writeln!(out, "FAILED {}: {why}", c.case_id);
    }
    for p in &s.stale_manifest_entries {
        let _ = writeln!(out, "FAILED manifest entry {p} matched no unresolved case");
    }
    let _ = writeln!(
        out,
        "{} cases: {} eliminated, {} unresolved, {} failed",
        s.cases, s.eliminated, s.unresolved, s.failed
    );
    out
}
