//! The case analysis: each target family is matched against every candidate
//! family of the same characteristic, and each pair is ruled out by an
//! order witness, a p-part argument or a degree comparison, or reported as
//! needing external character data.

pub mod cases;
pub mod diophantine;
pub mod lemmas;
pub mod manifest;
pub mod ppart;
pub mod steinberg;
pub mod sweeps;

use serde::{Deserialize, Serialize};

use crate::degrees::DegreeTables;
use crate::multipliers::MultiplierCatalog;

pub use diophantine::{solve_diophantine, Equation};
pub use lemmas::{run_lemma, LemmaId, LemmaRun};
pub use manifest::Manifest;
pub use ppart::{feasible_generators, ppart_filter, BConstraint, Linear};
pub use steinberg::{exceptional_bound, exceptional_bound_for, steinberg_match, SteinbergMatch};
pub use sweeps::{degree_equation_sweep, inequality_sweep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    EliminatedByOrderWitness,
    EliminatedByPpartFilter,
    EliminatedByDegreeSweep,
    UnresolvedExternalData,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [
        Outcome::EliminatedByOrderWitness,
        Outcome::EliminatedByPpartFilter,
        Outcome::EliminatedByDegreeSweep,
        Outcome::UnresolvedExternalData,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::EliminatedByOrderWitness => "eliminated_by_order_witness",
            Outcome::EliminatedByPpartFilter => "eliminated_by_ppart_filter",
            Outcome::EliminatedByDegreeSweep => "eliminated_by_degree_sweep",
            Outcome::UnresolvedExternalData => "unresolved_external_data",
        }
    }

    pub fn is_eliminated(self) -> bool {
        self != Outcome::UnresolvedExternalData
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One link of a case's argument, with the lemma step it reproduces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub paper_ref: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationReport {
    pub case_id: String,
    pub candidate: String,
    pub target: String,
    pub chain: Vec<Step>,
    pub outcome: Outcome,
    pub witness: Option<String>,
    /// Every exact re-check passed and at least one was made.
    pub revalidated: bool,
    /// Set when a re-check contradicts the outcome or a quoted value.
    pub failure: Option<String>,
    /// Wall-clock time spent on the case.
    #[serde(default)]
    pub millis: u64,
}

impl EliminationReport {
    /// The distinct citations of the chain, in order.
    pub fn paper_ref(&self) -> String {
        let mut seen: Vec<&str> = Vec::new();
        for s in &self.chain {
            if !seen.contains(&s.paper_ref.as_str()) {
                seen.push(&s.paper_ref);
            }
        }
        seen.join("; ")
    }
}

/// Sampling and sweep ranges for a run.
#[derive(Clone, Debug)]
pub struct Config<'a> {
    pub primes: Vec<u64>,
    pub max_c: u32,
    /// Largest target rank of the generic classical cases.
    pub max_n: u32,
    pub sweep_max_n: u32,
    pub sweep_max_a: u32,
    pub tables: &'a DegreeTables,
    pub multipliers: &'a MultiplierCatalog,
}

impl Default for Config<'static> {
    fn default() -> Self {
        Config {
            primes: vec![2, 3, 5],
            max_c: 2,
            max_n: 12,
            sweep_max_n: 60,
            sweep_max_a: 3,
            tables: DegreeTables::builtin(),
            multipliers: MultiplierCatalog::builtin(),
        }
    }
}
