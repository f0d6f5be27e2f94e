//! Per-lemma case lists.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::cases::{
    atlas_case, classical_case, exceptional_case, omega_extra_degree, step, weil_degrees, DEGREES,
    STEINBERG, WITNESS,
};
use super::diophantine::{solve_diophantine, Equation};
use super::steinberg::exceptional_bound_for;
use super::sweeps::{degree_equation_sweep, field, inequality_sweep, SweepPoint};
use super::{Config, EliminationReport, Outcome};
use crate::arith::prime_powers_up_to;
use crate::degrees::{unipotent_witness_degree, UnipotentFamily};
use crate::error::{Error, Result};
use crate::groups::{parse_and_validate, Classical, ExceptionalTag};
use crate::zsigmondy::nondivisibility_witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    Linear,
    Unitary,
    Symplectic,
    OddOrthogonal,
    EvenOrthogonal,
}

impl LemmaId {
    pub const ALL: [LemmaId; 5] = [
        LemmaId::Linear,
        LemmaId::Unitary,
        LemmaId::Symplectic,
        LemmaId::OddOrthogonal,
        LemmaId::EvenOrthogonal,
    ];

    pub fn number(self) -> &'static str {
        match self {
            LemmaId::Linear => "3.2",
            LemmaId::Unitary => "4.1",
            LemmaId::Symplectic => "5.1",
            LemmaId::OddOrthogonal => "6.1",
            LemmaId::EvenOrthogonal => "6.2",
        }
    }

    /// Case-id prefixes with their target families.
    pub fn targets(self) -> &'static [(&'static str, Classical)] {
        match self {
            LemmaId::Linear => &[("3.2", Classical::Linear)],
            LemmaId::Unitary => &[("4.1", Classical::Unitary)],
            LemmaId::Symplectic => &[("5.1", Classical::Symplectic)],
            LemmaId::OddOrthogonal => &[("6.1", Classical::OddOrthogonal)],
            LemmaId::EvenOrthogonal => &[
                ("6.2+", Classical::OrthogonalPlus),
                ("6.2-", Classical::OrthogonalMinus),
            ],
        }
    }

    pub fn scopes(self) -> BTreeSet<String> {
        self.targets().iter().map(|(p, _)| p.to_string()).collect()
    }

    fn atlas_targets(self) -> &'static [&'static str] {
        match self {
            LemmaId::Linear => &["PSL(2,4)", "PSL(2,9)", "PSL(3,2)", "PSL(3,4)", "PSL(4,2)"],
            LemmaId::Unitary => &["PSU(4,2)", "PSU(4,3)", "PSU(6,2)"],
            LemmaId::Symplectic => &["PSp(6,2)"],
            LemmaId::OddOrthogonal => &["Omega(7,3)"],
            LemmaId::EvenOrthogonal => &["POmega+(8,2)"],
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lemma-{}", self.number())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaId> {
        let lower = s.trim().to_ascii_lowercase();
        let num = lower
            .strip_prefix("lemma-")
            .or_else(|| lower.strip_prefix("lemma"))
            .unwrap_or(&lower);
        LemmaId::ALL
            .into_iter()
            .find(|l| l.number() == num)
            .ok_or_else(|| {
                Error::syntax(format!(
                    "unknown lemma id {s:?} (expected one of 3.2, 4.1, 5.1, 6.1, 6.2)"
                ))
            })
    }
}

#[derive(Clone, Debug)]
pub struct LemmaRun {
    pub lemma: LemmaId,
    /// Sorted by case id.
    pub reports: Vec<EliminationReport>,
}

enum Job {
    Classical {
        prefix: &'static str,
        x: Classical,
        n: u32,
        y: Classical,
        m: u32,
    },
    Exceptional {
        prefix: &'static str,
        x: Classical,
        n: u32,
        tag: ExceptionalTag,
        bound: u32,
    },
}

fn jobs(id: LemmaId, cfg: &Config) -> Vec<Job> {
    let mut out = Vec::new();
    for &(prefix, x) in id.targets() {
        for n in x.min_rank()..=cfg.max_n {
            for y in Classical::ALL {
                for m in y.min_rank()..=2 * n + 2 {
                    if (y, m) != (x, n) {
                        out.push(Job::Classical { prefix, x, n, y, m });
                    }
                }
            }
        }
        for tag in ExceptionalTag::ALL {
            let bound = exceptional_bound_for(x, tag);
            for n in x.min_rank()..=bound {
                out.push(Job::Exceptional {
                    prefix,
                    x,
                    n,
                    tag,
                    bound,
                });
            }
        }
    }
    out
}

/// Runs `f` and records its wall-clock time on the report it returns.
fn timed(f: impl FnOnce() -> EliminationReport) -> EliminationReport {
    timed_try(|| Ok(f())).expect("infallible")
}

fn timed_try(f: impl FnOnce() -> Result<EliminationReport>) -> Result<EliminationReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.millis = start.elapsed().as_millis() as u64;
    Ok(r)
}

pub fn run_lemma(id: LemmaId, cfg: &Config) -> Result<LemmaRun> {
    let mut reports: Vec<EliminationReport> = jobs(id, cfg)
        .par_iter()
        .map(|job| {
            timed(|| match *job {
                Job::Classical { prefix, x, n, y, m } => classical_case(cfg, prefix, x, n, y, m),
                Job::Exceptional {
                    prefix,
                    x,
                    n,
                    tag,
                    bound,
                } => exceptional_case(cfg, prefix, x, n, tag, bound),
            })
        })
        .collect();
    for &(prefix, _) in id.targets() {
        for name in id.atlas_targets() {
            if prefix == "6.2-" {
                continue;
            }
            let spec = parse_and_validate(name)?;
            reports.push(timed(|| atlas_case(cfg, prefix, spec)));
        }
    }
    match id {
        LemmaId::Linear => {
            reports.push(timed(alternating_case));
            quote_instance(&mut reports, "3.2/E8/n=9", "E8(2^9)", "SL(9,2^30)", 216)?;
        }
        LemmaId::Unitary => {
            reports.extend(unitary_subcases(cfg)?);
        }
        LemmaId::Symplectic => {
            reports.push(timed_try(|| omega_extra_degree_case(cfg))?);
            quote_instance(&mut reports, "5.1/E7/n=7", "E7(2^7)", "Sp(14,2^9)", 98)?;
        }
        LemmaId::OddOrthogonal => reports.push(timed_try(|| weil_case(cfg))?),
        LemmaId::EvenOrthogonal => {}
    }
    reports.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    Ok(LemmaRun { lemma: id, reports })
}

/// Adds the unreduced instance to a family case and checks its exponent.
fn quote_instance(
    reports: &mut [EliminationReport],
    id: &str,
    l: &str,
    h: &str,
    expected: u64,
) -> Result<()> {
    let r = reports
        .iter_mut()
        .find(|r| r.case_id == id)
        .ok_or_else(|| Error::Unsupported(format!("case {id} missing")))?;
    let (l, h) = (parse_and_validate(l)?, parse_and_validate(h)?);
    let start = Instant::now();
    let got = nondivisibility_witness(&l, &h.cover())?;
    r.millis += start.elapsed().as_millis() as u64;
    let prefix = id.split('/').next().unwrap_or(id);
    r.chain.push(step(
        prefix,
        WITNESS,
        format!(
            "instance {l} vs {}: e = {}",
            h.cover(),
            got.map_or("none".into(), |e| e.to_string())
        ),
    ));
    if got != Some(expected) {
        r.failure = Some(format!(
            "instance {l} vs {h}: expected witness {expected}, got {got:?}"
        ));
        r.revalidated = false;
    }
    Ok(())
}

fn sweep_report(
    id: &str,
    candidate: &str,
    target: &str,
    chain: Vec<super::Step>,
) -> EliminationReport {
    EliminationReport {
        case_id: id.to_string(),
        candidate: candidate.to_string(),
        target: target.to_string(),
        chain,
        outcome: Outcome::EliminatedByDegreeSweep,
        witness: None,
        revalidated: false,
        failure: None,
        millis: 0,
    }
}

/// An alternating candidate: its largest degree is at least `2^(m-1)`,
/// which cannot fit below the bound for `n >= 5`.
fn alternating_case() -> EliminationReport {
    let (lo, hi, q_max) = (5, 40, 1024);
    let sweep = inequality_sweep(lo, hi, q_max);
    let detail = format!(
        "2^((q^n-q)/(q-1)) < q^(n^2/2) at {} points with n in [{lo},{hi}], q <= {q_max}: {} true",
        sweep.points,
        sweep.exponential_holds.len()
    );
    let mut r = sweep_report(
        "3.2/alternating/inequality",
        "A_m",
        "PSL(n,q), n >= 5",
        vec![step("3.2", "alternating degree bound", detail)],
    );
    if sweep.all_false() && sweep.implication_failures.is_empty() {
        r.witness = Some(format!("no point of {}", sweep.points));
        r.revalidated = sweep.points > 0;
    } else {
        r.outcome = Outcome::UnresolvedExternalData;
        r.failure = Some(format!(
            "inequality holds at {:?}",
            sweep.exponential_holds.first()
        ));
    }
    r
}

/// Which unitary sub-cases exist and what they expect.
struct RankCase {
    tail: &'static str,
    equation: &'static str,
    candidate: &'static [Classical],
    /// `b = k a`.
    k: u32,
    expected_small: &'static [(u64, u64)],
}

const UNITARY_CASES: [RankCase; 4] = [
    RankCase {
        tail: "PSp",
        equation: "2m^2=n(n-1)",
        candidate: &[Classical::Symplectic],
        k: 1,
        expected_small: &[(9, 6)],
    },
    RankCase {
        tail: "PSL/b=2a",
        equation: "2m(m-1)=n(n-1)",
        candidate: &[Classical::Linear],
        k: 2,
        expected_small: &[(4, 3)],
    },
    RankCase {
        tail: "PSL/b=3a",
        equation: "3m(m-1)=n(n-1)",
        candidate: &[Classical::Linear],
        k: 3,
        expected_small: &[(3, 2)],
    },
    RankCase {
        tail: "POmega/b=a",
        equation: "2m(m-1)=n(n-1)",
        candidate: &[Classical::OrthogonalPlus, Classical::OrthogonalMinus],
        k: 1,
        expected_small: &[],
    },
];

const SMALL_RANK: u64 = 9;

fn unitary_subcases(cfg: &Config) -> Result<Vec<EliminationReport>> {
    let mut out = Vec::new();
    for rc in &UNITARY_CASES {
        let eq: Equation = rc.equation.parse()?;
        if !rc.expected_small.is_empty() {
            out.push(timed_try(|| small_rank_case(cfg, rc, &eq))?);
        }
        out.push(timed_try(|| large_rank_case(cfg, rc, &eq))?);
    }
    Ok(out)
}

fn render_set(s: &BTreeSet<(u64, u64)>) -> String {
    let items: Vec<String> = s.iter().map(|(n, m)| format!("({n},{m})")).collect();
    format!("{{{}}}", items.join(","))
}

/// The rank equation for `n <= 9`, then the generic case at each solution.
fn small_rank_case(cfg: &Config, rc: &RankCase, eq: &Equation) -> Result<EliminationReport> {
    let sols = solve_diophantine(eq, SMALL_RANK, SMALL_RANK)?;
    let expected: BTreeSet<(u64, u64)> = rc.expected_small.iter().copied().collect();
    let mut chain = vec![step(
        "4.1",
        STEINBERG,
        format!(
            "b = {}a gives {eq}: {} for n <= {SMALL_RANK}",
            rc.k,
            render_set(&sols)
        ),
    )];
    let mut r = sweep_report(
        &format!("4.1/{}/diophantine", rc.tail),
        "",
        "PSU(n,p^a)",
        Vec::new(),
    );
    let y = rc.candidate[0];
    r.candidate = format!("{}(m,p^({}a))", y.short_name(), rc.k);
    if sols != expected {
        r.failure = Some(format!(
            "expected {}, found {}",
            render_set(&expected),
            render_set(&sols)
        ));
    }
    let mut witnesses = Vec::new();
    let mut outcome = Outcome::EliminatedByOrderWitness;
    let mut revalidated = true;
    for &(n, m) in &sols {
        let sub = classical_case(cfg, "4.1", Classical::Unitary, n as u32, y, m as u32);
        chain.push(step(
            "4.1",
            WITNESS,
            format!("({n},{m}) -> {}: {}", sub.case_id, sub.outcome),
        ));
        chain.extend(sub.chain.iter().cloned());
        witnesses.push(format!(
            "({n},{m}): {}",
            sub.witness.clone().unwrap_or_else(|| "none".into())
        ));
        if !sub.outcome.is_eliminated() {
            outcome = Outcome::UnresolvedExternalData;
        } else if outcome.is_eliminated() {
            outcome = sub.outcome;
        }
        revalidated &= sub.revalidated;
        if r.failure.is_none() {
            r.failure = sub.failure;
        }
    }
    r.chain = chain;
    r.outcome = outcome;
    r.witness = outcome.is_eliminated().then(|| witnesses.join("; "));
    r.revalidated = revalidated && !sols.is_empty() && r.failure.is_none();
    Ok(r)
}

fn unipotent_at(kind: Classical, m: u32, p: u64, b: u32) -> Result<BigUint> {
    unipotent_witness_degree(UnipotentFamily::of(kind), m)?.eval(m, p, b)
}

/// Solutions with `n >= 10`: the candidate's unipotent degree against the
/// unitary table.
fn large_rank_case(cfg: &Config, rc: &RankCase, eq: &Equation) -> Result<EliminationReport> {
    let sols: BTreeSet<(u64, u64)> =
        solve_diophantine(eq, cfg.sweep_max_n as u64, cfg.sweep_max_n as u64)?
            .into_iter()
            .filter(|&(n, _)| n >= 10)
            .collect();
    let mut points = Vec::new();
    for &(n, m) in &sols {
        for &p in &cfg.primes {
            for a in 1..=cfg.sweep_max_a {
                points.push(SweepPoint {
                    n: n as u32,
                    m: m as u32,
                    p,
                    a,
                });
            }
        }
    }
    let candidates: Vec<Classical> = rc
        .candidate
        .iter()
        .copied()
        .filter(|y| sols.iter().all(|&(_, m)| m as u32 >= y.min_rank()))
        .collect();
    let lhs = |pt: &SweepPoint| -> Result<Option<BTreeSet<BigUint>>> {
        let cutoff = cfg
            .tables
            .low_degree_table(Classical::Unitary, pt.n, pt.p, pt.a)
            .map(|r| r.cutoff());
        let Ok(cutoff) = cutoff else { return Ok(None) };
        let mut set = BTreeSet::new();
        for &y in &candidates {
            let d = unipotent_at(y, pt.m, pt.p, rc.k * pt.a)?;
            if d >= cutoff {
                return Ok(None);
            }
            set.insert(d);
        }
        Ok(Some(set))
    };
    let rhs = |pt: &SweepPoint| -> Result<Option<BTreeSet<BigUint>>> {
        match cfg
            .tables
            .low_degree_table(Classical::Unitary, pt.n, pt.p, pt.a)
        {
            Ok(row) => row.values().map(Some),
            Err(_) => Ok(None),
        }
    };
    let sweep = degree_equation_sweep(points, lhs, rhs)?;
    let names: Vec<&str> = candidates.iter().map(|y| y.short_name()).collect();
    let chain = vec![
        step("4.1", STEINBERG, format!("b = {}a gives {eq}: {} for 10 <= n <= {}", rc.k, render_set(&sols), cfg.sweep_max_n)),
        step(
            "4.1",
            DEGREES,
            format!(
                "unipotent degree of {} against the unitary table: {} points checked, {} skipped, {} solutions",
                names.join("/"),
                sweep.checked,
                sweep.skipped,
                sweep.solutions.len()
            ),
        ),
    ];
    let mut r = sweep_report(
        &format!("4.1/{}/n>=10", rc.tail),
        &format!("{}(m,p^({}a))", names.join("/"), rc.k),
        "PSU(n,p^a), n >= 10",
        chain,
    );
    finish_sweep(&mut r, sweep.checked, &sweep.solutions);
    Ok(r)
}

/// A degree that also appears in the target's table decides nothing: the
/// tables list possible degrees, so such points are left to external data.
fn finish_sweep(r: &mut EliminationReport, checked: u64, solutions: &[SweepPoint]) {
    if solutions.is_empty() {
        r.witness = Some(format!("no solutions at {checked} points"));
        r.revalidated = checked > 0;
    } else {
        r.outcome = Outcome::UnresolvedExternalData;
        let pts: Vec<String> = solutions
            .iter()
            .map(|s| format!("(n={},q={}^{})", s.n, s.p, s.a))
            .collect();
        let prefix = r.case_id.split('/').next().unwrap_or("").to_string();
        r.chain.push(step(
            &prefix,
            DEGREES,
            format!("table also contains the degree at {}", pts.join(", ")),
        ));
    }
}

const ORTH_SWEEP_N: (u32, u32) = (3, 20);
const ORTH_SWEEP_Q: u64 = 81;

fn odd_field_points() -> Vec<SweepPoint> {
    let mut pts = Vec::new();
    for n in ORTH_SWEEP_N.0..=ORTH_SWEEP_N.1 {
        for (p, a) in prime_powers_up_to(ORTH_SWEEP_Q) {
            if p != 2 {
                pts.push(SweepPoint { n, m: n, p, a });
            }
        }
    }
    pts
}

fn table_values(
    cfg: &Config,
    kind: Classical,
    pt: &SweepPoint,
) -> Result<Option<BTreeSet<BigUint>>> {
    match cfg.tables.low_degree_table(kind, pt.n, pt.p, pt.a) {
        Ok(row) => row.values().map(Some),
        Err(_) => Ok(None),
    }
}

/// `Omega(2n+1,q)` against `PSp(2n,q)`: the orders agree, the degree
/// `(q^(2n)-1)/(q^2-1)` separates them.
fn omega_extra_degree_case(cfg: &Config) -> Result<EliminationReport> {
    let sweep = degree_equation_sweep(
        odd_field_points(),
        |pt| Ok(Some(BTreeSet::from([omega_extra_degree(&field(pt), pt.n)]))),
        |pt| table_values(cfg, Classical::Symplectic, pt),
    )?;
    let chain = vec![step(
        "5.1",
        DEGREES,
        format!(
            "(q^(2n)-1)/(q^2-1) against the symplectic table, n in [{},{}], odd q <= {ORTH_SWEEP_Q}: {} checked, {} skipped",
            ORTH_SWEEP_N.0, ORTH_SWEEP_N.1, sweep.checked, sweep.skipped
        ),
    )];
    let mut r = sweep_report(
        "5.1/Omega/extra-degree",
        "Omega(2n+1,q)",
        "PSp(2n,q)",
        chain,
    );
    finish_sweep(&mut r, sweep.checked, &sweep.solutions);
    Ok(r)
}

/// `PSp(2n,q)` against `Omega(2n+1,q)`: neither Weil degree occurs.
fn weil_case(cfg: &Config) -> Result<EliminationReport> {
    let sweep = degree_equation_sweep(
        odd_field_points(),
        |pt| Ok(Some(weil_degrees(&field(pt), pt.n).into_iter().collect())),
        |pt| table_values(cfg, Classical::OddOrthogonal, pt),
    )?;
    let chain = vec![step(
        "6.1",
        DEGREES,
        format!(
            "(q^n +- 1)/2 against the odd orthogonal table, n in [{},{}], odd q <= {ORTH_SWEEP_Q}: {} checked, {} skipped",
            ORTH_SWEEP_N.0, ORTH_SWEEP_N.1, sweep.checked, sweep.skipped
        ),
    )];
    let mut r = sweep_report("6.1/PSp/weil", "PSp(2n,q)", "Omega(2n+1,q)", chain);
    finish_sweep(&mut r, sweep.checked, &sweep.solutions);
    Ok(r)
}
