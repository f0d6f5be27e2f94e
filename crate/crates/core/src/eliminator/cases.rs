//! One candidate family against one target family.
//!
//! The Steinberg match fixes `b = u c`, `a = v c`. A case is then settled,
//! in this order, by a primitive-prime witness valid for all `c`, by the
//! p-part of a unipotent degree of the candidate, or by comparing degree
//! sets and orders at the finitely many points the p-part argument leaves.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;

use super::steinberg::{steinberg_match, SteinbergMatch};
use super::{Config, EliminationReport, Outcome, Step};
use crate::arith::{pow_big, valuation};
use crate::degrees::{unipotent_witness_degree, PPartShape, UnipotentFamily};
use crate::groups::{
    canonicalize, exceptional_schur_list, render_family, Classical, ExceptionalTag, Family, Flavor,
    GroupSpec,
};
use crate::orders::{center_order_at, order_at};
use crate::zsigmondy::{
    center_blocks, exponent_coverage, family_witnesses, is_zsigmondy_exception, FamilyWitness,
};

pub(crate) const STEINBERG: &str = "Steinberg degree match";
pub(crate) const RANK_BOUND: &str = "exceptional rank bound";
pub(crate) const WITNESS: &str = "primitive prime divisor";
pub(crate) const FIELD: &str = "field parameters";
pub(crate) const PPART: &str = "p-part of a unipotent degree";
pub(crate) const DEGREES: &str = "low-degree table";
pub(crate) const ORDER: &str = "order divisibility";
pub(crate) const ATLAS: &str = "exceptional Schur multiplier";

/// `Lemma 6.2` for the prefix `6.2-`.
pub(crate) fn lemma_label(prefix: &str) -> String {
    format!("Lemma {}", prefix.trim_end_matches(['+', '-']))
}

pub(crate) fn step(prefix: &str, what: &str, detail: impl Into<String>) -> Step {
    Step {
        paper_ref: format!("{}: {what}", lemma_label(prefix)),
        detail: detail.into(),
    }
}

/// `(q^(2m) - 1)/(q^2 - 1)`, a degree of `Omega(2m+1, q)` for odd `q`.
pub fn omega_extra_degree(q: &BigUint, m: u32) -> BigUint {
    let q2 = q * q;
    (q2.pow(m) - 1u32) / (q2 - 1u32)
}

/// The two Weil degrees `(q^m + 1)/2` and `(q^m - 1)/2` of `Sp(2m, q)`, `q` odd.
pub fn weil_degrees(q: &BigUint, m: u32) -> [BigUint; 2] {
    let qm = q.pow(m);
    [(&qm + 1u32) / 2u32, (qm - 1u32) / 2u32]
}

fn forced_prime(f: Family) -> Option<u64> {
    match f {
        Family::Exceptional(ExceptionalTag::Suzuki | ExceptionalTag::TwistedF4) => Some(2),
        Family::Exceptional(ExceptionalTag::Ree) => Some(3),
        _ => None,
    }
}

fn needs_odd_exponent(f: Family) -> bool {
    matches!(
        f,
        Family::Exceptional(
            ExceptionalTag::Suzuki | ExceptionalTag::Ree | ExceptionalTag::TwistedF4
        )
    )
}

fn needs_odd_p(f: Family) -> bool {
    matches!(f, Family::Classical(Classical::OddOrthogonal, _))
}

/// The handful of members that are not simple.
pub(crate) fn is_small_nonsimple(s: &GroupSpec) -> bool {
    let q = s.p.checked_pow(s.exponent).unwrap_or(u64::MAX);
    match s.family {
        Family::Classical(Classical::Linear, 2) => q <= 3,
        Family::Classical(Classical::Unitary, 3) | Family::Classical(Classical::Symplectic, 2) => {
            q == 2
        }
        Family::Exceptional(
            ExceptionalTag::G2 | ExceptionalTag::Suzuki | ExceptionalTag::TwistedF4,
        ) => q == 2,
        Family::Exceptional(ExceptionalTag::Ree) => q == 3,
        _ => false,
    }
}

/// Targets whose Schur multiplier exceeds the generic center; they have
/// their own cases.
pub(crate) fn is_atlas(s: &GroupSpec) -> bool {
    let canon = canonicalize(s.simple());
    exceptional_schur_list().contains(&canon)
}

fn field_text(k: u64) -> String {
    if k == 1 {
        "p^c".to_string()
    } else {
        format!("p^({k}c)")
    }
}

/// A matched pair: candidate `l` over `p^(u c)`, target `s` over `p^(v c)`.
pub(crate) struct Pair {
    pub l: Family,
    pub s: Family,
    pub m: SteinbergMatch,
}

impl Pair {
    pub fn new(l: Family, s: Family) -> Pair {
        Pair {
            l,
            s,
            m: steinberg_match(l, s),
        }
    }

    fn exps(&self, c: u32) -> Option<(u32, u32)> {
        let b = u32::try_from(self.m.u * c as u64).ok()?;
        let a = u32::try_from(self.m.v * c as u64).ok()?;
        Some((b, a))
    }

    fn specs(&self, p: u64, c: u32) -> Option<(GroupSpec, GroupSpec)> {
        let (b, a) = self.exps(c)?;
        let l = GroupSpec {
            family: self.l,
            p,
            exponent: b,
            flavor: Flavor::Simple,
        };
        let s = GroupSpec {
            family: self.s,
            p,
            exponent: a,
            flavor: Flavor::Simple,
        };
        Some((l, s))
    }

    /// Both groups exist and are simple, and the target's cover is generic.
    pub fn usable(&self, p: u64, c: u32) -> bool {
        let Some((l, s)) = self.specs(p, c) else {
            return false;
        };
        l.check_shape().is_ok()
            && s.check_shape().is_ok()
            && !is_small_nonsimple(&l)
            && !is_small_nonsimple(&s)
            && !is_atlas(&s)
    }

    /// `|L|` divides `|Schur(S)|` at the point.
    pub fn divides(&self, p: u64, c: u32) -> bool {
        let (b, a) = self.exps(c).expect("point exponents fit");
        let l = order_at(self.l, p, b, Flavor::Simple);
        let h = order_at(self.s, p, a, Flavor::Cover);
        (h % l).is_zero()
    }

    /// Some prime of the given parity and some `c` satisfy the structural
    /// constraints of both families.
    pub fn parity_admissible(&self, even: bool) -> bool {
        if even && (needs_odd_p(self.l) || needs_odd_p(self.s)) {
            return false;
        }
        if (needs_odd_exponent(self.l) && self.m.u.is_multiple_of(2))
            || (needs_odd_exponent(self.s) && self.m.v.is_multiple_of(2))
        {
            return false;
        }
        match (forced_prime(self.l), forced_prime(self.s)) {
            (Some(x), Some(y)) if x != y => false,
            (Some(x), _) | (_, Some(x)) => (x == 2) == even,
            _ => true,
        }
    }

    fn primes(&self, cfg: &Config, even: Option<bool>) -> Vec<u64> {
        let mut ps: BTreeSet<u64> = cfg.primes.iter().copied().collect();
        ps.extend(forced_prime(self.l));
        ps.extend(forced_prime(self.s));
        ps.into_iter()
            .filter(|&p| even.is_none_or(|e| (p == 2) == e))
            .collect()
    }

    /// Sample points `(p, c)`, usable or not. A twisted candidate only
    /// exists at odd `c`, so the first `max_c` odd values are taken.
    pub fn samples(&self, cfg: &Config, even: Option<bool>) -> Vec<(u64, u32)> {
        let odd_only = needs_odd_exponent(self.l);
        let cs: Vec<u32> = (1..)
            .filter(|c| !odd_only || c % 2 == 1)
            .take(cfg.max_c as usize)
            .collect();
        let mut out = Vec::new();
        for p in self.primes(cfg, even) {
            for &c in &cs {
                out.push((p, c));
            }
        }
        out
    }

    /// The exact checks behind a witness `e` at one point.
    fn recheck_witness(&self, p: u64, c: u32, w: &FamilyWitness) -> Result<(), String> {
        let e = w.e0 * c as u64;
        let (l, s) = self.specs(p, c).expect("usable point");
        // the one point without a primitive prime is settled by division alone
        if !(p == 2 && e == 6) {
            if is_zsigmondy_exception(p, 1, e) {
                return Err("no primitive prime divisor".into());
            }
            if !exponent_coverage(&l).certain().contains(&e) {
                return Err("exponent not certainly covered by the candidate".into());
            }
            let (cl, ch) = (exponent_coverage(&l), exponent_coverage(&s.cover()));
            match w.excess {
                None if ch.contains(e) => return Err("exponent covered by the target cover".into()),
                Some(_) if cl.multiplicity(e) <= ch.multiplicity(e) => {
                    return Err("multiplicity not larger than in the target cover".into())
                }
                _ => {}
            }
            if center_blocks(e, center_order_at(self.l, p, l.exponent as u64)) {
                return Err("primitive prime may lie in the center".into());
            }
        }
        if self.divides(p, c) {
            return Err("|L| divides |Schur(S)|".into());
        }
        Ok(())
    }

    pub fn describe(&self) -> (String, String) {
        (
            render_family(self.l, Flavor::Simple, &field_text(self.m.u)),
            render_family(self.s, Flavor::Simple, &field_text(self.m.v)),
        )
    }
}

/// Outcome of the family-witness search.
struct WitnessFound {
    witness: FamilyWitness,
    checked: usize,
    failure: Option<String>,
}

fn find_witness(pair: &Pair, cfg: &Config) -> Option<WitnessFound> {
    for w in family_witnesses(pair.l, pair.m.u, pair.s, pair.m.v) {
        let mut checked = 0;
        if let Some(c0) = w.exceptional_c {
            if pair.usable(2, c0) {
                if pair.divides(2, c0) {
                    continue;
                }
                checked += 1;
            }
        }
        let mut failure = None;
        for (p, c) in pair.samples(cfg, None) {
            if !pair.usable(p, c) || Some(c) == w.exceptional_c.filter(|_| p == 2) {
                continue;
            }
            match pair.recheck_witness(p, c, &w) {
                Ok(()) => checked += 1,
                Err(msg) => {
                    failure = Some(format!("witness {} at p={p}, c={c}: {msg}", w.render()));
                    break;
                }
            }
        }
        return Some(WitnessFound {
            witness: w,
            checked,
            failure,
        });
    }
    None
}

/// Exponent `T` with the candidate's unipotent witness degree below `q^T`.
fn degree_exponent(y: Classical, m: u32) -> u64 {
    let m = m as u64;
    match y {
        Classical::Linear => m,
        Classical::Unitary => m - 1,
        Classical::Symplectic | Classical::OddOrthogonal => 2 * m,
        Classical::OrthogonalPlus | Classical::OrthogonalMinus => 2 * (m - 1),
    }
}

fn witness_degree(y: Classical, m: u32, p: u64, b: u32) -> BigUint {
    unipotent_witness_degree(UnipotentFamily::of(y), m)
        .and_then(|d| d.eval(m, p, b))
        .expect("unipotent witness degree is integral at admissible ranks")
}

enum Settled {
    Skipped,
    Degrees(String),
    Order,
    Open(String),
}

/// Candidate degrees that rule out a point when every member of one group
/// is missing from the target's table.
fn candidate_degree_groups(
    y: Classical,
    m: u32,
    p: u64,
    b: u32,
) -> Vec<(&'static str, Vec<BigUint>)> {
    let q = pow_big(p, b as u64);
    let mut groups = vec![("unipotent", vec![witness_degree(y, m, p, b)])];
    if y == Classical::OddOrthogonal {
        groups.push(("extra orthogonal", vec![omega_extra_degree(&q, m)]));
    }
    if y == Classical::Symplectic && p != 2 {
        groups.push(("Weil", weil_degrees(&q, m).to_vec()));
    }
    groups
}

#[allow(clippy::too_many_arguments)]
fn settle_point(
    pair: &Pair,
    cfg: &Config,
    x: Classical,
    n: u32,
    y: Classical,
    ym: u32,
    p: u64,
    c: u32,
) -> Settled {
    if !pair.usable(p, c) {
        return Settled::Skipped;
    }
    let (b, a) = pair.exps(c).expect("usable point");
    if let Ok(row) = cfg.tables.low_degree_table(x, n, p, a) {
        if let Ok(values) = row.values() {
            let cutoff = row.cutoff();
            for (label, degs) in candidate_degree_groups(y, ym, p, b) {
                if degs.iter().all(|d| d < &cutoff && !values.contains(d)) {
                    return Settled::Degrees(format!(
                        "{label} degree missing from table {} at p={p}, c={c}",
                        row.table.id
                    ));
                }
            }
        }
    }
    if !pair.divides(p, c) {
        return Settled::Order;
    }
    Settled::Open(format!("p={p}, c={c}"))
}

/// Generic classical pair `Y_m` against `X_n`.
pub fn classical_case(
    cfg: &Config,
    prefix: &str,
    x: Classical,
    n: u32,
    y: Classical,
    m: u32,
) -> EliminationReport {
    let id = format!("{prefix}/{}/m={m},n={n}", y.short_name());
    let pair = Pair::new(Family::Classical(y, m), Family::Classical(x, n));
    point_case(cfg, prefix, id, &pair, Vec::new())
}

/// Exceptional candidate against `X_n`, `n` within the rank bound.
pub fn exceptional_case(
    cfg: &Config,
    prefix: &str,
    x: Classical,
    n: u32,
    tag: ExceptionalTag,
    bound: u32,
) -> EliminationReport {
    let id = format!("{prefix}/{}/n={n}", tag.tag());
    let pair = Pair::new(Family::Exceptional(tag), Family::Classical(x, n));
    let chain = vec![step(prefix, RANK_BOUND, format!("n <= {bound}"))];
    point_case(cfg, prefix, id, &pair, chain)
}

/// A target with an exceptional multiplier: its cover's degrees are not
/// covered by the generic data.
pub fn atlas_case(cfg: &Config, prefix: &str, spec: GroupSpec) -> EliminationReport {
    let name = render_family(spec.family, Flavor::Simple, &spec.q().to_string());
    let detail = match cfg.multipliers.mult_order(&spec) {
        Ok(rec) => format!(
            "Mult({name}) = {}, larger than the generic center",
            rec.structure
        ),
        Err(e) => format!("multiplier unavailable: {e}"),
    };
    EliminationReport {
        case_id: format!("{prefix}/atlas/{name}"),
        candidate: "any quasisimple group of the same characteristic".into(),
        target: name,
        chain: vec![step(prefix, ATLAS, detail)],
        outcome: Outcome::UnresolvedExternalData,
        witness: None,
        revalidated: false,
        failure: None,
        millis: 0,
    }
}

fn report(
    id: String,
    pair: &Pair,
    chain: Vec<Step>,
    outcome: Outcome,
    witness: Option<String>,
) -> EliminationReport {
    let (candidate, target) = pair.describe();
    EliminationReport {
        case_id: id,
        candidate,
        target,
        chain,
        outcome,
        witness,
        revalidated: false,
        failure: None,
        millis: 0,
    }
}

fn point_case(
    cfg: &Config,
    prefix: &str,
    id: String,
    pair: &Pair,
    mut chain: Vec<Step>,
) -> EliminationReport {
    let sm = pair.m;
    chain.push(step(
        prefix,
        STEINBERG,
        format!("{}, {}", sm.equation(), sm.ratio()),
    ));

    let parities: Vec<bool> = [true, false]
        .into_iter()
        .filter(|&e| pair.parity_admissible(e))
        .collect();
    if parities.is_empty() {
        chain.push(step(
            prefix,
            FIELD,
            "no prime and field exponent satisfy both families",
        ));
        let mut r = report(
            id,
            pair,
            chain,
            Outcome::EliminatedByPpartFilter,
            Some("no admissible (p,b)".into()),
        );
        // confirm on the sample grid that no point yields valid groups
        let pts = pair.samples(cfg, None);
        let bad = pts.iter().find(|&&(p, c)| {
            pair.specs(p, c)
                .is_some_and(|(l, s)| l.check_shape().is_ok() && s.check_shape().is_ok())
        });
        r.revalidated = bad.is_none() && !pts.is_empty();
        r.failure = bad.map(|(p, c)| format!("p={p}, c={c} gives valid groups"));
        return r;
    }

    if let Some(found) = find_witness(pair, cfg) {
        let w = found.witness;
        let mut detail = format!("l(p,1,{}) divides |L| but not |Schur(S)|", w.render());
        if let Some(c0) = w.exceptional_c {
            detail.push_str(&format!("; p=2, c={c0} settled by exact division"));
        }
        chain.push(step(prefix, WITNESS, detail));
        let mut r = report(
            id,
            pair,
            chain,
            Outcome::EliminatedByOrderWitness,
            Some(w.render()),
        );
        r.revalidated = found.failure.is_none() && found.checked > 0;
        r.failure = found.failure;
        return r;
    }

    let Family::Classical(y, ym) = pair.l else {
        chain.push(step(
            prefix,
            WITNESS,
            "no exponent separates the orders for every c",
        ));
        return report(id, pair, chain, Outcome::UnresolvedExternalData, None);
    };
    let Family::Classical(x, n) = pair.s else {
        unreachable!("targets are classical")
    };
    ppart_case(cfg, prefix, id, pair, chain, &parities, (x, n), (y, ym))
}

#[allow(clippy::too_many_arguments)]
fn ppart_case(
    cfg: &Config,
    prefix: &str,
    id: String,
    pair: &Pair,
    mut chain: Vec<Step>,
    parities: &[bool],
    (x, n): (Classical, u32),
    (y, ym): (Classical, u32),
) -> EliminationReport {
    let (u, v) = (pair.m.u, pair.m.v);
    let unitary = x == Classical::Unitary;
    let t = degree_exponent(y, ym);
    let mut residual: Vec<(u64, u32)> = Vec::new();
    let mut filtered: Vec<bool> = Vec::new();
    let mut open: Vec<String> = Vec::new();

    for &even in parities {
        let rep = if even { 2 } else { 3 };
        let class = if even { "p = 2" } else { "p odd" };
        let Ok(table) = cfg.tables.table_for(x, rep) else {
            open.push(format!("{class}: no degree table"));
            continue;
        };
        let cutoff = table.cutoff_exponent(n) as u64;
        if !unitary && u * t > v * cutoff {
            chain.push(step(
                prefix,
                PPART,
                format!("{class}: q_L^{t} exceeds the table range q^{cutoff}"),
            ));
            open.push(format!("{class}: degree beyond table range"));
            continue;
        }
        let allowed = if unitary {
            vec![PPartShape::AnyPowerOfQ]
        } else {
            table.claimed_p_parts.clone()
        };
        let delta =
            u64::from(even && matches!(y, Classical::Symplectic | Classical::OddOrthogonal));
        let feas = super::ppart::feasible_generators(u, v, delta, rep, &allowed);
        let mut pts: Vec<(u64, u32)> = Vec::new();
        if feas.all_c {
            pts.extend(pair.samples(cfg, Some(even)));
            if pts.is_empty() {
                open.push(format!("{class}: no sample primes"));
            }
        }
        for &c in &feas.single {
            let Ok(c) = u32::try_from(c) else { continue };
            for p in pair.primes(cfg, Some(even)) {
                pts.push((p, c));
            }
        }
        if even && !unitary && v == 1 && cfg.tables.low_degree_table(x, n, 2, 1).is_err() {
            pts.push((2, 1));
        }
        let p_part = if delta == 1 {
            format!("p^({u}c-1)")
        } else {
            format!("p^({u}c)")
        };
        let what = if feas.all_c {
            "matches for every c".to_string()
        } else if feas.single.is_empty() {
            "matches no allowed shape".to_string()
        } else {
            format!("matches only at c in {:?}", feas.single)
        };
        chain.push(step(
            prefix,
            PPART,
            format!("{class}: p-part {p_part} at q = p^({v}c) {what}"),
        ));
        if !feas.all_c {
            filtered.push(even);
        }
        residual.extend(pts);
    }
    residual.sort_unstable();
    residual.dedup();

    if !open.is_empty() {
        return report(id, pair, chain, Outcome::UnresolvedExternalData, None);
    }

    // exact re-check of the filter at sample points it removed
    let mut checked = 0;
    let mut failure = None;
    for &even in &filtered {
        for (p, c) in pair.samples(cfg, Some(even)) {
            if residual.contains(&(p, c)) || !pair.usable(p, c) {
                continue;
            }
            let (b, a) = pair.exps(c).expect("usable point");
            let chi = witness_degree(y, ym, p, b);
            let exp = valuation(&chi, p) as i64;
            let table = cfg.tables.table_for(x, p).expect("table found above");
            let shape_ok = if unitary {
                exp % a as i64 == 0
            } else {
                table.p_part_allowed(p, a, exp)
            };
            let in_range = unitary || chi < pow_big(p, table.cutoff_exponent(n) as u64 * a as u64);
            if shape_ok || !in_range {
                failure = Some(format!("p-part filter contradicted at p={p}, c={c}"));
                break;
            }
            checked += 1;
        }
    }

    let mut by_degrees = Vec::new();
    let mut by_order = Vec::new();
    let mut still_open = Vec::new();
    for &(p, c) in &residual {
        match settle_point(pair, cfg, x, n, y, ym, p, c) {
            Settled::Skipped => {}
            Settled::Degrees(d) => by_degrees.push(d),
            Settled::Order => by_order.push(format!("p={p}, c={c}")),
            Settled::Open(d) => still_open.push(d),
        }
    }
    for d in &by_degrees {
        chain.push(step(prefix, DEGREES, d.clone()));
    }
    if !by_order.is_empty() {
        chain.push(step(
            prefix,
            ORDER,
            format!("|L| does not divide |Schur(S)| at {}", by_order.join("; ")),
        ));
    }
    checked += by_degrees.len() + by_order.len();
    if !still_open.is_empty() {
        chain.push(step(
            prefix,
            DEGREES,
            format!("not settled at {}", still_open.join("; ")),
        ));
        let mut r = report(id, pair, chain, Outcome::UnresolvedExternalData, None);
        r.failure = failure;
        return r;
    }
    let (outcome, witness) = if !by_degrees.is_empty() {
        (
            Outcome::EliminatedByDegreeSweep,
            format!("degrees at {} point(s)", by_degrees.len()),
        )
    } else if !by_order.is_empty() {
        (
            Outcome::EliminatedByPpartFilter,
            format!("p-part; order at {}", by_order.join("; ")),
        )
    } else {
        (Outcome::EliminatedByPpartFilter, "p-part".to_string())
    };
    let mut r = report(id, pair, chain, outcome, Some(witness));
    r.revalidated = failure.is_none() && checked > 0;
    r.failure = failure;
    r
}
