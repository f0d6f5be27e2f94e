//! Schur multipliers, automorphism orders of finite abelian groups, and the
//! comparison `|S| > |Aut(A)|` over abelian `A` with `|A| <= |Mult(S)|`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::arith::{factor_u64, pow_big};
use crate::degrees::partitions;
use crate::error::{Error, Result};
use crate::groups::{canonicalize, parse_and_validate, Classical, Family, Flavor, GroupSpec};
use crate::orders::{center_order, evaluate_order};

/// A finite abelian group: for each prime `r`, a partition `e1 >= e2 >= ...`
/// standing for `Z_{r^e1} x Z_{r^e2} x ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianGroupType {
    pub parts: BTreeMap<u64, Vec<u32>>,
}

impl AbelianGroupType {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        let mut parts = BTreeMap::new();
        for (r, e) in factor_u64(n) {
            parts.insert(r, vec![e]);
        }
        AbelianGroupType { parts }
    }

    /// Builds from arbitrary cyclic orders, splitting into prime-power parts.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            for (r, e) in factor_u64(n) {
                parts.entry(r).or_default().push(e);
            }
        }
        for v in parts.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        AbelianGroupType { parts }
    }

    pub fn order(&self) -> u64 {
        self.parts
            .iter()
            .map(|(&r, es)| r.pow(es.iter().sum()))
            .product()
    }

    /// Prime-power cyclic orders, prime by prime.
    pub fn cyclic_factors(&self) -> Vec<u64> {
        self.parts
            .iter()
            .flat_map(|(&r, es)| es.iter().map(move |&e| r.pow(e)))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "1" {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for piece in t.split(['x', '×']) {
            let piece = piece.trim();
            let body = piece
                .strip_prefix('Z')
                .ok_or_else(|| Error::data(format!("bad abelian factor {piece:?}")))?;
            let (base, power) = match body.split_once('^') {
                Some((b, k)) => (
                    b,
                    k.parse::<usize>()
                        .map_err(|_| Error::data(format!("bad power in {piece:?}")))?,
                ),
                None => (body, 1),
            };
            let n: u64 = base
                .parse()
                .map_err(|_| Error::data(format!("bad cyclic order {piece:?}")))?;
            if n < 2 {
                return Err(Error::data(format!(
                    "cyclic factor {piece:?} must have order at least 2"
                )));
            }
            orders.extend(std::iter::repeat_n(n, power));
        }
        Ok(Self::from_cyclic_orders(&orders))
    }
}

impl fmt::Display for AbelianGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.cyclic_factors();
        if parts.is_empty() {
            return f.write_str("1");
        }
        let s: Vec<String> = parts.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&s.join(" x "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplierSource {
    GenericFormula,
    PaperStated,
    ExternalData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplierRecord {
    pub group: GroupSpec,
    pub order: u64,
    pub structure: AbelianGroupType,
    pub source: MultiplierSource,
    pub citation: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct MultiplierCatalog {
    overrides: HashMap<GroupSpec, MultiplierRecord>,
}

const BUILTIN: &str = include_str!("../data/multipliers.txt");

impl MultiplierCatalog {
    pub fn builtin() -> &'static MultiplierCatalog {
        static CATALOG: OnceLock<MultiplierCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            MultiplierCatalog::parse(BUILTIN, "multipliers.txt")
                .expect("bundled multiplier data parses")
        })
    }

    pub fn load(path: &Path) -> Result<MultiplierCatalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
        MultiplierCatalog::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, name: &str) -> Result<MultiplierCatalog> {
        let mut overrides = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| Error::data(format!("{name}:{}: {msg}", i + 1));
            let cols: Vec<&str> = body.split('|').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(err(format!("expected 4 columns, found {}", cols.len())));
            }
            let spec = parse_and_validate(cols[0]).map_err(|e| err(e.to_string()))?;
            if spec.flavor != Flavor::Simple {
                return Err(err(format!("{} is not a simple group", cols[0])));
            }
            let spec = canonicalize(spec);
            let order: u64 = cols[1]
                .parse()
                .map_err(|_| err(format!("bad order {:?}", cols[1])))?;
            let structure = AbelianGroupType::parse(cols[2]).map_err(|e| err(e.to_string()))?;
            if structure.order() != order {
                return Err(err(format!(
                    "structure {structure} does not have order {order}"
                )));
            }
            let (source, citation) = match cols[3].split_once(':') {
                Some((s, c)) => (s.trim(), Some(c.trim().to_string())),
                None => (cols[3], None),
            };
            let source = match source {
                "paper_stated" => MultiplierSource::PaperStated,
                "external_data" => MultiplierSource::ExternalData,
                other => return Err(err(format!("unknown source {other:?}"))),
            };
            let rec = MultiplierRecord {
                group: spec,
                order,
                structure,
                source,
                citation,
            };
            if overrides.insert(spec, rec).is_some() {
                return Err(err(format!("duplicate entry for {spec}")));
            }
        }
        Ok(MultiplierCatalog { overrides })
    }

    pub fn overrides(&self) -> impl Iterator<Item = &MultiplierRecord> {
        self.overrides.values()
    }

    pub fn mult_order(&self, spec: &GroupSpec) -> Result<MultiplierRecord> {
        if spec.flavor != Flavor::Simple {
            return Err(Error::domain(format!("{spec} is not a simple group")));
        }
        spec.validate()?;
        let canon = canonicalize(*spec);
        if let Some(rec) = self.overrides.get(&canon) {
            return Ok(rec.clone());
        }
        Ok(generic_multiplier(canon))
    }
}

fn generic_multiplier(spec: GroupSpec) -> MultiplierRecord {
    let z = center_order(&spec);
    let (structure, source) = match spec.family {
        Family::Classical(Classical::OrthogonalPlus, n) if n % 2 == 0 && spec.p != 2 => (
            AbelianGroupType::from_cyclic_orders(&[2, 2]),
            MultiplierSource::PaperStated,
        ),
        Family::Classical(Classical::OrthogonalPlus | Classical::OrthogonalMinus, _) => {
            (AbelianGroupType::cyclic(z), MultiplierSource::ExternalData)
        }
        _ => (
            AbelianGroupType::cyclic(z),
            MultiplierSource::GenericFormula,
        ),
    };
    MultiplierRecord {
        group: spec,
        order: z,
        structure,
        source,
        citation: None,
    }
}

pub fn mult_order(spec: &GroupSpec) -> Result<MultiplierRecord> {
    MultiplierCatalog::builtin().mult_order(spec)
}

pub const ENUMERATE_LIMIT: u64 = 10_000;

/// All abelian groups of order exactly `n`.
pub fn enumerate_abelian(n: u64) -> Result<Vec<AbelianGroupType>> {
    if n == 0 || n > ENUMERATE_LIMIT {
        return Err(Error::domain(format!(
            "order {n} outside 1..={ENUMERATE_LIMIT}"
        )));
    }
    let mut out = vec![AbelianGroupType::trivial()];
    for (r, e) in factor_u64(n) {
        let mut next = Vec::new();
        for g in &out {
            for lambda in partitions(e) {
                let mut h = g.clone();
                h.parts.insert(r, lambda);
                next.push(h);
            }
        }
        out = next;
    }
    Ok(out)
}

pub const AUT_FORMULA_LIMIT: u64 = 1_000_000;
pub const AUT_BRUTE_LIMIT: u64 = 256;

/// `|Aut(A)|`, multiplicative over primes; for a single prime the standard
/// formula for `Z_{r^e1} x ... x Z_{r^ek}` with exponents sorted ascending:
/// `prod_k (r^{d_k} - r^{k-1}) * prod_j r^{e_j (k - d_j)} * prod_i r^{(e_i - 1)(k - c_i + 1)}`
/// where `d_k` is the last and `c_k` the first index holding the value `e_k`.
#[allow(clippy::needless_range_loop)]
pub fn aut_order_abelian(a: &AbelianGroupType) -> Result<BigUint> {
    if a.order() > AUT_FORMULA_LIMIT {
        return Err(Error::domain(format!(
            "order {} above {AUT_FORMULA_LIMIT}",
            a.order()
        )));
    }
    let mut total = BigUint::one();
    for (&r, es) in &a.parts {
        let mut e: Vec<u64> = es.iter().map(|&x| x as u64).collect();
        e.sort_unstable();
        let k = e.len() as u64;
        let d = |i: usize| e.iter().rposition(|&x| x == e[i]).unwrap() as u64 + 1;
        let c = |i: usize| e.iter().position(|&x| x == e[i]).unwrap() as u64 + 1;
        for i in 0..e.len() {
            total *= pow_big(r, d(i)) - pow_big(r, i as u64);
            total *= pow_big(r, e[i] * (k - d(i)));
            total *= pow_big(r, (e[i] - 1) * (k - c(i) + 1));
        }
    }
    Ok(total)
}

/// Automorphism count by enumeration: an automorphism is a choice of images
/// `x_j` with `ord(x_j) | n_j` that generate `A`. Generation forces each
/// step to grow the subgroup by exactly `n_j`, which gives a memoized count
/// over (subgroup, step).
pub fn aut_order_brute(a: &AbelianGroupType) -> Result<u128> {
    let n = a.order();
    if n > AUT_BRUTE_LIMIT {
        return Err(Error::domain(format!("order {n} above {AUT_BRUTE_LIMIT}")));
    }
    let mods = a.cyclic_factors();
    let g = Enumerated::new(&mods);
    let mut memo = HashMap::new();
    let start = Bits::single(0);
    Ok(count_extensions(&g, &mods, 0, start, &mut memo))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Bits([u64; 4]);

impl Bits {
    fn single(i: usize) -> Bits {
        let mut b = Bits([0; 4]);
        b.set(i);
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn count(&self) -> u64 {
        self.0.iter().map(|w| w.count_ones() as u64).sum()
    }
}

/// Elements of `Z_{m1} x ... x Z_{mk}` indexed in mixed radix.
struct Enumerated {
    size: usize,
    add: Vec<Vec<usize>>,
    order: Vec<u64>,
}

impl Enumerated {
    fn new(mods: &[u64]) -> Enumerated {
        let size = mods.iter().product::<u64>() as usize;
        let digits = |mut i: usize| {
            mods.iter()
                .map(|&m| {
                    let d = i % m as usize;
                    i /= m as usize;
                    d
                })
                .collect::<Vec<_>>()
        };
        let index = |ds: &[usize]| {
            let mut i = 0;
            for (d, &m) in ds.iter().zip(mods).rev() {
                i = i * m as usize + d;
            }
            i
        };
        let all: Vec<Vec<usize>> = (0..size).map(digits).collect();
        let add = (0..size)
            .map(|x| {
                (0..size)
                    .map(|y| {
                        let s: Vec<usize> = all[x]
                            .iter()
                            .zip(&all[y])
                            .zip(mods)
                            .map(|((a, b), &m)| (a + b) % m as usize)
                            .collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect::<Vec<Vec<usize>>>();
        let order = (0..size)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != 0 {
                    y = add[y][x];
                    k += 1;
                }
                k
            })
            .collect();
        Enumerated { size, add, order }
    }

    /// `<h, x>` for a subgroup `h`.
    fn join(&self, h: &Bits, x: usize) -> Bits {
        let mut out = *h;
        let mut shift = x;
        for _ in 1..self.order[x] {
            for y in 0..self.size {
                if h.get(y) {
                    out.set(self.add[y][shift]);
                }
            }
            shift = self.add[shift][x];
        }
        out
    }
}

fn count_extensions(
    g: &Enumerated,
    mods: &[u64],
    j: usize,
    h: Bits,
    memo: &mut HashMap<(Bits, usize), u128>,
) -> u128 {
    if j == mods.len() {
        return 1;
    }
    if let Some(&v) = memo.get(&(h, j)) {
        return v;
    }
    let want = h.count() * mods[j];
    let mut total = 0;
    for x in 0..g.size {
        if !mods[j].is_multiple_of(g.order[x]) {
            continue;
        }
        let joined = g.join(&h, x);
        if joined.count() == want {
            total += count_extensions(g, mods, j + 1, joined, memo);
        }
    }
    memo.insert((h, j), total);
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma73Report {
    pub group: GroupSpec,
    pub pass: bool,
    pub group_order: BigUint,
    pub multiplier: MultiplierRecord,
    pub max_aut: BigUint,
    pub witness: AbelianGroupType,
}

/// Compares `|S|` with the largest `|Aut(A)|` over abelian `A` of every
/// order up to `|Mult(S)|`.
pub fn lemma73_check(spec: &GroupSpec) -> Result<Lemma73Report> {
    lemma73_check_with(MultiplierCatalog::builtin(), spec)
}

pub fn lemma73_check_with(catalog: &MultiplierCatalog, spec: &GroupSpec) -> Result<Lemma73Report> {
    let multiplier = catalog.mult_order(spec)?;
    let canon = multiplier.group;
    let group_order = evaluate_order(&canon);
    let mut max_aut = BigUint::one();
    let mut witness = AbelianGroupType::trivial();
    for n in 1..=multiplier.order {
        for a in enumerate_abelian(n)? {
            let aut = aut_order_abelian(&a)?;
            if aut > max_aut {
                max_aut = aut;
                witness = a;
            }
        }
    }
    Ok(Lemma73Report {
        group: canon,
        pass: group_order > max_aut,
        group_order,
        multiplier,
        max_aut,
        witness,
    })
}
