//! Primitive prime divisors and the coverage argument built on them.
//!
//! A prime `l` is primitive for `p^e - 1` when it divides `p^e - 1` but no
//! `p^i - 1` with `i < e`. Then `l | p^f - 1` exactly when `e | f`, and
//! `l | p^f + 1` exactly when `e | 2f` and `e` does not divide `f`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{divisors, factor_u64, gcd, smallest_prime_factor_big, strip_common};
use crate::error::{Error, Result};
use crate::groups::{Classical, ExceptionalTag, Factor, Family, GroupSpec, Sign};
use crate::orders::{center_order, divides_exact, family_factors};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpdMode {
    Exists,
    Find,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PpdResult {
    Exception,
    Exists,
    Prime(BigUint),
    Unknown,
}

/// The two families with no primitive prime divisor.
pub fn is_zsigmondy_exception(x: u64, y: u64, n: u64) -> bool {
    (x == 2 && y == 1 && n == 6) || (n == 2 && (x + y).is_power_of_two())
}

/// Primitive prime divisor of `x^n - y^n`.
///
/// Exists mode strips from `x^n - y^n` every prime shared with some
/// `x^d - y^d`, `d` a proper divisor of `n`; whatever is left consists of
/// primitive primes. No factoring is needed. Find mode then factors the
/// remainder within the trial-division and rho budget.
pub fn ppd(x: u64, y: u64, n: u64, mode: PpdMode) -> Result<PpdResult> {
    if !(x > y && y >= 1 && n >= 2 && gcd(x, y) == 1) {
        return Err(Error::domain(format!(
            "ppd needs x > y >= 1 coprime and n >= 2, got ({x},{y},{n})"
        )));
    }
    let n32 = u32::try_from(n).map_err(|_| Error::domain("n too large"))?;
    let xb = BigUint::from(x);
    let yb = BigUint::from(y);
    let mut rest = xb.pow(n32) - yb.pow(n32);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let g = xb.pow(d as u32) - yb.pow(d as u32);
        strip_common(&mut rest, &g);
    }
    if rest.is_one() {
        return Ok(PpdResult::Exception);
    }
    match mode {
        PpdMode::Exists => Ok(PpdResult::Exists),
        PpdMode::Find => Ok(match smallest_prime_factor_big(&rest) {
            Some(r) => PpdResult::Prime(r),
            None => PpdResult::Unknown,
        }),
    }
}

/// Exponents `e` for which a primitive prime `l(p,1,e)` divides the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageSet {
    pub p: u64,
    /// `(f, sign)` for each numerator factor `p^f -+ 1`.
    pub numerator: Vec<(u64, Sign)>,
    pub divisor: Vec<(u64, Sign)>,
}

fn hits(e: u64, f: u64, sign: Sign) -> bool {
    match sign {
        Sign::Minus => f.is_multiple_of(e),
        Sign::Plus => (2 * f).is_multiple_of(e) && !f.is_multiple_of(e),
    }
}

impl CoverageSet {
    pub fn from_factors(p: u64, exponent: u64, factors: &[Factor], divisor: &[Factor]) -> Self {
        let scale = |fs: &[Factor]| fs.iter().map(|f| (f.d as u64 * exponent, f.sign)).collect();
        CoverageSet {
            p,
            numerator: scale(factors),
            divisor: scale(divisor),
        }
    }

    /// Raw per-factor rule: some numerator factor is divisible by `l(p,1,e)`.
    pub fn contains(&self, e: u64) -> bool {
        e >= 1 && self.numerator.iter().any(|&(f, s)| hits(e, f, s))
    }

    /// Multiplicity of the cyclotomic value `Phi_e(p)` in the order.
    pub fn multiplicity(&self, e: u64) -> i64 {
        let count = |v: &[(u64, Sign)]| v.iter().filter(|&&(f, s)| hits(e, f, s)).count() as i64;
        count(&self.numerator) - count(&self.divisor)
    }

    /// All covered exponents, ascending.
    pub fn elements(&self) -> Vec<u64> {
        let mut set = BTreeSet::new();
        for &(f, _) in &self.numerator {
            for e in divisors(2 * f) {
                if self.contains(e) {
                    set.insert(e);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Exponents whose primitive primes certainly divide the order.
    pub fn certain(&self) -> Vec<u64> {
        self.elements()
            .into_iter()
            .filter(|&e| self.multiplicity(e) > 0)
            .collect()
    }
}

pub fn exponent_coverage(spec: &GroupSpec) -> CoverageSet {
    let (_, factors, divisor) = family_factors(spec.family);
    CoverageSet::from_factors(spec.p, spec.exponent as u64, &factors, &divisor)
}

pub(crate) fn center_blocks(e: u64, z: u64) -> bool {
    // l = 1 (mod e), so l can divide z only through such a prime factor
    factor_u64(z).iter().any(|&(r, _)| r % e == 1)
}

/// Exponent `e` of a primitive prime dividing `|L|` but not `|H|`.
///
/// Candidates are taken in descending order. A candidate that is not larger
/// than twice both field exponents is confirmed by exact division before it
/// is returned.
pub fn nondivisibility_witness(l: &GroupSpec, h: &GroupSpec) -> Result<Option<u64>> {
    if l.p != h.p {
        return Err(Error::domain(format!(
            "{l} and {h} have different characteristic"
        )));
    }
    let cl = exponent_coverage(l);
    let ch = exponent_coverage(h);
    let z = match l.flavor {
        crate::groups::Flavor::Cover => 1,
        crate::groups::Flavor::Simple => center_order(l),
    };
    let threshold = 2 * u64::from(l.exponent.max(h.exponent));
    let mut confirmed_divisible = None;
    for e in cl.certain().into_iter().rev() {
        if e < 2 || ch.contains(e) || is_zsigmondy_exception(l.p, 1, e) || center_blocks(e, z) {
            continue;
        }
        if e <= threshold {
            let divisible = *confirmed_divisible.get_or_insert_with(|| divides_exact(l, h));
            if divisible {
                // a sound witness cannot exist; reaching here means a bug
                return Err(Error::Unsupported(format!(
                    "witness {e} contradicted by exact division"
                )));
            }
        }
        return Ok(Some(e));
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisibility {
    No(u64),
    Possibly,
}

pub fn divides_symbolic(l: &GroupSpec, h: &GroupSpec) -> Result<Divisibility> {
    Ok(match nondivisibility_witness(l, h)? {
        Some(e) => Divisibility::No(e),
        None => Divisibility::Possibly,
    })
}

/// Largest prime that can divide the center of a cover in this family.
pub fn center_prime_bound(family: Family) -> u64 {
    match family {
        Family::Classical(Classical::Linear | Classical::Unitary, n) => n as u64,
        Family::Classical(_, _) => 2,
        Family::Exceptional(ExceptionalTag::E6 | ExceptionalTag::TwistedE6) => 3,
        Family::Exceptional(ExceptionalTag::E7) => 2,
        Family::Exceptional(_) => 1,
    }
}

/// A witness valid for every characteristic and every `c >= 1` in the
/// family `L(p^(u c))` against `H(p^(v c))`: the primitive prime
/// `l(p, 1, e0 c)` divides `|L|` but not `|H|`, or divides both but to a
/// higher power in `|L|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyWitness {
    pub e0: u64,
    /// `e0 c = 6` has no primitive prime when `p = 2`; that single point
    /// must be settled separately.
    pub exceptional_c: Option<u32>,
    /// `(mult_L, mult_H)` when `l` divides both orders.
    pub excess: Option<(i64, i64)>,
}

impl FamilyWitness {
    pub fn render(&self) -> String {
        match self.excess {
            None => format!("{}c", self.e0),
            Some((l, h)) => format!("{}c (multiplicity {l} > {h})", self.e0),
        }
    }
}

/// Every factor hit by `e` contributes the same power of `l(p,1,e c)`:
/// by lifting the exponent, `v_l(p^f - 1) = v_l(p^(e c) - 1) + v_l(f/(e c))`,
/// and `l = 1 (mod e)` cannot divide a ratio with no prime factor of that form.
fn uniform_valuation(cov: &CoverageSet, e: u64) -> bool {
    cov.numerator.iter().chain(&cov.divisor).all(|&(f, sign)| {
        if !hits(e, f, sign) {
            return true;
        }
        let ratio = match sign {
            Sign::Minus => f / e,
            Sign::Plus => 2 * f / e,
        };
        factor_u64(ratio).iter().all(|&(r, _)| r % e != 1)
    })
}

/// All family witnesses, largest first, those absent from `H` before those
/// with a larger multiplicity. `l` is read at exponent `u`, `h` at `v`.
pub fn family_witnesses(l: Family, u: u64, h: Family, v: u64) -> Vec<FamilyWitness> {
    let (_, lf, ld) = family_factors(l);
    let (_, hf, hd) = family_factors(h);
    let cl = CoverageSet::from_factors(0, u, &lf, &ld);
    let ch = CoverageSet::from_factors(0, v, &hf, &hd);
    let zmax = center_prime_bound(l);
    let usable: Vec<u64> = cl
        .certain()
        .into_iter()
        .rev()
        .filter(|&e| e >= 3)
        .filter(|&e| !(2 * u).is_multiple_of(e) || e >= zmax)
        .collect();
    let exceptional = |e: u64| (6 % e == 0).then(|| (6 / e) as u32);
    let absent = usable
        .iter()
        .filter(|&&e| !ch.contains(e))
        .map(|&e| FamilyWitness {
            e0: e,
            exceptional_c: exceptional(e),
            excess: None,
        });
    let excess = usable
        .iter()
        .filter(|&&e| ch.contains(e) && uniform_valuation(&cl, e) && uniform_valuation(&ch, e))
        .filter(|&&e| cl.multiplicity(e) > ch.multiplicity(e).max(0))
        .map(|&e| FamilyWitness {
            e0: e,
            exceptional_c: exceptional(e),
            excess: Some((cl.multiplicity(e), ch.multiplicity(e))),
        });
    absent.chain(excess).collect()
}
