//! Exhaustive finite sweeps: the exponential inequality against alternating
//! degrees, and equality of a degree formula with table entries.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::arith::{pow_big, prime_powers_up_to};
use crate::error::Result;

/// `2^e < q^k`, exactly. Large `e` is settled by bit lengths alone.
pub fn pow2_less_than(e: &BigUint, q: u64, k: u64) -> bool {
    let bits = 64 - q.leading_zeros() as u64;
    // 2^((bits-1) k) <= q^k < 2^(bits k)
    if *e >= BigUint::from(bits * k) {
        return false;
    }
    let e = u64::try_from(e).expect("below bits * k");
    if e < (bits - 1) * k {
        return true;
    }
    BigUint::one() << e < BigUint::from(q).pow(k as u32)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InequalitySweep {
    pub points: u64,
    /// `(n, q)` where `2^((q^n - q)/(q - 1)) < q^(n^2/2)`.
    pub exponential_holds: Vec<(u32, u64)>,
    /// `(n, q)` where `2 q^(n-1) < n^2 log2 q`.
    pub logarithmic_holds: Vec<(u32, u64)>,
    /// Points where the first holds but the second does not.
    pub implication_failures: Vec<(u32, u64)>,
}

impl InequalitySweep {
    pub fn all_false(&self) -> bool {
        self.exponential_holds.is_empty() && self.logarithmic_holds.is_empty()
    }
}

/// The exponential form, squared so both sides are integers:
/// `2^(2 d1) < q^(n^2)` with `d1 = (q^n - q)/(q - 1)`.
pub fn exponential_form(n: u32, q: u64) -> bool {
    let qb = BigUint::from(q);
    let d1 = (qb.pow(n) - &qb) / (q - 1);
    pow2_less_than(&(d1 * 2u32), q, (n as u64) * (n as u64))
}

/// `2 q^(n-1) < n^2 log2 q`, i.e. `2^(2 q^(n-1)) < q^(n^2)`.
pub fn logarithmic_form(n: u32, q: u64) -> bool {
    let e = BigUint::from(q).pow(n - 1) * 2u32;
    pow2_less_than(&e, q, (n as u64) * (n as u64))
}

pub fn inequality_sweep(n_lo: u32, n_hi: u32, q_max: u64) -> InequalitySweep {
    let mut out = InequalitySweep::default();
    for n in n_lo..=n_hi {
        for (p, a) in prime_powers_up_to(q_max) {
            let q = p.pow(a);
            out.points += 1;
            let exp = exponential_form(n, q);
            let log = logarithmic_form(n, q);
            if exp {
                out.exponential_holds.push((n, q));
            }
            if log {
                out.logarithmic_holds.push((n, q));
            }
            if exp && !log {
                out.implication_failures.push((n, q));
            }
        }
    }
    out
}

/// A sweep point: target rank `n`, candidate rank `m`, field `p^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SweepPoint {
    pub n: u32,
    pub m: u32,
    pub p: u64,
    pub a: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeSweep {
    pub checked: u64,
    /// Points where one side had no value, e.g. outside table coverage.
    pub skipped: u64,
    pub solutions: Vec<SweepPoint>,
}

/// Points where the value sets of `lhs` and `rhs` meet. A side returning
/// `None` skips the point.
pub fn degree_equation_sweep<L, R>(
    points: impl IntoIterator<Item = SweepPoint>,
    lhs: L,
    rhs: R,
) -> Result<DegreeSweep>
where
    L: Fn(&SweepPoint) -> Result<Option<BTreeSet<BigUint>>>,
    R: Fn(&SweepPoint) -> Result<Option<BTreeSet<BigUint>>>,
{
    let mut out = DegreeSweep::default();
    for pt in points {
        let (Some(l), Some(r)) = (lhs(&pt)?, rhs(&pt)?) else {
            out.skipped += 1;
            continue;
        };
        out.checked += 1;
        if !l.is_disjoint(&r) {
            out.solutions.push(pt);
        }
    }
    Ok(out)
}

/// `q = p^a` as a big integer, for sweep closures.
pub fn field(pt: &SweepPoint) -> BigUint {
    pow_big(pt.p, pt.a as u64)
}
