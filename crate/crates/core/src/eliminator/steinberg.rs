use serde::Serialize;

use crate::arith::gcd;
use crate::groups::{exceptional_type_data, Classical, Family};
use crate::orders::family_factors;

/// `M_L b = M_S a` with its reduced integer parameterization
/// `b = u c`, `a = v c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SteinbergMatch {
    pub l_coeff: u64,
    pub s_coeff: u64,
    /// Multiplier of `c` in `b`.
    pub u: u64,
    /// Multiplier of `c` in `a`.
    pub v: u64,
}

impl SteinbergMatch {
    pub fn new(l_coeff: u64, s_coeff: u64) -> SteinbergMatch {
        assert!(
            l_coeff > 0 && s_coeff > 0,
            "p-exponent coefficients must be positive"
        );
        let g = gcd(l_coeff, s_coeff);
        SteinbergMatch {
            l_coeff,
            s_coeff,
            u: s_coeff / g,
            v: l_coeff / g,
        }
    }

    /// `(b, a)` at generator `c`.
    pub fn at(&self, c: u64) -> (u64, u64) {
        (self.u * c, self.v * c)
    }

    pub fn holds(&self, b: u64, a: u64) -> bool {
        self.l_coeff * b == self.s_coeff * a
    }

    /// Unreduced equation as usually written, e.g. `120b = 36a`.
    pub fn equation(&self) -> String {
        format!("{}b = {}a", self.l_coeff, self.s_coeff)
    }

    pub fn ratio(&self) -> String {
        format!("b:a = {}:{}", self.u, self.v)
    }
}

pub fn steinberg_match(l: Family, s: Family) -> SteinbergMatch {
    SteinbergMatch::new(family_factors(l).0, family_factors(s).0)
}

/// Largest target rank an exceptional `L` with data `(m, m')` can match.
pub fn exceptional_bound(target: Classical, m: u32, m_prime: u32) -> u32 {
    let ratio = |k: u32| k * m / m_prime;
    match target {
        Classical::Linear => (ratio(2) + 1).max(5),
        Classical::Unitary => ratio(4) + 1,
        _ => ratio(2),
    }
}

pub fn exceptional_bound_for(target: Classical, tag: crate::groups::ExceptionalTag) -> u32 {
    let d = exceptional_type_data(tag);
    exceptional_bound(target, d.m, d.m_prime)
}
