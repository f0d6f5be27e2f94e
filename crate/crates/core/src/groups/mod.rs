//! Group specifications: simple groups of Lie type and their Schur covers.

mod coincidence;
mod exceptional;
mod parse;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, pow_big};
use crate::error::{Error, Result};

pub use coincidence::{canonicalize, canonicalize_with_note, exceptional_schur_list, Coincidence};
pub use exceptional::{exceptional_type_data, ExceptionalTypeData};
pub use parse::parse_and_validate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// `q^d - 1` or `q^d + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub d: u32,
    pub sign: Sign,
}

impl Factor {
    pub const fn minus(d: u32) -> Factor {
        Factor {
            d,
            sign: Sign::Minus,
        }
    }
    pub const fn plus(d: u32) -> Factor {
        Factor {
            d,
            sign: Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classical {
    Linear,
    Unitary,
    Symplectic,
    OddOrthogonal,
    OrthogonalPlus,
    OrthogonalMinus,
}

impl Classical {
    pub const ALL: [Classical; 6] = [
        Classical::Linear,
        Classical::Unitary,
        Classical::Symplectic,
        Classical::OddOrthogonal,
        Classical::OrthogonalPlus,
        Classical::OrthogonalMinus,
    ];

    pub fn min_rank(self) -> u32 {
        match self {
            Classical::Linear | Classical::Symplectic => 2,
            Classical::Unitary | Classical::OddOrthogonal => 3,
            Classical::OrthogonalPlus | Classical::OrthogonalMinus => 4,
        }
    }

    /// Exponent of p in the order, per unit of field exponent.
    pub fn p_coeff(self, n: u32) -> u64 {
        let n = n as u64;
        match self {
            Classical::Linear | Classical::Unitary => n * (n - 1) / 2,
            Classical::Symplectic | Classical::OddOrthogonal => n * n,
            Classical::OrthogonalPlus | Classical::OrthogonalMinus => n * (n - 1),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Classical::Linear => "PSL",
            Classical::Unitary => "PSU",
            Classical::Symplectic => "PSp",
            Classical::OddOrthogonal => "Omega",
            Classical::OrthogonalPlus => "POmega+",
            Classical::OrthogonalMinus => "POmega-",
        }
    }

    pub fn is_even_orthogonal(self) -> bool {
        matches!(self, Classical::OrthogonalPlus | Classical::OrthogonalMinus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalTag {
    G2,
    F4,
    E6,
    TwistedE6,
    E7,
    E8,
    TrialityD4,
    Suzuki,
    Ree,
    TwistedF4,
}

impl ExceptionalTag {
    pub const ALL: [ExceptionalTag; 10] = [
        ExceptionalTag::G2,
        ExceptionalTag::F4,
        ExceptionalTag::E6,
        ExceptionalTag::TwistedE6,
        ExceptionalTag::E7,
        ExceptionalTag::E8,
        ExceptionalTag::TrialityD4,
        ExceptionalTag::Suzuki,
        ExceptionalTag::Ree,
        ExceptionalTag::TwistedF4,
    ];

    /// Short tag used in case ids and data files.
    pub fn tag(self) -> &'static str {
        match self {
            ExceptionalTag::G2 => "G2",
            ExceptionalTag::F4 => "F4",
            ExceptionalTag::E6 => "E6",
            ExceptionalTag::TwistedE6 => "2E6",
            ExceptionalTag::E7 => "E7",
            ExceptionalTag::E8 => "E8",
            ExceptionalTag::TrialityD4 => "3D4",
            ExceptionalTag::Suzuki => "2B2",
            ExceptionalTag::Ree => "2G2",
            ExceptionalTag::TwistedF4 => "2F4",
        }
    }

    /// Name used in spec strings.
    pub fn spec_name(self) -> &'static str {
        match self {
            ExceptionalTag::Suzuki => "Suz",
            ExceptionalTag::Ree => "Ree",
            other => other.tag(),
        }
    }

    pub fn from_tag(s: &str) -> Option<ExceptionalTag> {
        let s = s.to_ascii_uppercase();
        ExceptionalTag::ALL
            .into_iter()
            .find(|t| t.tag().eq_ignore_ascii_case(&s) || t.spec_name().eq_ignore_ascii_case(&s))
    }

    /// Only these three carry a nontrivial generic center.
    pub fn has_center(self) -> bool {
        matches!(
            self,
            ExceptionalTag::E6 | ExceptionalTag::TwistedE6 | ExceptionalTag::E7
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Classical(Classical, u32),
    Exceptional(ExceptionalTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    Simple,
    Cover,
}

/// A simple group of Lie type over `GF(p^exponent)`, or its
/// simply-connected cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub p: u64,
    pub exponent: u32,
    pub flavor: Flavor,
}

impl GroupSpec {
    pub fn classical(
        kind: Classical,
        n: u32,
        p: u64,
        exponent: u32,
        flavor: Flavor,
    ) -> Result<Self> {
        let s = GroupSpec {
            family: Family::Classical(kind, n),
            p,
            exponent,
            flavor,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn exceptional(tag: ExceptionalTag, p: u64, exponent: u32, flavor: Flavor) -> Result<Self> {
        let s = GroupSpec {
            family: Family::Exceptional(tag),
            p,
            exponent,
            flavor,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn q(&self) -> u64 {
        self.p
            .checked_pow(self.exponent)
            .expect("field size overflows u64")
    }

    pub fn q_big(&self) -> BigUint {
        pow_big(self.p, self.exponent as u64)
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn cover(self) -> Self {
        self.with_flavor(Flavor::Cover)
    }

    pub fn simple(self) -> Self {
        self.with_flavor(Flavor::Simple)
    }

    pub fn rank(&self) -> Option<u32> {
        match self.family {
            Family::Classical(_, n) => Some(n),
            Family::Exceptional(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        if self.p.checked_pow(self.exponent).is_none() {
            return Err(Error::domain("field size exceeds 64 bits"));
        }
        Ok(())
    }

    /// Every validity rule except the 64-bit limit on the field size.
    pub fn check_shape(&self) -> Result<()> {
        if !is_prime_u64(self.p) {
            return Err(Error::domain(format!("{} is not prime", self.p)));
        }
        if self.exponent == 0 {
            return Err(Error::domain("field exponent must be positive"));
        }
        match self.family {
            Family::Classical(kind, n) => {
                if n < kind.min_rank() {
                    return Err(Error::domain(format!(
                        "rank {n} below the minimum {} for {}",
                        kind.min_rank(),
                        kind.short_name()
                    )));
                }
                if kind == Classical::OddOrthogonal && self.p == 2 {
                    return Err(Error::domain(
                        "odd-dimensional orthogonal groups need odd characteristic (use the symplectic form)",
                    ));
                }
            }
            Family::Exceptional(tag) => {
                let odd = self.exponent % 2 == 1;
                let ok = match tag {
                    ExceptionalTag::Suzuki => self.p == 2 && odd,
                    ExceptionalTag::Ree => self.p == 3 && odd,
                    ExceptionalTag::TwistedF4 => self.p == 2 && odd && self.exponent >= 3,
                    _ => true,
                };
                if !ok {
                    return Err(Error::domain(format!(
                        "{} needs {}",
                        tag.spec_name(),
                        match tag {
                            ExceptionalTag::Suzuki => "p = 2 and odd exponent",
                            ExceptionalTag::Ree => "p = 3 and odd exponent",
                            _ => "p = 2 and odd exponent at least 3",
                        }
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exponent of p in the order, per unit of field exponent.
    pub fn p_coeff(&self) -> u64 {
        match self.family {
            Family::Classical(kind, n) => kind.p_coeff(n),
            Family::Exceptional(tag) => exceptional_type_data(tag).m as u64,
        }
    }

    /// Case-id fragment such as `PSp` or `E7`.
    pub fn family_label(&self) -> &'static str {
        match self.family {
            Family::Classical(kind, _) => kind.short_name(),
            Family::Exceptional(tag) => tag.tag(),
        }
    }
}

/// Degree of the Steinberg character, the p-part of the order.
pub fn steinberg_degree(spec: &GroupSpec) -> BigUint {
    pow_big(spec.p, spec.p_coeff() * spec.exponent as u64)
}

fn render_q(p: u64, a: u32) -> String {
    if a == 1 {
        p.to_string()
    } else {
        format!("{p}^{a}")
    }
}

/// Name of a family member with the field written as `field`, e.g.
/// `PSp(12,p^c)`.
pub fn render_family(family: Family, flavor: Flavor, q: &str) -> String {
    let cover = flavor == Flavor::Cover;
    match family {
        Family::Classical(kind, n) => {
            let (name, dim) = match kind {
                Classical::Linear => (if cover { "SL" } else { "PSL" }, n),
                Classical::Unitary => (if cover { "SU" } else { "PSU" }, n),
                Classical::Symplectic => (if cover { "Sp" } else { "PSp" }, 2 * n),
                Classical::OddOrthogonal => (if cover { "Spin" } else { "Omega" }, 2 * n + 1),
                Classical::OrthogonalPlus => (if cover { "Spin+" } else { "POmega+" }, 2 * n),
                Classical::OrthogonalMinus => (if cover { "Spin-" } else { "POmega-" }, 2 * n),
            };
            format!("{name}({dim},{q})")
        }
        Family::Exceptional(tag) => {
            let sc = if cover && tag.has_center() { "sc" } else { "" };
            format!("{}{sc}({q})", tag.spec_name())
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_family(
            self.family,
            self.flavor,
            &render_q(self.p, self.exponent),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steinberg_examples() {
        let sl = parse_and_validate("SL(3,2)").unwrap();
        assert_eq!(steinberg_degree(&sl), BigUint::from(8u32));
        let sp = parse_and_validate("Sp(6,3)").unwrap();
        assert_eq!(steinberg_degree(&sp), BigUint::from(19683u32));
        let spin = parse_and_validate("Spin+(8,3)").unwrap();
        assert_eq!(steinberg_degree(&spin), BigUint::from(531441u32));
    }

    #[test]
    fn rank_bounds_enforced() {
        assert!(GroupSpec::classical(Classical::Linear, 1, 2, 1, Flavor::Cover).is_err());
        assert!(GroupSpec::classical(Classical::Unitary, 2, 2, 1, Flavor::Cover).is_err());
        assert!(GroupSpec::classical(Classical::OddOrthogonal, 3, 2, 1, Flavor::Cover).is_err());
        assert!(GroupSpec::classical(Classical::OrthogonalPlus, 3, 3, 1, Flavor::Cover).is_err());
        assert!(GroupSpec::classical(Classical::Symplectic, 2, 4, 1, Flavor::Cover).is_err());
        assert!(GroupSpec::exceptional(ExceptionalTag::Suzuki, 2, 2, Flavor::Simple).is_err());
        assert!(GroupSpec::exceptional(ExceptionalTag::Ree, 3, 3, Flavor::Simple).is_ok());
        assert!(GroupSpec::exceptional(ExceptionalTag::TwistedF4, 2, 1, Flavor::Simple).is_err());
    }

    #[test]
    fn exceptional_render_marks_nontrivial_covers_only() {
        let e7 = GroupSpec::exceptional(ExceptionalTag::E7, 3, 1, Flavor::Cover).unwrap();
        assert_eq!(e7.to_string(), "E7sc(3)");
        let e8 = GroupSpec::exceptional(ExceptionalTag::E8, 2, 9, Flavor::Cover).unwrap();
        assert_eq!(e8.to_string(), "E8(2^9)");
    }
}
