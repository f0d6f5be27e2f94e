//! Order polynomials of the simply-connected groups and exact evaluation.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{gcd, pow_big, valuation};
use crate::error::{Error, Result};
use crate::groups::{
    exceptional_type_data, Classical, ExceptionalTag, Factor, Family, Flavor, GroupSpec, Sign,
};

/// `|G| = p^(p_coeff * exponent) * prod(factors) / prod(divisor)` with each
/// factor read at `q = p^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderPoly {
    pub p: u64,
    pub exponent: u32,
    pub p_coeff: u64,
    pub factors: Vec<Factor>,
    pub divisor: Vec<Factor>,
}

impl OrderPoly {
    pub fn evaluate(&self) -> BigUint {
        let q = pow_big(self.p, self.exponent as u64);
        let mut num = pow_big(self.p, self.p_coeff * self.exponent as u64);
        for f in &self.factors {
            num *= eval_factor(&q, *f);
        }
        let mut den = BigUint::one();
        for f in &self.divisor {
            den *= eval_factor(&q, *f);
        }
        let (quot, rem) = num.div_rem(&den);
        assert!(rem.is_zero(), "order divisor does not divide");
        quot
    }

    /// The same polynomial read at field exponent `exponent * k`.
    pub fn scaled(&self, k: u32) -> OrderPoly {
        OrderPoly {
            exponent: self.exponent * k,
            ..self.clone()
        }
    }
}

pub fn eval_factor(q: &BigUint, f: Factor) -> BigUint {
    let v = q.pow(f.d);
    match f.sign {
        Sign::Minus => v - 1u32,
        Sign::Plus => v + 1u32,
    }
}

/// Signed factors for a classical cover of rank `n`.
pub fn classical_factors(kind: Classical, n: u32) -> Vec<Factor> {
    match kind {
        Classical::Linear => (2..=n).map(Factor::minus).collect(),
        Classical::Unitary => (2..=n)
            .map(|i| {
                if i % 2 == 0 {
                    Factor::minus(i)
                } else {
                    Factor::plus(i)
                }
            })
            .collect(),
        Classical::Symplectic | Classical::OddOrthogonal => {
            (1..=n).map(|i| Factor::minus(2 * i)).collect()
        }
        Classical::OrthogonalPlus | Classical::OrthogonalMinus => {
            let top = if kind == Classical::OrthogonalPlus {
                Factor::minus(n)
            } else {
                Factor::plus(n)
            };
            std::iter::once(top)
                .chain((1..n).map(|i| Factor::minus(2 * i)))
                .collect()
        }
    }
}

/// Factor data for a family, independent of the field.
pub fn family_factors(family: Family) -> (u64, Vec<Factor>, Vec<Factor>) {
    match family {
        Family::Classical(kind, n) => (kind.p_coeff(n), classical_factors(kind, n), vec![]),
        Family::Exceptional(tag) => {
            let d = exceptional_type_data(tag);
            (d.m as u64, d.factors, d.divisor)
        }
    }
}

fn has_trivial_center_family(spec: &GroupSpec) -> bool {
    matches!(spec.family, Family::Exceptional(tag) if !tag.has_center())
}

pub fn order_poly(spec: &GroupSpec) -> Result<OrderPoly> {
    if spec.flavor == Flavor::Simple && !has_trivial_center_family(spec) {
        return Err(Error::domain(format!(
            "{spec} is a simple group; order polynomials are defined for covers"
        )));
    }
    let (p_coeff, factors, divisor) = family_factors(spec.family);
    Ok(OrderPoly {
        p: spec.p,
        exponent: spec.exponent,
        p_coeff,
        factors,
        divisor,
    })
}

/// Order of the center of the simply-connected cover.
pub fn center_order(spec: &GroupSpec) -> u64 {
    center_order_at(spec.family, spec.p, spec.exponent as u64)
}

/// `q = p^exponent mod m`, for fields too large to hold in a machine word.
fn q_mod(p: u64, exponent: u64, m: u64) -> u64 {
    let r = BigUint::from(p).modpow(&BigUint::from(exponent), &BigUint::from(m));
    u64::try_from(r).expect("residue fits")
}

/// Center order of the cover over `GF(p^exponent)`, any exponent.
pub fn center_order_at(family: Family, p: u64, exponent: u64) -> u64 {
    // gcd(k, q - 1) and gcd(k, q + 1) only need q mod k
    let minus = |k: u64| gcd(k, (q_mod(p, exponent, k) + k - 1) % k);
    let plus = |k: u64| gcd(k, (q_mod(p, exponent, k) + 1) % k);
    match family {
        Family::Classical(kind, n) => match kind {
            Classical::Linear => minus(n as u64),
            Classical::Unitary => plus(n as u64),
            Classical::Symplectic | Classical::OddOrthogonal => minus(2),
            Classical::OrthogonalPlus | Classical::OrthogonalMinus => {
                let r = BigUint::from(p)
                    .modpow(&BigUint::from(exponent * n as u64), &BigUint::from(4u32));
                let r = u64::try_from(r).expect("residue mod 4");
                let v = if kind == Classical::OrthogonalPlus {
                    (r + 3) % 4
                } else {
                    (r + 1) % 4
                };
                gcd(4, v)
            }
        },
        Family::Exceptional(tag) => match tag {
            ExceptionalTag::E6 => minus(3),
            ExceptionalTag::TwistedE6 => plus(3),
            ExceptionalTag::E7 => minus(2),
            _ => 1,
        },
    }
}

/// Order over `GF(p^exponent)` without the 64-bit field limit of
/// [`GroupSpec`].
pub fn order_at(family: Family, p: u64, exponent: u32, flavor: Flavor) -> BigUint {
    let (p_coeff, factors, divisor) = family_factors(family);
    let cover = OrderPoly {
        p,
        exponent,
        p_coeff,
        factors,
        divisor,
    }
    .evaluate();
    match flavor {
        Flavor::Cover => cover,
        Flavor::Simple => cover / BigUint::from(center_order_at(family, p, exponent as u64)),
    }
}

pub fn evaluate_order(spec: &GroupSpec) -> BigUint {
    let cover = order_poly(&spec.cover()).expect("cover flavor").evaluate();
    match spec.flavor {
        Flavor::Cover => cover,
        Flavor::Simple => {
            let z = BigUint::from(center_order(spec));
            let (quot, rem) = cover.div_rem(&z);
            assert!(
                rem.is_zero(),
                "center order does not divide the cover order"
            );
            quot
        }
    }
}

/// Largest power of `p` dividing `x`.
pub fn p_part(x: &BigUint, p: u64) -> BigUint {
    pow_big(p, valuation(x, p))
}

pub fn divides_exact(l: &GroupSpec, h: &GroupSpec) -> bool {
    (evaluate_order(h) % evaluate_order(l)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{parse_and_validate, steinberg_degree};

    fn ord(s: &str) -> BigUint {
        evaluate_order(&parse_and_validate(s).unwrap())
    }

    #[test]
    fn poly_shapes() {
        let sl = order_poly(&parse_and_validate("SL(3,7)").unwrap()).unwrap();
        assert_eq!(sl.p_coeff, 3);
        assert_eq!(sl.factors, vec![Factor::minus(2), Factor::minus(3)]);
        let su = order_poly(&parse_and_validate("SU(3,7)").unwrap()).unwrap();
        assert_eq!(su.factors, vec![Factor::minus(2), Factor::plus(3)]);
        let spin = order_poly(&parse_and_validate("Spin-(8,3)").unwrap()).unwrap();
        assert_eq!(spin.p_coeff, 12);
        let mut got = spin.factors.clone();
        got.sort();
        let mut want = vec![
            Factor::plus(4),
            Factor::minus(2),
            Factor::minus(4),
            Factor::minus(6),
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(order_poly(&parse_and_validate("PSL(3,7)").unwrap()).is_err());
    }

    #[test]
    fn known_simple_orders() {
        assert_eq!(ord("PSL(2,4)"), BigUint::from(60u32));
        assert_eq!(ord("PSL(2,7)"), BigUint::from(168u32));
        assert_eq!(ord("PSL(3,4)"), BigUint::from(20160u32));
        assert_eq!(ord("PSU(4,3)"), BigUint::from(3265920u32));
        assert_eq!(ord("POmega+(8,2)"), BigUint::from(174182400u64));
        assert_eq!(ord("G2(3)"), BigUint::from(4245696u64));
        assert_eq!(ord("Suz(8)"), BigUint::from(29120u32));
        assert_eq!(ord("3D4(2)"), BigUint::from(211341312u64));
    }

    #[test]
    fn unitary_matches_signed_product() {
        for n in 3..=8u32 {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                let spec = parse_and_validate(&format!("SU({n},{q})")).unwrap();
                let qb = BigUint::from(q);
                let mut direct = qb.pow(n * (n - 1) / 2);
                for i in 2..=n {
                    let t = qb.pow(i);
                    direct = if i % 2 == 0 {
                        direct * (t - 1u32)
                    } else {
                        direct * (t + 1u32)
                    };
                }
                assert_eq!(evaluate_order(&spec), direct);
            }
        }
    }

    #[test]
    fn p_part_examples() {
        assert_eq!(p_part(&BigUint::from(720u32), 2), BigUint::from(16u32));
        assert_eq!(p_part(&BigUint::from(40u32), 3), BigUint::one());
        assert_eq!(p_part(&BigUint::from(19683u32), 3), BigUint::from(19683u32));
    }

    #[test]
    fn steinberg_is_p_part() {
        for s in [
            "SL(4,3)",
            "Sp(6,2)",
            "Spin-(10,5)",
            "E6sc(4)",
            "Ree(27)",
            "2F4(8)",
        ] {
            let spec = parse_and_validate(s).unwrap();
            assert_eq!(
                p_part(&evaluate_order(&spec), spec.p),
                steinberg_degree(&spec),
                "{s}"
            );
        }
    }

    #[test]
    fn divides_examples() {
        let l = parse_and_validate("SL(2,4)").unwrap();
        let h = parse_and_validate("SL(4,2)").unwrap();
        assert!(divides_exact(&l, &h));
        assert!(divides_exact(&h, &h));
        let e8 = parse_and_validate("E8(2^9)").unwrap();
        let sl9 = parse_and_validate("SL(9,2^30)").unwrap();
        assert!(!divides_exact(&e8, &sl9));
    }

    #[test]
    fn big_field_orders_agree() {
        for s in [
            "PSL(4,5)",
            "PSU(6,2)",
            "POmega-(10,3)",
            "E7(3)",
            "2E6(2)",
            "Sp(6,8)",
        ] {
            let spec = parse_and_validate(s).unwrap();
            assert_eq!(
                order_at(spec.family, spec.p, spec.exponent, spec.flavor),
                evaluate_order(&spec),
                "{s}"
            );
        }
        // 2^100 is beyond a machine word; gcd(9, 2^100 - 1) = 3
        let sl9 = Family::Classical(Classical::Linear, 9);
        assert_eq!(center_order_at(sl9, 2, 100), 3);
    }

    #[test]
    fn centers() {
        let z = |s: &str| center_order(&parse_and_validate(s).unwrap());
        assert_eq!(z("PSL(4,5)"), 4);
        assert_eq!(z("PSU(6,2)"), 3);
        assert_eq!(z("POmega+(8,3)"), 4);
        assert_eq!(z("POmega-(8,3)"), 2);
        assert_eq!(z("POmega+(10,3)"), 2);
        assert_eq!(z("POmega-(10,3)"), 4);
        assert_eq!(z("2E6(2)"), 3);
    }
}
