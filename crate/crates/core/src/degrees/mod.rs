//! Character degrees: symbolic expressions, the low-degree tables, unipotent
//! witness degrees, minimal degrees and an alternating-group oracle.

mod alternating;
mod expr;
mod tables;

use std::collections::BTreeSet;

use num_bigint::BigUint;

pub use alternating::{alternating_max_degree, partition_degrees, partitions};
pub use expr::{parse_product, Affine, Condition, DegFactor, DegreeExpr, NRange};
pub use tables::{
    DegreeTable, DegreeTables, PPartShape, Parity, TableEntry, TableFamily, TableRow,
};

use crate::arith::pow_big;
use crate::error::{Error, Result};
use crate::groups::{Classical, Sign};
use crate::orders::p_part;

pub fn eval_degree(expr: &DegreeExpr, n: u32, p: u64, a: u32) -> Result<BigUint> {
    expr.eval_checked(n, p, a)
}

/// `p`-part of the degree, computed symbolically and cross-checked against
/// the evaluated value.
pub fn degree_p_part(expr: &DegreeExpr, n: u32, p: u64, a: u32) -> Result<BigUint> {
    let value = eval_degree(expr, n, p, a)?;
    let exp = expr.p_exponent(p, a);
    let direct = p_part(&value, p);
    if exp < 0 || direct != pow_big(p, exp as u64) {
        return Err(Error::data(format!(
            "{expr}: symbolic p-part p^{exp} disagrees with {direct}"
        )));
    }
    Ok(direct)
}

/// Family of a unipotent witness character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnipotentFamily {
    Linear,
    Unitary,
    /// Symplectic and odd-dimensional orthogonal share the degree.
    SymplecticOrOddOrthogonal,
    EvenOrthogonal(Sign),
}

impl UnipotentFamily {
    pub fn of(kind: Classical) -> UnipotentFamily {
        match kind {
            Classical::Linear => UnipotentFamily::Linear,
            Classical::Unitary => UnipotentFamily::Unitary,
            Classical::Symplectic | Classical::OddOrthogonal => {
                UnipotentFamily::SymplecticOrOddOrthogonal
            }
            Classical::OrthogonalPlus => UnipotentFamily::EvenOrthogonal(Sign::Plus),
            Classical::OrthogonalMinus => UnipotentFamily::EvenOrthogonal(Sign::Minus),
        }
    }

    fn min_rank(self) -> u32 {
        match self {
            UnipotentFamily::Linear | UnipotentFamily::SymplecticOrOddOrthogonal => 2,
            UnipotentFamily::Unitary => 3,
            UnipotentFamily::EvenOrthogonal(_) => 4,
        }
    }
}

fn fac(d: i64, sign: Sign) -> DegFactor {
    DegFactor {
        deg: Affine::constant(d),
        sign,
    }
}

/// Small unipotent degree of the rank-`m` group over `q = p^b`, read at
/// `q`. The `p`-part is `q`, except for the symplectic form at `p = 2`
/// where the halving leaves `q/2`.
pub fn unipotent_witness_degree(family: UnipotentFamily, m: u32) -> Result<DegreeExpr> {
    if m < family.min_rank() {
        return Err(Error::domain(format!(
            "rank {m} is below the minimum for {family:?}"
        )));
    }
    let m = m as i64;
    Ok(match family {
        // (q^m - q)/(q - 1)
        UnipotentFamily::Linear => {
            DegreeExpr::new(1, vec![fac(m - 1, Sign::Minus)], vec![fac(1, Sign::Minus)])
        }
        // (q^m + (-1)^m q)/(q + 1)
        UnipotentFamily::Unitary => {
            let s = if m % 2 == 0 { Sign::Plus } else { Sign::Minus };
            DegreeExpr::new(1, vec![fac(m - 1, s)], vec![fac(1, Sign::Plus)])
        }
        // (q^m - 1)(q^m - q)/(2(q + 1))
        UnipotentFamily::SymplecticOrOddOrthogonal => DegreeExpr::new(
            1,
            vec![fac(m, Sign::Minus), fac(m - 1, Sign::Minus)],
            vec![fac(1, Sign::Plus)],
        )
        .with_scalar(1, 2),
        // (q^m -+ 1)(q^(m-1) +- q)/(q^2 - 1), upper signs for the plus type
        UnipotentFamily::EvenOrthogonal(eps) => DegreeExpr::new(
            1,
            vec![fac(m, eps.flip()), fac(m - 2, eps)],
            vec![fac(2, Sign::Minus)],
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDegree {
    pub label: &'static str,
    pub value: BigUint,
    /// False when `value` is only a lower bound.
    pub exact: bool,
}

/// Smallest nontrivial degrees where they are known in closed form.
pub fn minimal_degrees(kind: Classical, n: u32, p: u64, a: u32) -> Result<Vec<LabeledDegree>> {
    let not_tabulated = || {
        Error::Unsupported(format!(
            "minimal degrees of {} n = {n} are not tabulated",
            kind.short_name()
        ))
    };
    let n64 = n as i64;
    match kind {
        Classical::Linear if n >= 5 => {
            let d1 = DegreeExpr::new(
                1,
                vec![fac(n64 - 1, Sign::Minus)],
                vec![fac(1, Sign::Minus)],
            );
            let d2 = DegreeExpr::new(0, vec![fac(n64, Sign::Minus)], vec![fac(1, Sign::Minus)]);
            // (q^n - 1)(q^(n-1) - q^2)/((q - 1)(q^2 - 1))
            let d3 = DegreeExpr::new(
                2,
                vec![fac(n64, Sign::Minus), fac(n64 - 3, Sign::Minus)],
                vec![fac(1, Sign::Minus), fac(2, Sign::Minus)],
            );
            Ok(vec![
                LabeledDegree {
                    label: "d1",
                    value: d1.eval(n, p, a)?,
                    exact: true,
                },
                LabeledDegree {
                    label: "d2",
                    value: d2.eval(n, p, a)?,
                    exact: true,
                },
                LabeledDegree {
                    label: "d3",
                    value: d3.eval(n, p, a)?,
                    exact: false,
                },
            ])
        }
        Classical::Linear if n >= 2 => {
            let row = DegreeTables::builtin().low_degree_table(kind, n, p, a)?;
            let min = row.values()?.into_iter().next().ok_or_else(not_tabulated)?;
            Ok(vec![LabeledDegree {
                label: "d1",
                value: min,
                exact: false,
            }])
        }
        Classical::Unitary if n >= 10 => {
            let s = if n.is_multiple_of(2) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let d1 = DegreeExpr::new(1, vec![fac(n64 - 1, s)], vec![fac(1, Sign::Plus)]);
            Ok(vec![LabeledDegree {
                label: "d1",
                value: d1.eval(n, p, a)?,
                exact: true,
            }])
        }
        _ => Err(not_tabulated()),
    }
}

/// `{q, q - 1, q + 1, (q - 1)/2, (q + 1)/2}`, the halves only for odd `q`.
pub fn sl2_cover_degree_superset(p: u64, a: u32) -> Result<BTreeSet<BigUint>> {
    let q = pow_big(p, a as u64);
    if p != 2 && q < BigUint::from(11u32) {
        return Err(Error::domain(format!("odd q = {q} must be at least 11")));
    }
    let mut out: BTreeSet<BigUint> = [q.clone(), &q - 1u32, &q + 1u32].into_iter().collect();
    if p != 2 {
        out.insert((&q - 1u32) / 2u32);
        out.insert((&q + 1u32) / 2u32);
    }
    Ok(out)
}
