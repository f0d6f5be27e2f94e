//! The p-part filter: a degree whose p-part is `p^b` must match one of the
//! p-part shapes a table allows.

use std::collections::BTreeSet;

use crate::degrees::PPartShape;

/// Exponent written as `k a + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Linear {
    pub k: u32,
    pub offset: i32,
}

impl Linear {
    pub const fn of(k: u32) -> Linear {
        Linear { k, offset: 0 }
    }
}

impl std::fmt::Display for Linear {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let head = match self.k {
            0 => String::new(),
            1 => "a".to_string(),
            k => format!("{k}a"),
        };
        match (head.is_empty(), self.offset) {
            (true, o) => write!(f, "{o}"),
            (false, 0) => write!(f, "{head}"),
            (false, o) if o > 0 => write!(f, "{head}+{o}"),
            (false, o) => write!(f, "{head}{o}"),
        }
    }
}

/// Relation between `b` and a multiple of `a`. Comparisons treat `a` as
/// large, so `a - 1 < a` and `a - 1 > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BConstraint {
    Less(u32),
    AtMost(u32),
    NotEqual(u32),
    AtLeast(u32),
}

impl BConstraint {
    fn admits(&self, b: Linear) -> bool {
        let key = (b.k, b.offset);
        match *self {
            BConstraint::Less(k) => key < (k, 0),
            BConstraint::AtMost(k) => key <= (k, 0),
            BConstraint::NotEqual(k) => key != (k, 0),
            BConstraint::AtLeast(k) => key >= (k, 0),
        }
    }
}

/// The values of `b`, written in terms of `a`, that are positive, satisfy
/// every constraint and are the exponent of an allowed p-part shape.
/// `q^k` is expanded up to the largest multiple any constraint mentions.
pub fn ppart_filter(allowed: &[PPartShape], constraints: &[BConstraint]) -> BTreeSet<Linear> {
    let reach = constraints
        .iter()
        .map(|c| match *c {
            BConstraint::Less(k)
            | BConstraint::AtMost(k)
            | BConstraint::NotEqual(k)
            | BConstraint::AtLeast(k) => k,
        })
        .max()
        .unwrap_or(2)
        + 1;
    let mut candidates = BTreeSet::new();
    for s in allowed {
        match s {
            PPartShape::One => {
                candidates.insert(Linear::of(0));
            }
            PPartShape::Q => {
                candidates.insert(Linear::of(1));
            }
            PPartShape::QSquared => {
                candidates.insert(Linear::of(2));
            }
            PPartShape::HalfQ => {
                candidates.insert(Linear { k: 1, offset: -1 });
            }
            PPartShape::AnyPowerOfQ => candidates.extend((0..=reach).map(Linear::of)),
        }
    }
    candidates
        .into_iter()
        .filter(|b| (b.k, b.offset) > (0, 0))
        .filter(|b| constraints.iter().all(|c| c.admits(*b)))
        .collect()
}

/// Where `p^(u c - delta)` can have an allowed shape at `q = p^(v c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Feasibility {
    /// Every `c` survives.
    pub all_c: bool,
    /// Isolated surviving generators.
    pub single: BTreeSet<u64>,
}

impl Feasibility {
    pub fn is_empty(&self) -> bool {
        !self.all_c && self.single.is_empty()
    }
}

/// Solves `u c - delta = k v c + offset` over `c >= 1` for each allowed
/// shape. `c` is unconstrained for `q^k`, so that shape contributes either
/// every `c` or finitely many.
pub fn feasible_generators(
    u: u64,
    v: u64,
    delta: u64,
    p: u64,
    allowed: &[PPartShape],
) -> Feasibility {
    let mut out = Feasibility::default();
    let (u, v, delta) = (u as i64, v as i64, delta as i64);
    // c (u - k v) = delta + offset
    let solve = |k: i64, offset: i64, out: &mut Feasibility| {
        let lhs = u - k * v;
        let rhs = delta + offset;
        if lhs == 0 {
            if rhs == 0 {
                out.all_c = true;
            }
        } else if rhs % lhs == 0 && rhs / lhs >= 1 {
            out.single.insert((rhs / lhs) as u64);
        }
    };
    for s in allowed {
        match s {
            PPartShape::One => solve(0, 0, &mut out),
            PPartShape::Q => solve(1, 0, &mut out),
            PPartShape::QSquared => solve(2, 0, &mut out),
            PPartShape::HalfQ if p == 2 => solve(1, -1, &mut out),
            PPartShape::HalfQ => {}
            PPartShape::AnyPowerOfQ => {
                // k ranges over all of N; c (u - k v) = delta needs u - k v in {0} or a divisor of delta
                let top = u / v + 1;
                for k in 0..=top {
                    solve(k, 0, &mut out);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use PPartShape::*;

    #[test]
    fn filter_examples() {
        let a = Linear::of(1);
        assert_eq!(ppart_filter(&[One, Q], &[BConstraint::Less(2)]), [a].into());
        assert_eq!(
            ppart_filter(
                &[AnyPowerOfQ],
                &[BConstraint::Less(3), BConstraint::NotEqual(2)]
            ),
            [a].into()
        );
        assert!(ppart_filter(
            &[One, Q, QSquared],
            &[BConstraint::Less(2), BConstraint::NotEqual(1)]
        )
        .is_empty());
        let half = Linear { k: 1, offset: -1 };
        assert_eq!(
            ppart_filter(&[One, HalfQ, Q], &[BConstraint::Less(1)]),
            [half].into()
        );
        assert_eq!(half.to_string(), "a-1");
    }

    #[test]
    fn generator_families() {
        // b = a: every c
        let f = feasible_generators(1, 1, 0, 3, &[One, Q]);
        assert!(f.all_c);
        // b = 2a against {1, q}: nothing
        assert!(feasible_generators(2, 1, 0, 3, &[One, Q]).is_empty());
        // p = 2, halved unipotent degree, b = 1: p-part 1 at c = 1
        let f = feasible_generators(1, 3, 1, 2, &[One, Q]);
        assert!(!f.all_c);
        assert_eq!(f.single, [1].into());
        // unitary target: v | u gives every c
        assert!(feasible_generators(6, 2, 0, 5, &[AnyPowerOfQ]).all_c);
        assert!(feasible_generators(5, 2, 0, 5, &[AnyPowerOfQ]).is_empty());
        // delta = 1 and v | u - 1: only c = 1
        let f = feasible_generators(5, 2, 1, 2, &[AnyPowerOfQ]);
        assert_eq!((f.all_c, f.single), (false, [1].into()));
    }
}
