//! Grid checks on the bundled degree tables.

use num_bigint::BigUint;
use schurcheck::arith::{pow_big, prime_powers_up_to};
use schurcheck::degrees::{degree_p_part, Condition, DegreeTables, TableEntry};
use schurcheck::orders::p_part;
use schurcheck::Error;

const Q_BOUND: u64 = 49;

fn ranks(e: &TableEntry) -> Vec<u32> {
    let lo = e.n_range.lo;
    let hi = e.n_range.hi.unwrap_or(lo + 6);
    (lo..=hi).collect()
}

fn grid(e: &TableEntry) -> Vec<(u32, u64, u32)> {
    let mut out = Vec::new();
    for n in ranks(e) {
        for (p, a) in prime_powers_up_to(Q_BOUND) {
            if e.expr.applies(n, p, a) {
                out.push((n, p, a));
            }
        }
    }
    out
}

#[test]
fn entries_are_positive_integers_below_the_cutoff() {
    for t in &DegreeTables::builtin().tables {
        for e in &t.entries {
            let pts = grid(e);
            assert!(
                !pts.is_empty(),
                "table {} line {} never applies",
                t.id,
                e.line
            );
            for (n, p, a) in pts {
                let v = e
                    .expr
                    .eval(n, p, a)
                    .unwrap_or_else(|err| panic!("table {} line {}: {err}", t.id, e.line));
                let cutoff = pow_big(p, t.cutoff_exponent(n) as u64 * a as u64);
                assert!(v >= BigUint::from(1u32));
                assert!(
                    v < cutoff,
                    "table {} line {} exceeds cutoff at n={n} q={p}^{a}",
                    t.id,
                    e.line
                );
            }
        }
    }
}

#[test]
fn p_parts_lie_in_the_claimed_shapes() {
    for t in &DegreeTables::builtin().tables {
        for e in &t.entries {
            for (n, p, a) in grid(e) {
                let v = e.expr.eval(n, p, a).unwrap();
                let direct = p_part(&v, p);
                assert_eq!(degree_p_part(&e.expr, n, p, a).unwrap(), direct);
                let exp = schurcheck::arith::valuation(&v, p) as i64;
                assert!(
                    t.p_part_allowed(p, a, exp),
                    "table {} line {}: p-part {p}^{exp} at n={n} q={p}^{a}",
                    t.id,
                    e.line
                );
            }
        }
    }
}

/// Dropping an attached integrality condition must produce a non-integral
/// value somewhere on the grid, so the condition is no stronger than needed.
#[test]
fn attached_conditions_are_the_weakest() {
    let integrality =
        |c: &Condition| matches!(c, Condition::PNot(_) | Condition::QPlusOneDividesTwoN);
    // n-parity conditions on sign choices only need to fail somewhere off their parity
    let sign_parity = |t: &schurcheck::degrees::DegreeTable, c: &Condition| {
        t.id != 2 && matches!(c, Condition::NEven | Condition::NOdd)
    };
    let mut checked = 0;
    for t in &DegreeTables::builtin().tables {
        for e in &t.entries {
            for (i, c) in e.expr.conditions.iter().enumerate() {
                // a q-odd condition on a halved entry in a table covering both parities
                let parity_in_mixed_table = t.parity.is_none()
                    && matches!(c, Condition::QOdd)
                    && e.expr.scalar_den % 2 == 0;
                let loose = sign_parity(t, c);
                if !(integrality(c) || parity_in_mixed_table || loose) {
                    continue;
                }
                let mut relaxed = e.expr.clone();
                relaxed.conditions.remove(i);
                let mut violated = false;
                let mut broke = false;
                for n in ranks(e) {
                    for (p, a) in prime_powers_up_to(Q_BOUND) {
                        let q = pow_big(p, a as u64);
                        if relaxed.applies(n, p, a) && !c.holds(n, p, &q) {
                            violated = true;
                            let non_integral =
                                matches!(relaxed.eval(n, p, a), Err(Error::NonIntegral(_)));
                            broke |= non_integral;
                            assert!(
                                loose || non_integral,
                                "table {} line {}: {c} is stronger than needed at n={n} q={p}^{a}",
                                t.id,
                                e.line
                            );
                        }
                    }
                }
                assert!(
                    violated,
                    "table {} line {}: {c} is never exercised",
                    t.id, e.line
                );
                assert!(broke, "table {} line {}: {c} is not needed", t.id, e.line);
                checked += 1;
            }
        }
    }
    assert!(checked >= 8, "only {checked} conditions examined");
}

#[test]
fn shared_exclusions_are_honoured() {
    let t = DegreeTables::builtin();
    use schurcheck::groups::Classical::*;
    for (kind, n, p, a) in [
        (Symplectic, 3, 2, 1),
        (Symplectic, 4, 2, 1),
        (OrthogonalPlus, 4, 2, 1),
        (OrthogonalMinus, 5, 2, 1),
    ] {
        assert!(matches!(
            t.low_degree_table(kind, n, p, a),
            Err(Error::NoTableRow(_))
        ));
    }
    for (kind, n, p, a) in [
        (Symplectic, 5, 2, 1),
        (OrthogonalPlus, 6, 2, 1),
        (OrthogonalPlus, 4, 2, 2),
        (Unitary, 11, 3, 1),
    ] {
        assert!(t.low_degree_table(kind, n, p, a).is_ok());
    }
}
