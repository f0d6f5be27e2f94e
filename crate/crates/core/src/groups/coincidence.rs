use super::{Classical, ExceptionalTag, Family, Flavor, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coincidence {
    /// PSL(2,9) is isomorphic to the alternating group of degree 6.
    Alternating6,
}

/// Canonical representative under the closed coincidence list.
pub fn canonicalize(spec: GroupSpec) -> GroupSpec {
    canonicalize_with_note(spec).0
}

pub fn canonicalize_with_note(spec: GroupSpec) -> (GroupSpec, Option<Coincidence>) {
    let mut s = spec;
    match s.family {
        Family::Classical(Classical::OddOrthogonal, n) if n == 2 || s.p == 2 => {
            s.family = Family::Classical(Classical::Symplectic, n);
        }
        Family::Classical(Classical::Linear, 2)
            if s.flavor == Flavor::Simple && s.p == 5 && s.exponent == 1 =>
        {
            s.p = 2;
            s.exponent = 2;
        }
        Family::Exceptional(tag) if !tag.has_center() => s.flavor = Flavor::Simple,
        _ => {}
    }
    let note = matches!(s.family, Family::Classical(Classical::Linear, 2))
        && s.flavor == Flavor::Simple
        && s.p == 3
        && s.exponent == 2;
    (s, note.then_some(Coincidence::Alternating6))
}

/// The sixteen simple groups whose Schur multiplier is larger than the
/// center of the simply-connected cover.
pub fn exceptional_schur_list() -> Vec<GroupSpec> {
    use Classical::*;
    let c = |kind, n, p, a| GroupSpec {
        family: Family::Classical(kind, n),
        p,
        exponent: a,
        flavor: Flavor::Simple,
    };
    let e = |tag, p, a| GroupSpec {
        family: Family::Exceptional(tag),
        p,
        exponent: a,
        flavor: Flavor::Simple,
    };
    vec![
        c(Linear, 2, 2, 2),
        c(Linear, 2, 3, 2),
        c(Linear, 3, 2, 1),
        c(Linear, 3, 2, 2),
        c(Linear, 4, 2, 1),
        // Omega(7,2), stored in its symplectic form
        c(Symplectic, 3, 2, 1),
        c(OddOrthogonal, 3, 3, 1),
        c(OrthogonalPlus, 4, 2, 1),
        c(Unitary, 4, 2, 1),
        c(Unitary, 4, 3, 1),
        c(Unitary, 6, 2, 1),
        e(ExceptionalTag::F4, 2, 1),
        e(ExceptionalTag::G2, 3, 1),
        e(ExceptionalTag::G2, 2, 2),
        e(ExceptionalTag::TwistedE6, 2, 1),
        e(ExceptionalTag::Suzuki, 2, 3),
    ]
}
