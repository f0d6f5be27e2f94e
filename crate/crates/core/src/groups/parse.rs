use super::{Classical, ExceptionalTag, Flavor, GroupSpec};
use crate::arith::prime_power;
use crate::error::{Error, Result};

/// Parses strings such as `SL(3,2)`, `PSp(6,3^2)`, `Spin+(8,3)`, `E8(2^9)`.
///
/// `Omega(5,q)` and `Omega(2n+1,2^a)` are read as the isomorphic symplectic
/// groups; the odd orthogonal family is otherwise restricted to odd p.
pub fn parse_and_validate(text: &str) -> Result<GroupSpec> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let open = compact
        .find('(')
        .ok_or_else(|| Error::syntax(format!("expected NAME(args) in {text:?}")))?;
    if !compact.ends_with(')') {
        return Err(Error::syntax(format!(
            "missing closing parenthesis in {text:?}"
        )));
    }
    let name = &compact[..open];
    let args: Vec<&str> = compact[open + 1..compact.len() - 1].split(',').collect();

    if let Some((tag, flavor)) = exceptional_name(name) {
        if args.len() != 1 {
            return Err(Error::syntax(format!(
                "{name} takes a single field argument"
            )));
        }
        let (p, a) = parse_q(args[0])?;
        return GroupSpec::exceptional(tag, p, a, flavor);
    }

    let (kind, flavor) = classical_name(name)
        .ok_or_else(|| Error::syntax(format!("unknown family name {name:?}")))?;
    if args.len() != 2 {
        return Err(Error::syntax(format!("{name} takes (dimension, q)")));
    }
    let dim: u32 = args[0]
        .parse()
        .map_err(|_| Error::syntax(format!("bad dimension {:?}", args[0])))?;
    let (p, a) = parse_q(args[1])?;
    let (kind, n) = match kind {
        Classical::Linear | Classical::Unitary => (kind, dim),
        Classical::Symplectic | Classical::OrthogonalPlus | Classical::OrthogonalMinus => {
            if !dim.is_multiple_of(2) {
                return Err(Error::domain(format!(
                    "{name} needs an even dimension, got {dim}"
                )));
            }
            (kind, dim / 2)
        }
        Classical::OddOrthogonal => {
            if dim % 2 != 1 {
                return Err(Error::domain(format!(
                    "{name} needs an odd dimension, got {dim}"
                )));
            }
            let n = dim / 2;
            if n == 2 || (p == 2 && n >= 2) {
                (Classical::Symplectic, n)
            } else {
                (kind, n)
            }
        }
    };
    GroupSpec::classical(kind, n, p, a, flavor)
}

fn classical_name(name: &str) -> Option<(Classical, Flavor)> {
    let lower = name.to_ascii_lowercase();
    let hit = match lower.as_str() {
        "sl" => (Classical::Linear, Flavor::Cover),
        "psl" => (Classical::Linear, Flavor::Simple),
        "su" => (Classical::Unitary, Flavor::Cover),
        "psu" => (Classical::Unitary, Flavor::Simple),
        "sp" => (Classical::Symplectic, Flavor::Cover),
        "psp" => (Classical::Symplectic, Flavor::Simple),
        "spin" => (Classical::OddOrthogonal, Flavor::Cover),
        "omega" => (Classical::OddOrthogonal, Flavor::Simple),
        "spin+" => (Classical::OrthogonalPlus, Flavor::Cover),
        "pomega+" => (Classical::OrthogonalPlus, Flavor::Simple),
        "spin-" => (Classical::OrthogonalMinus, Flavor::Cover),
        "pomega-" => (Classical::OrthogonalMinus, Flavor::Simple),
        _ => return None,
    };
    Some(hit)
}

fn exceptional_name(name: &str) -> Option<(ExceptionalTag, Flavor)> {
    let lower = name.to_ascii_lowercase();
    let (base, flavor) = match lower.strip_suffix("sc") {
        Some(b) => (b, Flavor::Cover),
        None => (lower.as_str(), Flavor::Simple),
    };
    let tag = ExceptionalTag::from_tag(base)?;
    if flavor == Flavor::Cover && !tag.has_center() {
        // the cover coincides with the simple group
        return Some((tag, Flavor::Simple));
    }
    Some((tag, flavor))
}

fn parse_q(text: &str) -> Result<(u64, u32)> {
    if let Some((p, a)) = text.split_once('^') {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::syntax(format!("bad prime {p:?}")))?;
        let a: u32 = a
            .parse()
            .map_err(|_| Error::syntax(format!("bad exponent {a:?}")))?;
        if !crate::arith::is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if a == 0 {
            return Err(Error::domain("field exponent must be positive"));
        }
        Ok((p, a))
    } else {
        let q: u64 = text
            .parse()
            .map_err(|_| Error::syntax(format!("bad field size {text:?}")))?;
        prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Family;

    #[test]
    fn direct_parses() {
        let s = parse_and_validate("SL(3,2)").unwrap();
        assert_eq!(s.family, Family::Classical(Classical::Linear, 3));
        assert_eq!((s.p, s.exponent, s.flavor), (2, 1, Flavor::Cover));

        let s = parse_and_validate("PSU(4,3)").unwrap();
        assert_eq!(s.family, Family::Classical(Classical::Unitary, 4));
        assert_eq!(s.flavor, Flavor::Simple);

        let s = parse_and_validate("E8(2^9)").unwrap();
        assert_eq!(s.family, Family::Exceptional(ExceptionalTag::E8));
        assert_eq!((s.p, s.exponent), (2, 9));
    }

    #[test]
    fn half_dimension_is_stored() {
        let s = parse_and_validate("Sp(4,3)").unwrap();
        assert_eq!(s.family, Family::Classical(Classical::Symplectic, 2));
        let s = parse_and_validate("Omega(7,3)").unwrap();
        assert_eq!(s.family, Family::Classical(Classical::OddOrthogonal, 3));
    }

    #[test]
    fn odd_orthogonal_redirects() {
        let s = parse_and_validate("Omega(5,3)").unwrap();
        assert_eq!(s.to_string(), "PSp(4,3)");
        let s = parse_and_validate("Omega(7,4)").unwrap();
        assert_eq!(s.to_string(), "PSp(6,2^2)");
        let s = parse_and_validate("Spin(7,2)").unwrap();
        assert_eq!(s.to_string(), "Sp(6,2)");
    }

    #[test]
    fn field_forms_agree() {
        assert_eq!(
            parse_and_validate("SL(2,9)"),
            parse_and_validate("SL(2, 3^2)")
        );
        assert_eq!(parse_and_validate("suz(8)"), parse_and_validate("2B2(2^3)"));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "SL(3)",
            "SL3,2",
            "XX(3,2)",
            "SL(3,6)",
            "Sp(5,3)",
            "Omega(8,3)",
            "SL(3,4^2)",
            "SL(1,2)",
        ] {
            assert!(parse_and_validate(bad).is_err(), "{bad}");
        }
    }
}
