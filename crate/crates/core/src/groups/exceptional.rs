use super::{ExceptionalTag, Factor, Sign};

/// Order data for an exceptional family over `q`:
/// `|L| = q^m * prod(numerator) / prod(divisor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalTypeData {
    pub tag: ExceptionalTag,
    pub m: u32,
    pub m_prime: u32,
    pub factors: Vec<Factor>,
    /// Only 3D4 needs this: `q^8 + q^4 + 1 = (q^12 - 1)/(q^4 - 1)`.
    pub divisor: Vec<Factor>,
}

const fn f(d: u32, sign: Sign) -> Factor {
    Factor { d, sign }
}

use Sign::{Minus as M, Plus as P};

pub fn exceptional_type_data(tag: ExceptionalTag) -> ExceptionalTypeData {
    let (m, factors, divisor): (u32, Vec<Factor>, Vec<Factor>) = match tag {
        ExceptionalTag::G2 => (6, vec![f(2, M), f(6, M)], vec![]),
        ExceptionalTag::F4 => (24, vec![f(2, M), f(6, M), f(8, M), f(12, M)], vec![]),
        ExceptionalTag::E6 => (
            36,
            vec![f(2, M), f(5, M), f(6, M), f(8, M), f(9, M), f(12, M)],
            vec![],
        ),
        ExceptionalTag::TwistedE6 => (
            36,
            vec![f(2, M), f(5, P), f(6, M), f(8, M), f(9, P), f(12, M)],
            vec![],
        ),
        ExceptionalTag::E7 => (
            63,
            vec![
                f(2, M),
                f(6, M),
                f(8, M),
                f(10, M),
                f(12, M),
                f(14, M),
                f(18, M),
            ],
            vec![],
        ),
        ExceptionalTag::E8 => (
            120,
            vec![
                f(2, M),
                f(8, M),
                f(12, M),
                f(14, M),
                f(18, M),
                f(20, M),
                f(24, M),
                f(30, M),
            ],
            vec![],
        ),
        ExceptionalTag::TrialityD4 => (12, vec![f(2, M), f(6, M), f(12, M)], vec![f(4, M)]),
        ExceptionalTag::Suzuki => (2, vec![f(1, M), f(2, P)], vec![]),
        ExceptionalTag::Ree => (3, vec![f(1, M), f(3, P)], vec![]),
        ExceptionalTag::TwistedF4 => (12, vec![f(1, M), f(3, P), f(4, M), f(6, P)], vec![]),
    };
    let m_prime = factors
        .iter()
        .filter(|x| x.sign == Sign::Minus)
        .map(|x| x.d)
        .max()
        .expect("every exceptional order has a minus factor");
    ExceptionalTypeData {
        tag,
        m,
        m_prime,
        factors,
        divisor,
    }
}
