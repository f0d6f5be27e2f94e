//! Symbolic degrees `(u/v) q^k prod(q^d +- 1) / prod(q^d +- 1)`, where each
//! `d` may depend linearly on the rank `n`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{gcd, pow_big, valuation};
use crate::error::{Error, Result};
use crate::groups::Sign;

/// `coef * n + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub coef: i64,
    pub offset: i64,
}

impl Affine {
    pub const fn constant(c: i64) -> Affine {
        Affine { coef: 0, offset: c }
    }

    pub fn at(&self, n: u32) -> i64 {
        self.coef * n as i64 + self.offset
    }

    fn sub(self, o: Affine) -> Affine {
        Affine {
            coef: self.coef - o.coef,
            offset: self.offset - o.offset,
        }
    }

    fn scale(self, k: i64) -> Affine {
        Affine {
            coef: self.coef * k,
            offset: self.offset * k,
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coef, self.offset) {
            (0, c) => write!(f, "{c}"),
            (1, 0) => write!(f, "n"),
            (k, 0) => write!(f, "{k}n"),
            (1, c) if c > 0 => write!(f, "(n+{c})"),
            (1, c) => write!(f, "(n{c})"),
            (k, c) if c > 0 => write!(f, "({k}n+{c})"),
            (k, c) => write!(f, "({k}n{c})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegFactor {
    pub deg: Affine,
    pub sign: Sign,
}

impl fmt::Display for DegFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.deg {
            Affine { coef: 0, offset: 1 } => write!(f, "(q{}1)", self.sign.symbol()),
            d => write!(f, "(q^{d}{}1)", self.sign.symbol()),
        }
    }
}

/// Applicability conditions over `(n, p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    QOdd,
    QEven,
    NEven,
    NOdd,
    PNot(u64),
    QNot(u64),
    NQNot(u32, u64),
    /// `q + 1` divides `2n`.
    QPlusOneDividesTwoN,
}

impl Condition {
    pub fn holds(&self, n: u32, p: u64, q: &BigUint) -> bool {
        match *self {
            Condition::QOdd => p != 2,
            Condition::QEven => p == 2,
            Condition::NEven => n.is_multiple_of(2),
            Condition::NOdd => n % 2 == 1,
            Condition::PNot(x) => p != x,
            Condition::QNot(x) => *q != BigUint::from(x),
            Condition::NQNot(m, x) => !(n == m && *q == BigUint::from(x)),
            Condition::QPlusOneDividesTwoN => (BigUint::from(2 * n as u64) % (q + 1u32)).is_zero(),
        }
    }

    pub fn parse(text: &str) -> Result<Condition> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::data(format!("unknown condition {text:?}"));
        Ok(match t.as_str() {
            "qodd" => Condition::QOdd,
            "qeven" => Condition::QEven,
            "neven" => Condition::NEven,
            "nodd" => Condition::NOdd,
            "q+1divides2n" => Condition::QPlusOneDividesTwoN,
            _ => {
                if let Some(v) = t.strip_prefix("p!=") {
                    Condition::PNot(v.parse().map_err(|_| bad())?)
                } else if let Some(v) = t.strip_prefix("q!=") {
                    Condition::QNot(v.parse().map_err(|_| bad())?)
                } else if let Some(v) = t.strip_prefix("(n,q)!=(") {
                    let v = v.strip_suffix(')').ok_or_else(bad)?;
                    let (a, b) = v.split_once(',').ok_or_else(bad)?;
                    Condition::NQNot(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::QOdd => write!(f, "q odd"),
            Condition::QEven => write!(f, "q even"),
            Condition::NEven => write!(f, "n even"),
            Condition::NOdd => write!(f, "n odd"),
            Condition::PNot(x) => write!(f, "p!={x}"),
            Condition::QNot(x) => write!(f, "q!={x}"),
            Condition::NQNot(m, x) => write!(f, "(n,q)!=({m},{x})"),
            Condition::QPlusOneDividesTwoN => write!(f, "q+1 divides 2n"),
        }
    }
}

/// Inclusive range of ranks; `hi = None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NRange {
    pub lo: u32,
    pub hi: Option<u32>,
}

impl NRange {
    pub fn contains(&self, n: u32) -> bool {
        n >= self.lo && self.hi.is_none_or(|h| n <= h)
    }

    pub fn parse(text: &str) -> Result<NRange> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| Error::data(format!("bad n-range {text:?}")))
        };
        if let Some(v) = t.strip_prefix(">=") {
            return Ok(NRange {
                lo: num(v)?,
                hi: None,
            });
        }
        if let Some((a, b)) = t.split_once("..") {
            return Ok(NRange {
                lo: num(a)?,
                hi: Some(num(b)?),
            });
        }
        let v = num(&t)?;
        Ok(NRange { lo: v, hi: Some(v) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeExpr {
    pub scalar_num: u64,
    pub scalar_den: u64,
    pub q_power: u32,
    pub numer: Vec<DegFactor>,
    pub denom: Vec<DegFactor>,
    pub conditions: Vec<Condition>,
}

impl DegreeExpr {
    pub fn new(q_power: u32, numer: Vec<DegFactor>, denom: Vec<DegFactor>) -> Self {
        DegreeExpr {
            scalar_num: 1,
            scalar_den: 1,
            q_power,
            numer,
            denom,
            conditions: vec![],
        }
    }

    pub fn with_scalar(mut self, num: u64, den: u64) -> Self {
        let g = gcd(num, den);
        self.scalar_num = num / g;
        self.scalar_den = den / g;
        self
    }

    pub fn with_conditions(mut self, c: Vec<Condition>) -> Self {
        self.conditions = c;
        self
    }

    pub fn applies(&self, n: u32, p: u64, a: u32) -> bool {
        let q = pow_big(p, a as u64);
        self.conditions.iter().all(|c| c.holds(n, p, &q))
    }

    /// Exact value at rank `n` and `q = p^a`. Conditions are not checked
    /// here; a non-integral result is an error.
    pub fn eval(&self, n: u32, p: u64, a: u32) -> Result<BigUint> {
        let q = pow_big(p, a as u64);
        let term = |f: &DegFactor| -> Result<BigUint> {
            let d = f.deg.at(n);
            if d < 1 {
                return Err(Error::data(format!("factor {f} has degree {d} at n={n}")));
            }
            let v = q.pow(d as u32);
            Ok(match f.sign {
                Sign::Minus => v - 1u32,
                Sign::Plus => v + 1u32,
            })
        };
        let mut num = BigUint::from(self.scalar_num) * q.pow(self.q_power);
        for f in &self.numer {
            num *= term(f)?;
        }
        let mut den = BigUint::from(self.scalar_den);
        for f in &self.denom {
            den *= term(f)?;
        }
        let (quot, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::NonIntegral(format!("{self} at n={n}, q={p}^{a}")));
        }
        if quot.is_zero() {
            return Err(Error::NonIntegral(format!(
                "{self} vanishes at n={n}, q={p}^{a}"
            )));
        }
        Ok(quot)
    }

    /// `eval` after checking the conditions.
    pub fn eval_checked(&self, n: u32, p: u64, a: u32) -> Result<BigUint> {
        if !self.applies(n, p, a) {
            return Err(Error::domain(format!(
                "{self} does not apply at n={n}, q={p}^{a}"
            )));
        }
        self.eval(n, p, a)
    }

    /// Exponent of `p` in the value, read off the expression: the `q^k`
    /// term and the scalar; every binomial factor is prime to `p`.
    pub fn p_exponent(&self, p: u64, a: u32) -> i64 {
        let v = |x: u64| valuation(&BigUint::from(x), p) as i64;
        (self.q_power as i64) * a as i64 + v(self.scalar_num) - v(self.scalar_den)
    }
}

impl fmt::Display for DegreeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut top = String::new();
        if self.scalar_num != 1 {
            top.push_str(&self.scalar_num.to_string());
        }
        match self.q_power {
            0 => {}
            1 => top.push('q'),
            k => top.push_str(&format!("q^{k}")),
        }
        for x in &self.numer {
            top.push_str(&x.to_string());
        }
        if top.is_empty() {
            top.push('1');
        }
        let mut bottom = String::new();
        if self.scalar_den != 1 {
            bottom.push_str(&self.scalar_den.to_string());
        }
        for x in &self.denom {
            bottom.push_str(&x.to_string());
        }
        if bottom.is_empty() {
            write!(f, "{top}")
        } else {
            write!(f, "{top}/{bottom}")
        }
    }
}

/// Parses a product of factors such as `q(q+1)^2 (q^(n-1)+q^2) (q^4+q^2+1)`.
///
/// Each parenthesised polynomial must be a binomial `q^A +- q^B` (or
/// `q^A +- 1`) or a trinomial `q^2k +- q^k + 1`; these are rewritten as
/// `q`-powers and signed factors.
pub fn parse_product(text: &str) -> Result<(u32, Vec<DegFactor>, Vec<DegFactor>)> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut q_power = 0u32;
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    if t.is_empty() || t == "-" || t == "1" {
        return Ok((0, numer, denom));
    }
    let bytes = t.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let (poly, next) = if bytes[i] == b'(' {
            let close = find_close(&t, i)?;
            (&t[i + 1..close], close + 1)
        } else if bytes[i] == b'q' {
            // bare monomial q or q^k
            let mut j = i + 1;
            if j < bytes.len() && bytes[j] == b'^' {
                j += 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
            }
            (&t[i..j], j)
        } else {
            return Err(Error::data(format!("unexpected {:?} in {text:?}", &t[i..])));
        };
        let mut power = 1u32;
        let mut k = next;
        if k < bytes.len() && bytes[k] == b'^' {
            k += 1;
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            power = t[start..k]
                .parse()
                .map_err(|_| Error::data(format!("bad power in {text:?}")))?;
        }
        let (qp, num, den) = classify(poly)?;
        for _ in 0..power {
            q_power += qp;
            numer.extend(num.iter().copied());
            denom.extend(den.iter().copied());
        }
        i = k;
    }
    Ok((q_power, numer, denom))
}

fn find_close(t: &str, open: usize) -> Result<usize> {
    let mut depth = 0;
    for (j, c) in t.char_indices().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(j);
                }
            }
            _ => {}
        }
    }
    Err(Error::data(format!("unbalanced parentheses in {t:?}")))
}

type Classified = (u32, Vec<DegFactor>, Vec<DegFactor>);

fn classify(poly: &str) -> Result<Classified> {
    let terms = split_terms(poly)?;
    let err = || Error::data(format!("unsupported polynomial {poly:?}"));
    match terms.as_slice() {
        [(Sign::Plus, e)] => {
            let k = e.coef == 0 && e.offset >= 0;
            if !k {
                return Err(err());
            }
            Ok((e.offset as u32, vec![], vec![]))
        }
        [(Sign::Plus, hi), (s, lo)] => {
            if lo.coef != 0 || lo.offset < 0 {
                return Err(err());
            }
            let d = hi.sub(*lo);
            Ok((
                lo.offset as u32,
                vec![DegFactor { deg: d, sign: *s }],
                vec![],
            ))
        }
        [(Sign::Plus, top), (s, mid), (Sign::Plus, Affine { coef: 0, offset: 0 })] => {
            if *top != mid.scale(2) {
                return Err(err());
            }
            // q^2k + q^k + 1 = (q^3k - 1)/(q^k - 1); q^2k - q^k + 1 = (q^3k + 1)/(q^k + 1)
            let sign = s.flip();
            Ok((
                0,
                vec![DegFactor {
                    deg: mid.scale(3),
                    sign,
                }],
                vec![DegFactor { deg: *mid, sign }],
            ))
        }
        _ => Err(err()),
    }
}

/// Splits `q^A+q^B-1` into signed exponents; the constant `1` is `q^0`.
fn split_terms(poly: &str) -> Result<Vec<(Sign, Affine)>> {
    let mut out = Vec::new();
    let mut sign = Sign::Plus;
    let mut depth = 0;
    let mut start = 0;
    let bytes = poly.as_bytes();
    for j in 0..=bytes.len() {
        let at_split =
            j == bytes.len() || (depth == 0 && j > start && (bytes[j] == b'+' || bytes[j] == b'-'));
        if j < bytes.len() {
            match bytes[j] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
        }
        if at_split {
            out.push((sign, monomial(&poly[start..j])?));
            if j < bytes.len() {
                sign = if bytes[j] == b'+' {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                start = j + 1;
            }
        }
    }
    Ok(out)
}

fn monomial(t: &str) -> Result<Affine> {
    if t == "1" {
        return Ok(Affine::constant(0));
    }
    if t == "q" {
        return Ok(Affine::constant(1));
    }
    let e = t
        .strip_prefix("q^")
        .ok_or_else(|| Error::data(format!("bad monomial {t:?}")))?;
    let e = e
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(e);
    parse_affine(e)
}

fn parse_affine(t: &str) -> Result<Affine> {
    let bad = || Error::data(format!("bad exponent {t:?}"));
    if let Some(pos) = t.find('n') {
        let coef = if pos == 0 {
            1
        } else {
            t[..pos].parse().map_err(|_| bad())?
        };
        let rest = &t[pos + 1..];
        let offset = if rest.is_empty() {
            0
        } else if let Some(r) = rest.strip_prefix('+') {
            r.parse().map_err(|_| bad())?
        } else if let Some(r) = rest.strip_prefix('-') {
            -r.parse::<i64>().map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        Ok(Affine { coef, offset })
    } else {
        Ok(Affine::constant(t.parse().map_err(|_| bad())?))
    }
}
