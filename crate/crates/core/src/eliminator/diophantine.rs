use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Roots;

use crate::error::{Error, Result};

const MAX_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x^2`
    Square,
    /// `x(x-1)`
    Pronic,
}

impl Side {
    fn eval(self, x: u128) -> u128 {
        match self {
            Side::Square => x * x,
            Side::Pronic => x * x.saturating_sub(1),
        }
    }

    /// Least `x >= 0` with `eval(x) >= t`.
    fn ceil_inverse(self, t: u128) -> u128 {
        let mut x = t.sqrt();
        while x > 0 && self.eval(x - 1) >= t {
            x -= 1;
        }
        while self.eval(x) < t {
            x += 1;
        }
        x
    }
}

/// `A f(m) = B g(n)` with `f, g` each a square or pronic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equation {
    pub a: u64,
    pub lhs: Side,
    pub b: u64,
    pub rhs: Side,
}

impl Equation {
    pub fn holds(&self, n: u64, m: u64) -> bool {
        self.a as u128 * self.lhs.eval(m as u128) == self.b as u128 * self.rhs.eval(n as u128)
    }
}

fn parse_side(t: &str, var: char) -> Result<(u64, Side)> {
    let square = format!("{var}^2");
    let pronic = format!("{var}({var}-1)");
    let (coef, side) = if let Some(c) = t.strip_suffix(&square) {
        (c, Side::Square)
    } else if let Some(c) = t.strip_suffix(&pronic) {
        (c, Side::Pronic)
    } else {
        return Err(Error::syntax(format!(
            "expected {square} or {pronic} in {t:?}"
        )));
    };
    let coef = match coef.trim_end_matches('*') {
        "" => 1,
        c => c
            .parse()
            .map_err(|_| Error::syntax(format!("bad coefficient {c:?}")))?,
    };
    if coef == 0 {
        return Err(Error::domain("coefficient must be positive"));
    }
    Ok((coef, side))
}

impl FromStr for Equation {
    type Err = Error;

    /// Accepts ids such as `2m^2=n(n-1)` or `4m(m-1)=n(n-1)`, spaces ignored.
    fn from_str(s: &str) -> Result<Equation> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (l, r) = t
            .split_once('=')
            .ok_or_else(|| Error::syntax(format!("equation id {s:?} has no '='")))?;
        let (a, lhs) = parse_side(l, 'm')?;
        let (b, rhs) = parse_side(r, 'n')?;
        Ok(Equation { a, lhs, b, rhs })
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |k: u64, s: Side, v: char| {
            let c = if k == 1 { String::new() } else { k.to_string() };
            match s {
                Side::Square => format!("{c}{v}^2"),
                Side::Pronic => format!("{c}{v}({v}-1)"),
            }
        };
        write!(
            f,
            "{}={}",
            side(self.a, self.lhs, 'm'),
            side(self.b, self.rhs, 'n')
        )
    }
}

/// All `(n, m)` with `2 <= n <= max_n` and `2 <= m <= max_m`; both are
/// ranks, so `m = 1` is excluded.
pub fn solve_diophantine(eq: &Equation, max_n: u64, max_m: u64) -> Result<BTreeSet<(u64, u64)>> {
    if max_n > MAX_BOUND || max_m > MAX_BOUND {
        return Err(Error::domain(format!("bounds must not exceed {MAX_BOUND}")));
    }
    let mut out = BTreeSet::new();
    for n in 2..=max_n {
        let rhs = eq.b as u128 * eq.rhs.eval(n as u128);
        if !rhs.is_multiple_of(eq.a as u128) {
            continue;
        }
        let m = eq.lhs.ceil_inverse(rhs / eq.a as u128) as u64;
        if m >= 2 && m <= max_m && eq.holds(n, m) {
            out.insert((n, m));
        }
    }
    Ok(out)
}
