//! Integer helpers shared by the order, degree and multiplier code.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn pow_big(base: u64, exp: u64) -> BigUint {
    let exp = u32::try_from(exp).expect("exponent too large");
    BigUint::from(base).pow(exp)
}

/// Divisors of `n` in ascending order; `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // these bases are deterministic for all 64-bit inputs
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

/// Splits `q` as `p^a` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut a = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        a += 1;
    }
    (rest == 1).then_some((p, a))
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// Prime factorisation by trial division, as (prime, exponent) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_powers_up_to(bound: u64) -> Vec<(u64, u32)> {
    (2..=bound).filter_map(prime_power).collect()
}

/// Largest `e` with `p^e | n`; `n` must be nonzero.
pub fn valuation(n: &BigUint, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = big(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// Removes from `r` every prime that also divides `g`, by repeated gcd.
pub fn strip_common(r: &mut BigUint, g: &BigUint) {
    let mut d = r.gcd(g);
    while !d.is_one() {
        while (&*r % &d).is_zero() {
            *r /= &d;
        }
        d = r.gcd(&d);
    }
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first 13 prime bases: exact below 3.3e24,
/// a strong probable-prime test above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = big(2);
    if n.is_even() {
        return false;
    }
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for a in MR_BASES {
        let mut x = big(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub const TRIAL_BOUND: u64 = 1_000_000;
pub const RHO_ITERATIONS: u64 = 200_000;

/// Smallest prime factor of `n > 1` found by trial division up to
/// `TRIAL_BOUND`, then bounded Pollard rho. `None` means the search gave up.
pub fn smallest_prime_factor_big(n: &BigUint) -> Option<BigUint> {
    assert!(*n > BigUint::one());
    let rest = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        if rest.is_one() {
            break;
        }
        if (&rest % d).is_zero() {
            return Some(big(d));
        }
        if big(d) * big(d) > rest {
            return Some(rest);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if is_probable_prime(&rest) {
        return Some(rest);
    }
    // every factor of `rest` exceeds the trial bound; collect full split
    let mut primes = Vec::new();
    if !split_rho(&rest, &mut primes) {
        return None;
    }
    primes.into_iter().min()
}

fn split_rho(n: &BigUint, out: &mut Vec<BigUint>) -> bool {
    if n.is_one() {
        return true;
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return true;
    }
    for seed in 1u64..=8 {
        if let Some(f) = rho_once(n, seed) {
            let other = n / &f;
            return split_rho(&f, out) && split_rho(&other, out);
        }
    }
    false
}

fn rho_once(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = big(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut x = big(2);
    let mut y = big(2);
    let mut prod = BigUint::one();
    for i in 1..=RHO_ITERATIONS {
        x = f(&x);
        y = f(&f(&y));
        let diff = if x > y { &x - &y } else { &y - &x };
        if diff.is_zero() {
            return None;
        }
        prod = (prod * diff) % n;
        if i % 64 == 0 || i == RHO_ITERATIONS {
            let g = prod.gcd(n);
            if g.is_one() {
                continue;
            }
            if &g == n {
                return None;
            }
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_ascending() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert!(divisors(0).is_empty());
    }

    #[test]
    fn primality_matches_sieve() {
        let n = 20_000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                let mut j = i * i;
                while j < n {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (i, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(i as u64), s, "{i}");
            assert_eq!(is_probable_prime(&big(i as u64)), s, "{i}");
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn strip_and_valuation() {
        let mut r = big(1023);
        strip_common(&mut r, &big(3));
        strip_common(&mut r, &big(31));
        assert_eq!(r, big(11));
        assert_eq!(valuation(&big(96), 2), 5);
    }

    #[test]
    fn rho_splits_semiprime_above_trial_bound() {
        let p = big(1_000_003);
        let q = big(1_000_033);
        let n = &p * &q;
        assert_eq!(smallest_prime_factor_big(&n), Some(p));
    }
}
