//! Integer helpers: rational constructors, factorization, valuations, divisors.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. Always normalized (lowest terms, positive denominator).
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`; panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from a big integer.
pub fn rat_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_rat(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p"` or `"p/q"` (whitespace tolerant).
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Integer value of `r` if it is integral.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Exact power `base^exp` for a non-negative exponent.
pub fn pow_big(base: &BigInt, exp: u32) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Exact rational power with a possibly negative exponent; `None` for `0^(-k)`.
pub fn pow_rat(base: &Rational, exp: i64) -> Option<Rational> {
    if exp >= 0 {
        Some(num_traits::pow(base.clone(), exp as usize))
    } else if base.is_zero() {
        None
    } else {
        Some(num_traits::pow(base.recip(), (-exp) as usize))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
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
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of a 64-bit integer as sorted `(prime, exponent)` pairs.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut rest = n;
    for p in 2u64..1000 {
        if rest < 2 {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    let mut large = Vec::new();
    while let Some(m) = stack.pop() {
        if m < 2 {
            continue;
        }
        if is_prime_u64(m) {
            large.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.extend(large);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Error for integers outside the supported factorization range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("integer {0} exceeds the 64-bit factorization range")]
pub struct FactorRangeError(pub String);

/// Prime factorization of `|n|` (`n != 0`).
pub fn factor_big(n: &BigInt) -> Result<Vec<(u64, u32)>, FactorRangeError> {
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| FactorRangeError(n.to_string()))?;
    Ok(factor_u64(m))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(r: &Rational, p: u64) -> i64 {
    valuation(r.numer(), p) - valuation(r.denom(), p)
}

/// Positive divisors of `|n|` in increasing order (`n != 0`).
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>, FactorRangeError> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_big(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// `true` when `n` is a positive integer power of `base` (including `base^0 = 1`).
pub fn is_power_of(n: &BigInt, base: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    if base.abs() <= BigInt::one() {
        return n.is_one();
    }
    let mut m = n.clone();
    while !m.is_one() {
        let (q, r) = m.div_rem(base);
        if !r.is_zero() {
            return false;
        }
        m = q;
    }
    true
}

/// Least common multiple of the denominators in `xs`.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Sign of a big integer as -1, 0, 1.
pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Unsigned magnitude helper used by valuation colorings.
pub fn to_biguint(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}
