//! Univariate rational polynomials: Sturm root counting and rational roots.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::arith::{denominator_lcm, divisors, fmt_rat, rat_int, FactorRangeError, Rational};

/// Dense univariate polynomial, `coeffs[k]` multiplies `w^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

/// Root-query errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("root query on the zero polynomial")]
    ZeroPolynomial,
    #[error("interval lower bound exceeds upper bound")]
    EmptyInterval,
    #[error(transparent)]
    Factor(#[from] FactorRangeError),
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_big(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(rat_int).collect())
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    /// `c·w^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).cloned().unwrap_or_default()
                        + other.coeffs.get(k).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().expect("nonempty") * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Sturm chain `p, p', −rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                return seq;
            }
            seq.push(r.scale(&-Rational::one()));
        }
    }

    /// Integer polynomial with the same roots (denominators cleared).
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let l = denominator_lcm(&self.coeffs);
        let lr = Rational::from_integer(l);
        self.coeffs.iter().map(|c| (c * &lr).to_integer()).collect()
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let cs = fmt_rat(&mag);
            match k {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{cs}*")?;
                    }
                    if k == 1 {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn rat_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    At(Rational),
    PosInfinity,
}

fn variations(seq: &[UnivariatePoly], at: &Bound) -> usize {
    sign_changes(seq.iter().map(|p| match at {
        Bound::At(x) => rat_sign(&p.eval(x)),
        Bound::PosInfinity => rat_sign(&p.leading()),
        Bound::NegInfinity => {
            let s = rat_sign(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }))
}

/// Distinct real roots of `q` in the closed interval between `lo` and `hi`
/// (infinite endpoints are open).
pub fn count_roots_between(q: &UnivariatePoly, lo: &Bound, hi: &Bound) -> Result<usize, RootError> {
    if q.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if let (Bound::At(a), Bound::At(b)) = (lo, hi) {
        if a > b {
            return Err(RootError::EmptyInterval);
        }
    }
    let mut p = q.square_free();
    let mut endpoint_roots = 0;
    for b in [lo, hi] {
        if let Bound::At(x) = b {
            if p.eval(x).is_zero() {
                endpoint_roots += 1;
                let lin = UnivariatePoly::new(vec![-x.clone(), Rational::one()]);
                p = p.div_rem(&lin).0;
            }
        }
    }
    if lo == hi {
        return Ok(endpoint_roots.min(1));
    }
    let seq = p.sturm_sequence();
    let inner = variations(&seq, lo) - variations(&seq, hi);
    Ok(inner + endpoint_roots)
}

/// Distinct real roots of `q` in `[lo, hi]`.
pub fn sturm_count_roots(
    q: &UnivariatePoly,
    lo: &Rational,
    hi: &Rational,
) -> Result<usize, RootError> {
    count_roots_between(q, &Bound::At(lo.clone()), &Bound::At(hi.clone()))
}

/// All distinct rational roots, ascending.
pub fn rational_roots(q: &UnivariatePoly) -> Result<Vec<Rational>, RootError> {
    if q.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let c = q.integer_coefficients();
    let low = c.iter().position(|x| !x.is_zero()).expect("nonzero");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let a0 = &c[low];
    let an = c.last().expect("nonzero");
    if c.len() - 1 > low {
        let ps = divisors(a0)?;
        let qs = divisors(an)?;
        for p in &ps {
            for d in &qs {
                for sign in [1, -1] {
                    let r = Rational::new(p * sign, d.clone());
                    if !roots.contains(&r) && q.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Smallest integer `k` with every real root of `q` strictly below `k`
/// (Cauchy bound); `q` nonzero.
pub fn root_upper_bound(q: &UnivariatePoly) -> BigInt {
    let lead = q.leading().abs();
    let m = q
        .coeffs()
        .iter()
        .take(q.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_default();
    (m + Rational::one()).ceil().to_integer() + BigInt::one()
}
