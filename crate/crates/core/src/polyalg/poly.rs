//! Multi-indices and sparse integer polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{pow_big, Rational};

/// Exponent vector `(α(1), …, α(n))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `|α|`
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Entry `i` (0-based).
    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Componentwise `self − other` as signed integers.
    pub fn diff(&self, other: &MultiIndex) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    /// Reorders positions so that entry `k` of the result is entry `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> MultiIndex {
        MultiIndex(perm.iter().map(|&p| self.0[p]).collect())
    }

    pub fn dot(&self, t: &[i64]) -> i64 {
        self.0.iter().zip(t).map(|(&a, &b)| a as i64 * b).sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `true` iff all multi-indices share one degree (vacuous for ∅ and singletons).
pub fn is_homogeneous<'a>(j: impl IntoIterator<Item = &'a MultiIndex>) -> bool {
    let mut it = j.into_iter();
    match it.next() {
        None => true,
        Some(first) => {
            let d = first.degree();
            it.all(|a| a.degree() == d)
        }
    }
}

/// Errors building polynomials from raw terms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("multi-index {index} has length {got}, expected {expected}")]
    Arity {
        index: String,
        got: usize,
        expected: usize,
    },
}

/// Sparse polynomial over ℤ: multi-index ↦ nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiIndex, BigInt)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (a, c) in terms {
            if a.len() != nvars {
                return Err(PolyError::Arity {
                    index: a.to_string(),
                    got: a.len(),
                    expected: nvars,
                });
            }
            p.add_term(a, c);
        }
        Ok(p)
    }

    /// Convenience constructor from small exponent arrays; panics on arity mismatch.
    pub fn from_i64(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Polynomial::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (MultiIndex(e.to_vec()), BigInt::from(*c))),
        )
        .expect("arity")
    }

    fn add_term(&mut self, a: MultiIndex, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(a.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient `c_α` (zero when absent).
    pub fn coeff(&self, a: &MultiIndex) -> BigInt {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    /// `supp(P)` in ascending lexicographic order.
    pub fn support(&self) -> Vec<MultiIndex> {
        self.terms.keys().cloned().collect()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(MultiIndex::is_zero)
    }

    /// Homogeneity of the whole support.
    pub fn is_homogeneous(&self) -> bool {
        is_homogeneous(self.terms.keys())
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u64 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// All terms have degree at most one.
    pub fn is_linear(&self) -> bool {
        self.degree() <= 1
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.nvars, "evaluation point arity");
        let mut total = BigInt::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&a.0) {
                if e > 0 {
                    t *= pow_big(xi, e);
                }
            }
            total += t;
        }
        total
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rat(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "evaluation point arity");
        let mut total = Rational::zero();
        for (a, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (xi, &e) in x.iter().zip(&a.0) {
                t *= num_traits::pow(xi.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    /// Evaluation at an `i64` point; `None` on overflow.
    pub fn eval_i128(&self, x: &[i64]) -> Option<i128> {
        let mut total: i128 = 0;
        for (a, c) in &self.terms {
            let mut t: i128 = i128::try_from(c).ok()?;
            for (&xi, &e) in x.iter().zip(&a.0) {
                t = t.checked_mul((xi as i128).checked_pow(e)?)?;
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    /// Variables permuted: position `k` of each new multi-index holds old position `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.nvars);
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.permute(perm), c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (a, c) in &other.terms {
            p.add_term(a.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = Polynomial::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e = MultiIndex(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                p.add_term(e, c * d);
            }
        }
        p
    }

    /// Sub-polynomial with the given support elements.
    pub fn restrict<'a>(&self, j: impl IntoIterator<Item = &'a MultiIndex>) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for a in j {
            p.add_term(a.clone(), self.coeff(a));
        }
        p
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_component(&self, d: u64) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() == d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients, `P(1,…,1)`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }
}

/// Default variable names `x, y, z` for up to three variables, else `x1..xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Terms in descending graded order, `"0"` for the zero polynomial.
pub fn render_polynomial(p: &Polynomial, vars: &[String]) -> String {
    assert_eq!(vars.len(), p.nvars(), "variable name count");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&MultiIndex, &BigInt)> = p.terms().iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
    let mut out = String::new();
    for (i, (a, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || a.is_zero() {
            factors.push(mag.to_string());
        }
        for (v, &e) in vars.iter().zip(&a.0) {
            match e {
                0 => {}
                1 => factors.push(v.clone()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<String> {
        default_var_names(3)
    }

    #[test]
    fn homogeneity_examples() {
        let j = [MultiIndex(vec![3, 0, 0]), MultiIndex(vec![0, 0, 3])];
        assert!(is_homogeneous(&j));
        let j = [MultiIndex(vec![1, 0, 0]), MultiIndex(vec![0, 0, 2])];
        assert!(!is_homogeneous(&j));
        assert!(is_homogeneous(&[MultiIndex(vec![2, 2, 1])]));
    }

    #[test]
    fn support_examples() {
        let p = Polynomial::from_i64(3, &[(&[4, 0, 0], 1), (&[0, 4, 2], 1), (&[2, 2, 1], 1)]);
        assert_eq!(p.support().len(), 3);
        assert!(Polynomial::zero(2).support().is_empty());
    }

    #[test]
    fn rendering() {
        let p = Polynomial::from_i64(3, &[(&[1, 2, 0], 1), (&[0, 0, 1], -2)]);
        assert_eq!(render_polynomial(&p, &xyz()), "x*y^2 - 2*z");
        let p = Polynomial::from_i64(3, &[(&[0, 0, 0], -3), (&[1, 0, 0], 1)]);
        assert_eq!(render_polynomial(&p, &xyz()), "x - 3");
        assert_eq!(render_polynomial(&Polynomial::zero(3), &xyz()), "0");
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::from_i64(2, &[(&[1, 0], 1)]);
        let y = Polynomial::from_i64(2, &[(&[0, 1], 1)]);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, Polynomial::from_i64(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!(p.eval(&[BigInt::from(3), BigInt::from(2)]), BigInt::from(5));
        assert_eq!(p.eval_i128(&[3, 2]), Some(5));
    }
}
