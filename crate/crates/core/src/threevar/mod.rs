//! Three-variable equations: the `z^K · H(x z^ρ, y)` structure, `m/n`-power
//! tests via p-adic valuations, and the necessary decomposition for polynomials
//! admitting only order-0 functionals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::functionals::{search_functionals, Direction, SearchBounds};
use crate::polyalg::arith::{factor_big, pow_big, valuation};
use crate::polyalg::{
    fmt_rat, parse_rat, rational_roots, MultiIndex, Polynomial, Rational, UnivariatePoly,
};
use crate::serde_util;
use crate::verdict::{Certificate, Notion, Obstruction, ObstructionWitness, PolyText, Verdict};

/// Variable permutations in the order they are tried: identity, transpositions, 3-cycles.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
    [1, 2, 0],
    [2, 0, 1],
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThreeVarError {
    #[error("expected 3 variables, got {0}")]
    Arity(usize),
    #[error("polynomial is homogeneous")]
    Homogeneous,
    #[error("polynomial has a constant term")]
    ConstantTerm,
    #[error("polynomial admits functionals of order ≥ 1")]
    HigherOrder,
    #[error("functional search limit: {0}")]
    Search(String),
}

fn check_input(p: &Polynomial) -> Result<(), ThreeVarError> {
    if p.nvars() != 3 {
        return Err(ThreeVarError::Arity(p.nvars()));
    }
    if p.has_constant_term() {
        return Err(ThreeVarError::ConstantTerm);
    }
    if p.is_homogeneous() {
        return Err(ThreeVarError::Homogeneous);
    }
    Ok(())
}

mod rat_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

/// `P = z^{r − ρ a_0} · H(x z^ρ, y)` after permuting variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFormExtraction {
    /// New variable `k` is old variable `permutation[k]`.
    pub permutation: Vec<usize>,
    pub r: i64,
    #[serde(with = "rat_str")]
    pub rho: Rational,
    pub a_0: i64,
    /// Homogeneous in `(s, t)`.
    pub h: PolyText,
    /// Permuted support `α_0, …, α_l`; `α_l` is the unique extreme in the first coordinate.
    pub enumeration: Vec<MultiIndex>,
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (k, &p) in perm.iter().enumerate() {
        inv[p] = k;
    }
    inv
}

impl HFormExtraction {
    /// Exponent `r − ρ a_0` of the `z` factor.
    pub fn z_exponent(&self) -> i64 {
        let k = Rational::from_integer(self.r.into())
            - &self.rho * Rational::from_integer(self.a_0.into());
        k.to_integer().to_i64().expect("integral by construction")
    }

    pub fn h_poly(&self) -> Polynomial {
        self.h.parse().expect("stored H parses")
    }

    /// `H(u, 1)`.
    pub fn dehomogenized(&self) -> UnivariatePoly {
        let h = self.h_poly();
        let deg = h
            .terms()
            .keys()
            .map(|a| a.get(0) as usize)
            .max()
            .unwrap_or(0);
        let mut c = vec![Rational::zero(); deg + 1];
        for (a, v) in h.terms() {
            c[a.get(0) as usize] += Rational::from_integer(v.clone());
        }
        UnivariatePoly::new(c)
    }

    /// Expands `z^K H(x z^ρ, y)` and undoes the permutation.
    pub fn reassemble(&self) -> Option<Polynomial> {
        let k = self.z_exponent();
        let mut terms = Vec::new();
        for (a, c) in self.h_poly().terms() {
            let (s, t) = (a.get(0) as i64, a.get(1) as i64);
            let zr = &self.rho * Rational::from_integer(s.into());
            if !zr.is_integer() {
                return None;
            }
            let ze = k + zr.to_integer().to_i64()?;
            if ze < 0 {
                return None;
            }
            terms.push((MultiIndex(vec![s as u32, t as u32, ze as u32]), c.clone()));
        }
        let permuted = Polynomial::from_terms(3, terms).ok()?;
        Some(permuted.permute(&inverse(&self.permutation)))
    }

    /// Maps a solution of the permuted equation back to the original variables.
    pub fn unpermute(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut x = vec![BigInt::zero(); 3];
        for (k, &p) in self.permutation.iter().enumerate() {
            x[p] = v[k].clone();
        }
        x
    }
}

fn try_permutation(p: &Polynomial, perm: &[usize; 3]) -> Option<HFormExtraction> {
    let q = p.permute(perm);
    let supp = q.support();
    if supp.len() < 2 {
        return None;
    }
    let d = supp[0].get(0) + supp[0].get(1);
    if supp.iter().any(|a| a.get(0) + a.get(1) != d) {
        return None;
    }
    let first = |a: &MultiIndex| a.get(0) as i64;
    let min = supp.iter().map(first).min()?;
    let max = supp.iter().map(first).max()?;
    if min == max {
        return None;
    }
    // α_l must be the unique extreme in the first coordinate
    let mut enumeration = supp.clone();
    if supp.iter().filter(|a| first(a) == min).count() == 1 {
        enumeration.sort_by(|a, b| b.cmp(a));
    } else if supp.iter().filter(|a| first(a) == max).count() == 1 {
        enumeration.sort();
    } else {
        return None;
    }
    let last = enumeration.last()?.clone();
    let pivot = enumeration.iter().find(|a| first(a) != first(&last))?;
    let rho = Rational::new(
        (pivot.get(2) as i64 - last.get(2) as i64).into(),
        (first(pivot) - first(&last)).into(),
    );
    if rho.is_zero() {
        return None;
    }
    for a in &enumeration {
        let lhs = Rational::from_integer((a.get(2) as i64 - last.get(2) as i64).into());
        if lhs != &rho * Rational::from_integer((first(a) - first(&last)).into()) {
            return None;
        }
        if !(&rho * Rational::from_integer(first(a).into())).is_integer() {
            return None;
        }
    }
    let a0 = &enumeration[0];
    let h_terms: Vec<(MultiIndex, BigInt)> = q
        .terms()
        .iter()
        .map(|(a, c)| (MultiIndex(vec![a.get(0), a.get(1)]), c.clone()))
        .collect();
    let h = Polynomial::from_terms(2, h_terms).ok()?;
    let ext = HFormExtraction {
        permutation: perm.to_vec(),
        r: a0.get(2) as i64,
        rho,
        a_0: first(a0),
        h: PolyText::new(&h, &["s".to_string(), "t".to_string()]),
        enumeration,
    };
    (ext.reassemble().as_ref() == Some(p)).then_some(ext)
}

/// First permutation (canonical order) under which `P = z^K H(x z^ρ, y)`.
pub fn has_complete_functional_structure(
    p: &Polynomial,
) -> Result<Option<HFormExtraction>, ThreeVarError> {
    check_input(p)?;
    Ok(PERMUTATIONS
        .iter()
        .find_map(|perm| try_permutation(p, perm)))
}

/// `ρ = m/n` with `n > 0`, `gcd(m, n) = 1`.
pub fn rho_parts(rho: &Rational) -> (i64, u64) {
    (
        rho.numer().to_i64().expect("small exponent"),
        rho.denom().to_u64().expect("small exponent"),
    )
}

fn primes_of(a: &BigInt, b: &BigInt) -> Vec<u64> {
    let mut ps = BTreeSet::new();
    for x in [a, b] {
        if let Ok(f) = factor_big(x) {
            ps.extend(f.into_iter().map(|(p, _)| p));
        }
    }
    ps.into_iter().collect()
}

/// A prime `p` with `m ∤ n·ν_p(a/b)`, if any.
pub fn obstructing_prime(a: &BigInt, b: &BigInt, m: i64, n: u64) -> Option<u64> {
    primes_of(a, b).into_iter().find(|&p| {
        let v = valuation(a, p) - valuation(b, p);
        (n as i64 * v) % m != 0
    })
}

/// `∃ r ∈ ℚ: r^m = (a/b)^n`, via `m | n·ν_p(a/b)` for all `p` plus a sign check.
pub fn is_power_in_q(a: &BigInt, b: &BigInt, m: i64, n: u64) -> bool {
    assert!(m != 0 && n > 0 && !a.is_zero() && !b.is_zero());
    let negative = (a.is_negative() != b.is_negative()) && n % 2 == 1;
    if negative && m % 2 == 0 {
        return false;
    }
    obstructing_prime(a, b, m, n).is_none()
}

/// `l ∈ ℕ` with `aⁿ lᵐ = bⁿ`, if any.
pub fn is_power_in_n(a: &BigInt, b: &BigInt, m: i64, n: u64) -> Option<BigInt> {
    assert!(m != 0 && n > 0 && !a.is_zero() && !b.is_zero());
    let negative = (a.is_negative() != b.is_negative()) && n % 2 == 1;
    if negative {
        return None;
    }
    let mut l = BigInt::one();
    for p in primes_of(a, b) {
        let num = n as i64 * (valuation(b, p) - valuation(a, p));
        if num % m != 0 || num / m < 0 {
            return None;
        }
        l *= pow_big(&BigInt::from(p), (num / m) as u32);
    }
    // l^m = (b/a)^n holds by valuations; for even m this also fixes the sign
    Some(l)
}

/// Ambient domain for H-form decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "N")]
    Naturals,
    #[serde(rename = "Q")]
    Rationals,
}

/// Colors `k` by the residues of `n·ν_p(k) mod m`, one digit per prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationColoring {
    pub primes: Vec<u64>,
    pub n: u64,
    pub m: u64,
    pub permutation: Vec<usize>,
}

impl ValuationColoring {
    pub fn num_colors(&self) -> usize {
        (self.m as usize).pow(self.primes.len() as u32)
    }

    pub fn color(&self, k: &BigInt) -> usize {
        self.primes.iter().fold(0, |acc, &p| {
            let r = (self.n as i64 * valuation(k, p)).rem_euclid(self.m as i64) as usize;
            acc * self.m as usize + r
        })
    }

    /// Colors of `1..=n` (0-based color values).
    pub fn colors_up_to(&self, n: u64) -> Vec<usize> {
        (1..=n).map(|k| self.color(&BigInt::from(k))).collect()
    }
}

/// Witness for an H-form PR verdict: a factor `a·s − b·t` of `H` passing the power test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerCertificate {
    pub extraction: HFormExtraction,
    pub domain: Domain,
    #[serde(with = "serde_util::big")]
    pub a: BigInt,
    #[serde(with = "serde_util::big")]
    pub b: BigInt,
    pub m: i64,
    pub n: u64,
    #[serde(with = "serde_util::big_opt")]
    pub l: Option<BigInt>,
    #[serde(with = "serde_util::big_rows")]
    pub sample_solutions: Vec<Vec<BigInt>>,
}

impl PowerCertificate {
    /// Re-checks the factor, the power relation, and the samples against `p`.
    pub fn validate(&self, p: &Polynomial) -> Result<(), String> {
        if self.extraction.reassemble().as_ref() != Some(p) {
            return Err("extraction does not reassemble to P".into());
        }
        let u = Rational::new(self.b.clone(), self.a.clone());
        if !self.extraction.dehomogenized().eval(&u).is_zero() {
            return Err("b/a is not a root of H(u,1)".into());
        }
        if (self.m, self.n) != rho_parts(&self.extraction.rho) {
            return Err("m/n does not match ρ".into());
        }
        match &self.l {
            Some(l) => {
                let an = pow_big(&self.a, self.n as u32);
                let bn = pow_big(&self.b, self.n as u32);
                let lm = pow_big(l, self.m.unsigned_abs() as u32);
                let ok = if self.m > 0 {
                    an * lm == bn
                } else {
                    an == bn * lm
                };
                if !ok {
                    return Err("aⁿlᵐ ≠ bⁿ".into());
                }
            }
            None => {
                if !is_power_in_q(&self.a, &self.b, self.m, self.n) {
                    return Err("ratio is not a power in ℚ".into());
                }
            }
        }
        for x in &self.sample_solutions {
            if !p.eval(x).is_zero() {
                return Err(format!("sample {x:?} is not a solution"));
            }
        }
        Ok(())
    }
}

/// Solutions `x = y = l^c`, `z = l` of the permuted equation, mapped back.
fn power_samples(
    p: &Polynomial,
    ext: &HFormExtraction,
    l: &BigInt,
    count: u32,
) -> Vec<Vec<BigInt>> {
    (1..=count)
        .map(|c| {
            let v = pow_big(l, c);
            ext.unpermute(&[v.clone(), v, l.clone()])
        })
        .filter(|x| p.eval(x).is_zero())
        .collect()
}

/// Decides PR of `z^K H(x z^ρ, y) = 0` from the rational factors of `H`.
pub fn decide_hform_pr(p: &Polynomial, domain: Domain) -> Verdict {
    let ext = match has_complete_functional_structure(p) {
        Ok(Some(e)) => e,
        Ok(None) => return Verdict::unknown("no H-form structure under any permutation"),
        Err(e) => return Verdict::unknown(e.to_string()),
    };
    let (m, n) = rho_parts(&ext.rho);
    let roots = match rational_roots(&ext.dehomogenized()) {
        Ok(r) => r,
        Err(e) => return Verdict::unknown(e.to_string()),
    };
    let admissible: Vec<Rational> = roots
        .into_iter()
        .filter(|u| match domain {
            Domain::Naturals => u.is_positive(),
            Domain::Rationals => !u.is_zero(),
        })
        .collect();
    let cert = |a: BigInt, b: BigInt, l: Option<BigInt>, samples| PowerCertificate {
        extraction: ext.clone(),
        domain,
        a,
        b,
        m,
        n,
        l,
        sample_solutions: samples,
    };
    match domain {
        Domain::Naturals => {
            let mut hits: Vec<(BigInt, BigInt, BigInt)> = admissible
                .iter()
                .filter_map(|u| {
                    let (a, b) = (u.denom().clone(), u.numer().clone());
                    is_power_in_n(&a, &b, m, n).map(|l| (a, b, l))
                })
                .collect();
            hits.sort_by_key(|(_, _, l)| l.is_one());
            if let Some((a, b, l)) = hits.into_iter().next() {
                let samples = power_samples(p, &ext, &l, 3);
                return Verdict::proved(
                    Notion::Plain,
                    Certificate::Power(cert(a, b, Some(l), samples)),
                );
            }
        }
        Domain::Rationals => {
            if let Some(u) = admissible
                .iter()
                .find(|u| is_power_in_q(u.denom(), u.numer(), m, n))
            {
                return Verdict::proved(
                    Notion::Plain,
                    Certificate::Power(cert(
                        u.denom().clone(),
                        u.numer().clone(),
                        None,
                        Vec::new(),
                    )),
                );
            }
        }
    }
    // every rational factor fails the ℚ-power condition?
    let mut primes = BTreeSet::new();
    let mut sign_only = false;
    for u in &admissible {
        let (a, b) = (u.denom(), u.numer());
        if is_power_in_q(a, b, m, n) {
            return Verdict::unknown(format!(
                "ratio {} is a {}-power in ℚ but not in ℕ",
                fmt_rat(u),
                exponent_text(m, n)
            ));
        }
        match obstructing_prime(a, b, m, n) {
            Some(pr) => {
                primes.insert(pr);
            }
            None => sign_only = true,
        }
    }
    let detail = if admissible.is_empty() {
        "H(u,1) has no admissible rational root".to_string()
    } else {
        format!("no root of H(u,1) is a {}-power in ℚ", exponent_text(m, n))
    };
    let mut obstruction = Obstruction::new("H-form power condition", detail);
    if !sign_only {
        obstruction = obstruction.with_witness(ObstructionWitness::Valuation(ValuationColoring {
            primes: primes.into_iter().collect(),
            n,
            m: m.unsigned_abs(),
            permutation: ext.permutation.clone(),
        }));
    }
    Verdict::refuted(Notion::Plain, obstruction)
}

/// Which columns of the first three lie in `I_0` of the summary matrix certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    /// `I_0` meets the variable columns in another pattern (relabeling of the above).
    Other(Vec<usize>),
}

/// `P = H + ∑ Q_i` from a verified order-0 functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeVarDecomposition {
    pub case_tag: CaseTag,
    pub j0: Vec<MultiIndex>,
    /// Top-degree homogeneous part.
    pub h: PolyText,
    /// Remaining homogeneous parts by decreasing degree.
    pub q_parts: Vec<PolyText>,
    #[serde(with = "serde_util::rat_vec")]
    pub q_values: Vec<Rational>,
    /// A nonempty subset of `supp(H)` with zero coefficient sum.
    pub zero_sum: Option<Vec<MultiIndex>>,
}

impl ThreeVarDecomposition {
    pub fn passes(&self) -> bool {
        self.zero_sum.is_some()
    }
}

fn zero_sum_subset(h: &Polynomial) -> Option<Vec<MultiIndex>> {
    let terms: Vec<(&MultiIndex, &BigInt)> = h.terms().iter().collect();
    if terms.len() > 20 {
        return None;
    }
    (1u32..1 << terms.len()).find_map(|mask| {
        let sum: BigInt = (0..terms.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| terms[i].1.clone())
            .sum();
        sum.is_zero().then(|| {
            (0..terms.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| terms[i].0.clone())
                .collect()
        })
    })
}

/// Splits `P` into homogeneous parts and classifies a verified order-0 functional's certificate.
pub fn inhomogeneous_necessary_decompose(
    p: &Polynomial,
    vars: &[String],
    j0: &[MultiIndex],
    partition: &[Vec<usize>],
    q_values: &[Rational],
) -> Result<ThreeVarDecomposition, ThreeVarError> {
    check_input(p)?;
    let mut degrees: Vec<u64> = p.terms().keys().map(MultiIndex::degree).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    degrees.dedup();
    let h = p.homogeneous_component(degrees[0]);
    let q_parts = degrees[1..]
        .iter()
        .map(|&d| PolyText::new(&p.homogeneous_component(d), vars))
        .collect();
    let i0: Vec<usize> = partition
        .first()
        .map(|b| b.iter().copied().filter(|&c| c < 3).collect())
        .unwrap_or_default();
    let case_tag = match i0.as_slice() {
        [0] => CaseTag::Case1,
        [0, 1] => CaseTag::Case2,
        [0, 1, 2] => CaseTag::Case3,
        other => CaseTag::Other(other.to_vec()),
    };
    Ok(ThreeVarDecomposition {
        case_tag,
        j0: j0.to_vec(),
        zero_sum: zero_sum_subset(&h),
        h: PolyText::new(&h, vars),
        q_parts,
        q_values: q_values.to_vec(),
    })
}

/// Necessary condition for polynomials with only order-0 functionals: the
/// top-degree part must have a zero-sum set of coefficients.
pub fn check_inhomogeneous_necessary(
    p: &Polynomial,
    vars: &[String],
    bounds: &SearchBounds,
) -> Result<(Verdict, Vec<ThreeVarDecomposition>), ThreeVarError> {
    check_input(p)?;
    let out = search_functionals(p, vars, &[Direction::Upper], bounds)
        .map_err(|e| ThreeVarError::Search(e.to_string()))?;
    if out.families.iter().any(|f| f.order >= 1) {
        return Err(ThreeVarError::HigherOrder);
    }
    if !out.exhaustive() {
        return Ok((
            Verdict::unknown("functional search not exhaustive"),
            Vec::new(),
        ));
    }
    let mut decomps = Vec::new();
    for fam in &out.families {
        decomps.push(inhomogeneous_necessary_decompose(
            p,
            vars,
            &fam.blocks[0],
            &fam.partition,
            &fam.q,
        )?);
    }
    let verdict = if decomps.iter().any(ThreeVarDecomposition::passes) {
        Verdict::unknown("a decomposition satisfies the necessary condition")
    } else {
        Verdict::refuted(
            Notion::Infinite,
            Obstruction::new(
                "inhomogeneous three-variable necessary condition",
                if decomps.is_empty() {
                    "no verified upper functional exists".to_string()
                } else {
                    format!(
                        "top-degree part {} has no zero-sum set of coefficients",
                        decomps[0].h.text
                    )
                },
            ),
        )
    };
    Ok((verdict, decomps))
}

/// Integer `m`-th root helper for tests: `r` with `r^m = x`, if any.
pub fn integer_root(x: &BigInt, m: u32) -> Option<BigInt> {
    let r = x.abs().nth_root(m);
    let r = if x.is_negative() { -r } else { r };
    (pow_big(&r, m) == *x).then_some(r)
}

/// `m` or `m/n` for messages.
fn exponent_text(m: i64, n: u64) -> String {
    if n == 1 {
        m.to_string()
    } else {
        format!("{m}/{n}")
    }
}
