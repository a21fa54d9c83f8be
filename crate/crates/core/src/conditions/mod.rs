//! The maximal Rado condition, `Q` polynomials of functionals, and partition
//! regularity certificates from complete functionals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::functionals::{
    build_functional_system, degree_scale, search_functionals, verify_functional_detailed,
    Direction, FunctionalCertificate, FunctionalCheck, FunctionalFamily, RadoFunctional,
    SearchBounds,
};
use crate::polyalg::arith::{as_integer, pow_big, pow_rat};
use crate::polyalg::univariate::root_upper_bound;
use crate::polyalg::{
    count_roots_between, rational_roots, Bound, MultiIndex, Polynomial, Rational, UnivariatePoly,
};
use crate::serde_util;
use crate::verdict::{Certificate, Notion, Obstruction, Verdict};

/// Errors from the `Q` builders.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("functional is not verified: {0}")]
    NotVerified(String),
    #[error("functional is not complete (order must equal the last block index)")]
    NotComplete,
    #[error("q must be at least 2")]
    BadQ,
}

/// How a `Q` polynomial was formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QForm {
    /// Order 0: `∑_{J_0} c_α w^{|α|}`, independent of `q`.
    OrderZero,
    /// `∑_{i≤m} q^{d_i} ∑_{J_i} c_α w^{|α|}` at a fixed `q`.
    AtQ,
    /// `∑_i c̄_i w^{d_i}` of a complete functional.
    Complete,
}

/// Univariate polynomial attached to a functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QPolynomial {
    pub poly: UnivariatePoly,
    pub functional: RadoFunctional,
    pub form: QForm,
    pub q: Option<u64>,
}

fn increment(f: &RadoFunctional, i: usize) -> u32 {
    if i < f.order {
        f.increments[i].to_u32().expect("increment fits u32")
    } else {
        0
    }
}

fn add_term(coeffs: &mut Vec<Rational>, k: usize, c: Rational) {
    if coeffs.len() <= k {
        coeffs.resize(k + 1, Rational::zero());
    }
    coeffs[k] += c;
}

/// `Q_{J,q}(w)` of a verified functional.
pub fn q_polynomial(p: &Polynomial, f: &RadoFunctional, q: u64) -> Result<QPolynomial, QError> {
    if q < 2 {
        return Err(QError::BadQ);
    }
    let vars = crate::polyalg::default_var_names(p.nvars());
    match verify_functional_detailed(f, p, &vars) {
        FunctionalCheck::Verified(_) => {}
        FunctionalCheck::Rejected(_, why) | FunctionalCheck::Undecided(why) => {
            return Err(QError::NotVerified(why))
        }
    }
    let mut coeffs = Vec::new();
    for i in 0..=f.order {
        let weight = pow_big(&BigInt::from(q), increment(f, i));
        for a in &f.blocks[i] {
            add_term(
                &mut coeffs,
                a.degree() as usize,
                Rational::from_integer(p.coeff(a) * &weight),
            );
        }
    }
    Ok(QPolynomial {
        poly: UnivariatePoly::new(coeffs),
        functional: f.clone(),
        form: if f.order == 0 {
            QForm::OrderZero
        } else {
            QForm::AtQ
        },
        q: if f.order == 0 { None } else { Some(q) },
    })
}

fn complete_q_with(
    f: &RadoFunctional,
    coeff: impl Fn(&MultiIndex) -> Rational,
) -> Result<UnivariatePoly, QError> {
    if !f.is_complete() {
        return Err(QError::NotComplete);
    }
    let mut coeffs = Vec::new();
    for (i, block) in f.blocks.iter().enumerate() {
        let cbar: Rational = block.iter().map(&coeff).sum();
        add_term(&mut coeffs, increment(f, i) as usize, cbar);
    }
    Ok(UnivariatePoly::new(coeffs))
}

/// `Q_{P,J}(w) = ∑ c̄_i w^{d_i}` for a complete functional (`d_l = 0`).
pub fn complete_q_polynomial(p: &Polynomial, f: &RadoFunctional) -> Result<QPolynomial, QError> {
    let poly = complete_q_with(f, |a| Rational::from_integer(p.coeff(a)))?;
    Ok(QPolynomial {
        poly,
        functional: f.clone(),
        form: QForm::Complete,
        q: None,
    })
}

/// Polynomial with rational coefficients, produced by [`scale_polynomial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPolynomial {
    pub nvars: usize,
    pub terms: BTreeMap<MultiIndex, Rational>,
}

impl ScaledPolynomial {
    pub fn coeff(&self, a: &MultiIndex) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(a, c)| {
                a.0.iter().zip(x).fold(c.clone(), |acc, (&e, xi)| {
                    acc * pow_rat(xi, e as i64).expect("nonzero base")
                })
            })
            .sum()
    }
}

/// `P(x / b^s)`: the coefficient of `α` becomes `c_α · b^{−s|α|}`.
pub fn scale_polynomial(p: &Polynomial, b: &BigInt, s: i64) -> ScaledPolynomial {
    assert!(!b.is_zero(), "scale base must be nonzero");
    let base = Rational::from_integer(b.clone());
    let terms = p
        .terms()
        .iter()
        .map(|(a, c)| {
            let k = -s * a.degree() as i64;
            (
                a.clone(),
                Rational::from_integer(c.clone()) * pow_rat(&base, k).expect("nonzero"),
            )
        })
        .collect();
    ScaledPolynomial {
        nvars: p.nvars(),
        terms,
    }
}

/// `Q_{P̃,J}` for a scaled polynomial and a complete functional.
pub fn complete_q_scaled(
    p: &ScaledPolynomial,
    f: &RadoFunctional,
) -> Result<UnivariatePoly, QError> {
    complete_q_with(f, |a| p.coeff(a))
}

/// Checks `b^{s·L} · Q_{P̃,J}(a) = Q_{P,J}(a/b)` where `L` is the degree of the
/// block with zero increment and `s` ties increments to degrees.
pub fn scaling_identity_holds(
    p: &Polynomial,
    f: &RadoFunctional,
    a: &BigInt,
    b: &BigInt,
) -> Result<bool, QError> {
    let s = degree_scale(f).ok_or(QError::NotComplete)?;
    let s = s.to_i64().ok_or(QError::NotComplete)?;
    let scaled = scale_polynomial(p, b, s);
    let qt = complete_q_scaled(&scaled, f)?;
    let q = complete_q_polynomial(p, f)?.poly;
    let l = f.base_degree(f.last()) as i64;
    let bb = Rational::from_integer(b.clone());
    let lhs = pow_rat(&bb, s * l).expect("nonzero") * qt.eval(&Rational::from_integer(a.clone()));
    let rhs = q.eval(&Rational::new(a.clone(), b.clone()));
    Ok(lhs == rhs)
}

/// Outcome of the maximal Rado condition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MrcStatus {
    Holds,
    Fails,
    Unknown,
}

/// Per-`q` coverage in a maximal Rado report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSample {
    pub q: u64,
    pub covered: bool,
}

/// Result of [`maximal_rado_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalRadoReport {
    pub status: MrcStatus,
    /// Smallest uncovered `q` when the condition fails.
    pub witness_q: Option<u64>,
    pub detail: String,
    /// Distinct order-0 polynomials `∑_{J_0} c_α w^{|α|}`.
    pub order_zero: Vec<UnivariatePoly>,
    /// `T(y) = ∑_{i≤m} c̄_i y^{L_i}` with the sign of the family parameter.
    pub pinned: Vec<(i8, UnivariatePoly)>,
    pub samples: Vec<QSample>,
    pub families_checked: usize,
}

impl MaximalRadoReport {
    fn unknown(detail: impl Into<String>) -> Self {
        MaximalRadoReport {
            status: MrcStatus::Unknown,
            witness_q: None,
            detail: detail.into(),
            order_zero: Vec::new(),
            pinned: Vec::new(),
            samples: Vec::new(),
            families_checked: 0,
        }
    }
}

fn roots_in(q: &UnivariatePoly, lo: Bound, hi: Bound) -> bool {
    q.is_zero()
        || count_roots_between(q, &lo, &hi)
            .map(|n| n > 0)
            .unwrap_or(false)
}

fn at(n: u64) -> Bound {
    Bound::At(Rational::from_integer(n.into()))
}

/// Largest integer `k ≥ 2` with a root of `t` in `[k, ∞)`, if any.
fn largest_covered(t: &UnivariatePoly) -> Option<u64> {
    if !roots_in(t, at(2), Bound::PosInfinity) {
        return None;
    }
    let mut lo = 2u64;
    let mut hi = root_upper_bound(t).to_u64().unwrap_or(u64::MAX / 2).max(3);
    // invariant: root in [lo, ∞), none in [hi, ∞)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if roots_in(t, at(mid), Bound::PosInfinity) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

fn pinned_t(p: &Polynomial, fam: &FunctionalFamily) -> UnivariatePoly {
    let mut coeffs = Vec::new();
    for block in &fam.blocks[..=fam.order] {
        for a in block {
            add_term(
                &mut coeffs,
                a.degree() as usize,
                Rational::from_integer(p.coeff(a)),
            );
        }
    }
    UnivariatePoly::new(coeffs)
}

struct Coverage {
    order_zero: Vec<UnivariatePoly>,
    positive: Vec<UnivariatePoly>,
    negative: Vec<UnivariatePoly>,
}

impl Coverage {
    /// Some upper functional has `Q_{J,q}` with a real root in `[1, q]`.
    ///
    /// For a family with `d_i = s(L_i − L_m)`, `Q_{J,q}(w) = q^{−sL_m} T(q^s w)`, so
    /// the root condition is a root of `T` in `[q^s, q^{s+1}]`; over all `s ≥ 1`
    /// that is a root in `[q, ∞)`, over all `s ≤ −1` a root in `(0, 1]`.
    fn covered(&self, q: u64) -> bool {
        self.order_zero.iter().any(|z| roots_in(z, at(1), at(q)))
            || self
                .positive
                .iter()
                .any(|t| roots_in(t, at(q), Bound::PosInfinity))
            || self.negative.iter().any(|t| {
                t.is_zero()
                    || count_roots_between(t, &Bound::At(Rational::zero()), &at(1))
                        .map(|n| n > usize::from(t.eval(&Rational::zero()).is_zero()))
                        .unwrap_or(false)
            })
    }
}

/// Decides the maximal Rado condition exactly over the enumerated upper functionals.
///
/// `Unknown` when the functional search is not exhaustive. `q_samples` only
/// populate the per-`q` table of the report.
pub fn maximal_rado_check(
    p: &Polynomial,
    q_samples: &[u64],
    bounds: &SearchBounds,
) -> MaximalRadoReport {
    let vars = crate::polyalg::default_var_names(p.nvars());
    let out = match search_functionals(p, &vars, &[Direction::Upper], bounds) {
        Ok(o) => o,
        Err(e) => return MaximalRadoReport::unknown(e.to_string()),
    };
    let mut cov = Coverage {
        order_zero: Vec::new(),
        positive: Vec::new(),
        negative: Vec::new(),
    };
    let mut pinned = Vec::new();
    for fam in &out.families {
        let t = pinned_t(p, fam);
        match fam.sign {
            0 => {
                if !cov.order_zero.contains(&t) {
                    cov.order_zero.push(t);
                }
            }
            1 => {
                pinned.push((1, t.clone()));
                cov.positive.push(t);
            }
            _ => {
                pinned.push((-1, t.clone()));
                cov.negative.push(t);
            }
        }
    }
    let samples = q_samples
        .iter()
        .filter(|&&q| q >= 2)
        .map(|&q| QSample {
            q,
            covered: cov.covered(q),
        })
        .collect();
    let mut report = MaximalRadoReport {
        status: MrcStatus::Unknown,
        witness_q: None,
        detail: String::new(),
        order_zero: cov.order_zero.clone(),
        pinned,
        samples,
        families_checked: out.families.len(),
    };
    if !out.exhaustive() {
        report.detail = format!(
            "functional search not exhaustive ({} undecided, truncated: {})",
            out.undecided, out.truncated
        );
        return report;
    }
    // beyond every positive-family root only order-0 and negative families remain,
    // and their coverage is monotone in q
    let q_star = cov
        .positive
        .iter()
        .filter(|t| !t.is_zero())
        .filter_map(largest_covered)
        .max()
        .map_or(2, |k| k + 1);
    if cov.positive.iter().any(UnivariatePoly::is_zero) || cov.covered(q_star) {
        report.status = MrcStatus::Holds;
        report.detail = if cov.order_zero.iter().any(UnivariatePoly::is_zero) {
            "an order-0 functional has Q identically zero".into()
        } else {
            format!("every q ≥ 2 is covered (checked exactly; threshold {q_star})")
        };
    } else {
        report.status = MrcStatus::Fails;
        report.witness_q = Some(q_star);
        report.detail =
            format!("no upper functional has Q_{{J,{q_star}}} with a root in [1,{q_star}]");
    }
    report
}

/// Necessary-condition verdict from a report: `Fails` refutes infinite regularity.
pub fn maximal_rado_verdict(report: &MaximalRadoReport) -> Verdict {
    match report.status {
        MrcStatus::Fails => Verdict::refuted(
            Notion::Infinite,
            Obstruction::new("maximal Rado condition", report.detail.clone()),
        ),
        MrcStatus::Holds => {
            Verdict::unknown(format!("maximal Rado condition holds: {}", report.detail))
        }
        MrcStatus::Unknown => Verdict::unknown(report.detail.clone()),
    }
}

/// Ambient set for complete-functional certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "set", rename_all = "snake_case")]
pub enum TargetSet {
    Naturals,
    /// `{l^k : k ≥ 1}`.
    PowersOf {
        #[serde(with = "serde_util::big")]
        l: BigInt,
    },
}

impl TargetSet {
    pub fn contains(&self, x: &BigInt) -> bool {
        match self {
            TargetSet::Naturals => x.is_positive(),
            TargetSet::PowersOf { l } => {
                if l.abs() <= BigInt::one() {
                    return x == l;
                }
                let mut v = l.clone();
                while v.abs() <= x.abs() {
                    if &v == x {
                        return true;
                    }
                    v *= l;
                }
                false
            }
        }
    }

    fn default_element(&self) -> BigInt {
        match self {
            TargetSet::Naturals => BigInt::from(2),
            TargetSet::PowersOf { l } => l.clone(),
        }
    }
}

/// Root of a complete functional's `Q` plus exact sample solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PRCertificate {
    pub functional: FunctionalCertificate,
    pub q: UnivariatePoly,
    #[serde(with = "serde_util::big")]
    pub root: BigInt,
    pub set: TargetSet,
    #[serde(with = "serde_util::big_rows")]
    pub sample_solutions: Vec<Vec<BigInt>>,
}

impl PRCertificate {
    /// Re-checks the functional, the root, and each sample solution.
    pub fn validate(&self) -> Result<(), String> {
        crate::functionals::validate_functional_certificate(&self.functional)?;
        let p = self.functional.poly.parse().map_err(|e| e.to_string())?;
        let q =
            complete_q_polynomial(&p, &self.functional.functional).map_err(|e| e.to_string())?;
        if q.poly != self.q {
            return Err("recorded Q does not match the functional".into());
        }
        if !self
            .q
            .eval(&Rational::from_integer(self.root.clone()))
            .is_zero()
        {
            return Err("recorded root is not a root of Q".into());
        }
        if !self.set.contains(&self.root) {
            return Err("root is outside the target set".into());
        }
        for x in &self.sample_solutions {
            if !p.eval(x).is_zero() {
                return Err(format!("sample {x:?} is not a solution"));
            }
            if !x.iter().all(|v| {
                TargetSet::PowersOf {
                    l: self.root.clone(),
                }
                .contains(v)
                    || (self.root.is_one() && v.is_one())
            }) {
                return Err(format!("sample {x:?} is not built from powers of the root"));
            }
        }
        Ok(())
    }
}

/// Solutions from [`generate_solutions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionBatch {
    pub solutions: Vec<Vec<BigInt>>,
    /// The search ran out before `count` solutions were found.
    pub exhausted: bool,
}

const MAX_EXTRA_SUM: i64 = 48;
const MAX_EVALUATIONS: usize = 2_000_000;

fn compositions(
    total: i64,
    parts: usize,
    cur: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if parts == 1 {
        cur.push(total);
        let stop = visit(cur);
        cur.pop();
        return stop;
    }
    for first in 1..=total - (parts as i64 - 1) {
        cur.push(first);
        let stop = compositions(total - first, parts - 1, cur, visit);
        cur.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Solutions `x_i = s^{u_i}` with `u ≥ 1` solving `Â u = b̂`, ordered by `∑u` then lexicographically.
pub fn generate_solutions(
    p: &Polynomial,
    f: &RadoFunctional,
    s: &BigInt,
    count: usize,
) -> Result<SolutionBatch, QError> {
    let mats = build_functional_system(f, p).map_err(|e| QError::NotVerified(e.to_string()))?;
    let rows: Vec<Vec<i64>> = mats
        .a_hat
        .row_vecs()
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|x| as_integer(x).and_then(|v| v.to_i64()).expect("integer row"))
                .collect()
        })
        .collect();
    let rhs: Vec<i64> = mats
        .b_hat
        .iter()
        .map(|b| b.to_i64().expect("small increment"))
        .collect();
    let n = p.nvars();
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    let mut evaluations = 0usize;
    for total in n as i64..=n as i64 + MAX_EXTRA_SUM {
        let stop = compositions(total, n, &mut Vec::with_capacity(n), &mut |u| {
            evaluations += 1;
            let ok = rows
                .iter()
                .zip(&rhs)
                .all(|(r, b)| r.iter().zip(u).map(|(a, x)| a * x).sum::<i64>() == *b);
            if ok {
                let x: Vec<BigInt> = u.iter().map(|&k| pow_big(s, k as u32)).collect();
                if p.eval(&x).is_zero() && !found.contains(&x) {
                    found.push(x);
                }
            }
            found.len() >= count || evaluations >= MAX_EVALUATIONS
        });
        if stop {
            break;
        }
    }
    Ok(SolutionBatch {
        exhausted: found.len() < count,
        solutions: found,
    })
}

/// Certifies PR from a complete functional whose `Q` has an integer root in the target set.
/// Never refutes.
pub fn certify_pr_complete(
    p: &Polynomial,
    vars: &[String],
    f: &RadoFunctional,
    set: &TargetSet,
) -> Verdict {
    if !f.is_complete() {
        return Verdict::unknown("functional is not complete");
    }
    let fc = match verify_functional_detailed(f, p, vars) {
        FunctionalCheck::Verified(c) => *c,
        FunctionalCheck::Rejected(_, why) | FunctionalCheck::Undecided(why) => {
            return Verdict::unknown(format!("functional not verified: {why}"))
        }
    };
    let q = complete_q_polynomial(p, f).expect("complete").poly;
    let root = if q.is_zero() {
        Some(set.default_element())
    } else {
        let roots = match rational_roots(&q) {
            Ok(r) => r,
            Err(e) => return Verdict::unknown(e.to_string()),
        };
        let ints: Vec<BigInt> = roots
            .iter()
            .filter_map(as_integer)
            .filter(|r| set.contains(r))
            .collect();
        ints.iter()
            .find(|r| *r >= &BigInt::from(2))
            .or_else(|| ints.first())
            .cloned()
    };
    let Some(root) = root else {
        return Verdict::unknown("Q has no integer root in the target set");
    };
    let batch = match generate_solutions(p, f, &root, 3) {
        Ok(b) => b,
        Err(e) => return Verdict::unknown(e.to_string()),
    };
    Verdict::proved(
        Notion::Plain,
        Certificate::CompleteRoot(PRCertificate {
            functional: fc,
            q,
            root,
            set: set.clone(),
            sample_solutions: batch.solutions,
        }),
    )
}

/// `ν_s(x)` for `x` a power of `s ≥ 2`.
pub fn power_exponent(x: &BigInt, s: &BigInt) -> Option<u32> {
    if s <= &BigInt::one() || !x.is_positive() {
        return None;
    }
    let mut k = 0;
    let mut v = x.clone();
    while v.is_multiple_of(s) {
        v /= s;
        k += 1;
    }
    v.is_one().then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{default_var_names, parse_polynomial};
    use crate::verdict::Status;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, &default_var_names(3)).unwrap()
    }

    #[test]
    fn q_polynomial_examples() {
        let p = poly("x^3 + y^3 - z^3");
        let f = RadoFunctional::upper(&[&[&[3, 0, 0], &[0, 0, 3]], &[&[0, 3, 0]]], &[]);
        for q in [2, 3, 16] {
            assert!(q_polynomial(&p, &f, q).unwrap().poly.is_zero());
        }
        let p = poly("x + y - z");
        let f = RadoFunctional::upper(&[&[&[1, 0, 0], &[0, 1, 0]], &[&[0, 0, 1]]], &[]);
        assert_eq!(
            q_polynomial(&p, &f, 5).unwrap().poly,
            UnivariatePoly::from_i64(&[0, 2])
        );
    }

    #[test]
    fn complete_q_examples() {
        let p = poly("x*z^2 - 4*y");
        let f = RadoFunctional::upper(&[&[&[1, 0, 2]], &[&[0, 1, 0]]], &[2]);
        assert_eq!(
            complete_q_polynomial(&p, &f).unwrap().poly,
            UnivariatePoly::from_i64(&[-4, 0, 1])
        );
        let p = poly("x*y^2 - 2*z");
        let f = RadoFunctional::upper(&[&[&[0, 0, 1]], &[&[1, 2, 0]]], &[2]);
        assert_eq!(
            complete_q_polynomial(&p, &f).unwrap().poly,
            UnivariatePoly::from_i64(&[1, 0, -2])
        );
    }

    #[test]
    fn certify_examples() {
        let vars = default_var_names(3);
        let p = poly("x*z^2 - 4*y");
        let f = RadoFunctional::upper(&[&[&[1, 0, 2]], &[&[0, 1, 0]]], &[2]);
        let v = certify_pr_complete(&p, &vars, &f, &TargetSet::Naturals);
        let Some(Certificate::CompleteRoot(c)) = v.certificate() else {
            panic!("{v:?}")
        };
        assert_eq!(c.root, BigInt::from(2));
        assert!(c.sample_solutions.len() >= 3);
        c.validate().unwrap();
        let p = poly("x*y^2 - 2*z");
        let f = RadoFunctional::upper(&[&[&[0, 0, 1]], &[&[1, 2, 0]]], &[2]);
        assert_eq!(
            certify_pr_complete(&p, &vars, &f, &TargetSet::Naturals).status(),
            Status::Unknown
        );
    }

    #[test]
    fn generated_solutions() {
        let p = poly("x*z^2 - 4*y");
        let f = RadoFunctional::upper(&[&[&[1, 0, 2]], &[&[0, 1, 0]]], &[2]);
        let b = generate_solutions(&p, &f, &BigInt::from(2), 5).unwrap();
        assert!(!b.exhausted);
        let want: Vec<BigInt> = [4, 4, 2].iter().map(|&x| BigInt::from(x)).collect();
        assert!(b.solutions.contains(&want));
    }

    #[test]
    fn scaling() {
        let p = poly("x*z^2 - 4*y");
        let sp = scale_polynomial(&p, &BigInt::from(2), 1);
        assert_eq!(
            sp.coeff(&MultiIndex(vec![1, 0, 2])),
            crate::polyalg::ratio(1, 8)
        );
        assert_eq!(
            sp.coeff(&MultiIndex(vec![0, 1, 0])),
            crate::polyalg::rat(-2)
        );
        let f = RadoFunctional::upper(&[&[&[1, 0, 2]], &[&[0, 1, 0]]], &[2]);
        assert!(scaling_identity_holds(&p, &f, &BigInt::from(3), &BigInt::from(5)).unwrap());
    }

    #[test]
    fn maximal_rado_examples() {
        let b = SearchBounds::default();
        let samples = [2, 3, 4, 5, 7, 16];
        let r = maximal_rado_check(&poly("x^3 + y^3 - z^3"), &samples, &b);
        assert_eq!(r.status, MrcStatus::Holds);
        assert!(r.order_zero.iter().any(UnivariatePoly::is_zero));
        assert_eq!(
            maximal_rado_check(&poly("x + y - z"), &samples, &b).status,
            MrcStatus::Holds
        );
        let r = maximal_rado_check(&poly("x + y - z^2"), &samples, &b);
        assert_eq!(r.status, MrcStatus::Fails);
        assert_eq!(r.witness_q, Some(2));
        assert!(r.samples.iter().all(|s| !s.covered));
    }
}
