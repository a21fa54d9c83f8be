//! End-to-end analysis: decision routes in soundness order, oracle cross-checks,
//! corpus batches, and search-free certificate verification.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::{certify_pr_complete, maximal_rado_check, MrcStatus, TargetSet};
use crate::functionals::{
    search_functionals, validate_functional_certificate, Direction, SearchBounds,
};
use crate::linear_pr::{
    decide_inhomogeneous_pr, decide_linear_pr, decide_mixed_inhomogeneous, decide_mixed_strict,
    MixedSystem,
};
use crate::oracle::{
    avoid_coloring, constant_solution_up_to, enumerate_solutions, enumerate_system_solutions,
    filter_solutions, min_forcing_n, AvoidOutcome, Budget, Forcing, SolutionFilter,
};
use crate::polyalg::{
    parse_polynomial, parse_polynomial_auto, ParseError, Polynomial, Rational, RationalMatrix,
};
use crate::threevar::{check_inhomogeneous_necessary, decide_hform_pr, Domain};
use crate::verdict::{Certificate, Notion, Obstruction, ObstructionWitness, Status, Verdict};

/// Knobs for [`analyze_polynomial`] and [`analyze_system`].
#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub bounds: SearchBounds,
    pub q_samples: Vec<u64>,
    /// Colors used by the oracle cross-check.
    pub oracle_k: u8,
    /// Range `[1..N]` of the oracle cross-check.
    pub oracle_n: u64,
    /// Range used to corroborate a failed maximal Rado condition.
    pub mrc_oracle_n: u64,
    pub budget: Budget,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            bounds: SearchBounds::default(),
            q_samples: vec![2, 3, 4, 5, 7, 16],
            oracle_k: 2,
            oracle_n: 64,
            mrc_oracle_n: 40,
            budget: Budget {
                max_nodes: 5_000_000,
                time: None,
            },
        }
    }
}

/// Oracle agreement with a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "snake_case")]
pub enum CrossCheck {
    /// The finite search exhibits what the verdict predicts.
    Corroborated(String),
    /// Nothing found either way within range.
    Consistent(String),
    /// The finite search refutes the verdict.
    Contradicted(String),
    Skipped(String),
}

impl CrossCheck {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, CrossCheck::Contradicted(_))
    }
}

/// One analysed input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub route: String,
    pub verdict: Verdict,
    pub evidence: Vec<String>,
    pub oracle: CrossCheck,
    pub wall_ms: u64,
}

/// Parses with explicit variables, or alphabetical order when none are given.
pub fn parse_input(
    text: &str,
    vars: Option<&[String]>,
) -> Result<(Polynomial, Vec<String>), ParseError> {
    match vars {
        Some(v) => Ok((parse_polynomial(text, v)?, v.to_vec())),
        None => parse_polynomial_auto(text),
    }
}

/// `P = ∑ a_i x_i + c` as `(A, b)` with `A = [a]`, `b = [−c]`.
fn linear_system(p: &Polynomial) -> (RationalMatrix, Vec<Rational>) {
    let n = p.nvars();
    let mut row = vec![Rational::zero(); n];
    let mut c = BigInt::zero();
    for (a, v) in p.terms() {
        match a.0.iter().position(|&e| e == 1) {
            Some(i) => row[i] = Rational::from_integer(v.clone()),
            None => c = v.clone(),
        }
    }
    (
        RationalMatrix::from_rows(n, vec![row]).expect("shape"),
        vec![Rational::from_integer(-c)],
    )
}

/// Runs the decision routes in precedence order and returns the strongest verdict.
pub fn decide_polynomial(
    p: &Polynomial,
    vars: &[String],
    opts: &AnalyzeOptions,
) -> (String, Verdict, Vec<String>) {
    let mut evidence = Vec::new();
    if p.is_zero() {
        return (
            "trivial".into(),
            Verdict::unknown("zero polynomial"),
            evidence,
        );
    }
    if p.is_linear() {
        let (a, b) = linear_system(p);
        let v = if b[0].is_zero() {
            decide_linear_pr(&a)
        } else {
            decide_inhomogeneous_pr(&a, &b)
        };
        return ("linear".into(), v, evidence);
    }
    let three_inhomogeneous = p.nvars() == 3 && !p.is_homogeneous() && !p.has_constant_term();
    if three_inhomogeneous {
        let v = decide_hform_pr(p, Domain::Naturals);
        match v.status() {
            Status::Unknown => evidence.push(format!("H-form route: {}", v.summary())),
            _ => return ("threevar H-form".into(), v, evidence),
        }
    }
    match search_functionals(p, vars, &[Direction::Upper], &opts.bounds) {
        Ok(out) => {
            evidence.push(format!(
                "{} verified functional families ({} complete)",
                out.families.len(),
                out.complete_families().count()
            ));
            for fam in out.complete_families() {
                let s = if fam.sign == 0 { 1 } else { fam.sign as i64 };
                let Some(f) = fam.member(s) else { continue };
                let v = certify_pr_complete(p, vars, &f, &TargetSet::Naturals);
                if v.status() == Status::ProvedPR {
                    return ("complete functional".into(), v, evidence);
                }
                evidence.push(format!("complete functional {f}: {}", v.summary()));
            }
        }
        Err(e) => evidence.push(format!("functional search: {e}")),
    }
    if three_inhomogeneous {
        match check_inhomogeneous_necessary(p, vars, &opts.bounds) {
            Ok((v, _)) if v.status() == Status::ProvedNotPR => {
                return ("threevar necessary".into(), v, evidence)
            }
            Ok((v, _)) => evidence.push(format!("necessary condition: {}", v.summary())),
            Err(e) => evidence.push(format!("necessary condition not applicable: {e}")),
        }
    }
    let report = maximal_rado_check(p, &opts.q_samples, &opts.bounds);
    evidence.push(format!(
        "maximal Rado condition: {:?} ({})",
        report.status, report.detail
    ));
    if report.status == MrcStatus::Fails {
        // recorded as evidence; promoted only when the oracle agrees
        if let Ok(sols) = enumerate_solutions(p, opts.mrc_oracle_n) {
            if let AvoidOutcome::Found(w) =
                avoid_coloring(&sols, opts.oracle_k, opts.mrc_oracle_n, opts.budget)
            {
                let v = Verdict::refuted(
                    Notion::Infinite,
                    Obstruction::new("maximal Rado condition", report.detail.clone())
                        .with_witness(ObstructionWitness::Coloring(w)),
                );
                return ("maximal Rado condition".into(), v, evidence);
            }
        }
        evidence.push("maximal Rado failure not corroborated by the oracle".into());
    }
    (
        "none".into(),
        Verdict::unknown("no route decided the equation"),
        evidence,
    )
}

/// Decides a mixed equality/inequality system.
pub fn decide_system(sys: &MixedSystem) -> (String, Verdict) {
    let rows = sys.inequality_rows();
    if rows.is_empty() {
        let v = if sys.is_homogeneous() {
            decide_linear_pr(&sys.a)
        } else {
            decide_inhomogeneous_pr(&sys.a, &sys.d)
        };
        return ("linear".into(), v);
    }
    if sys.is_homogeneous() {
        (
            "mixed homogeneous".into(),
            decide_mixed_strict(&sys.a, &rows),
        )
    } else {
        (
            "mixed inhomogeneous".into(),
            decide_mixed_inhomogeneous(sys),
        )
    }
}

fn cross_check_solutions(
    verdict: &Verdict,
    sols: &[Vec<u64>],
    constant: Option<u64>,
    opts: &AnalyzeOptions,
) -> CrossCheck {
    let n = opts.oracle_n;
    let k = opts.oracle_k;
    match verdict {
        Verdict::Unknown { .. } => CrossCheck::Skipped("no verdict to check".into()),
        Verdict::ProvedPR { .. } => match min_forcing_n(|_| sols.to_vec(), k, n, opts.budget) {
            Forcing::At(m) => CrossCheck::Corroborated(format!(
                "every {k}-coloring of [1..{m}] has a monochromatic solution"
            )),
            Forcing::NotWithin => {
                CrossCheck::Contradicted(format!("a {k}-coloring of [1..{n}] avoids all solutions"))
            }
            Forcing::BudgetExceeded(m) => {
                CrossCheck::Skipped(format!("search budget exceeded at N={m}"))
            }
        },
        Verdict::ProvedNotPR {
            notion,
            obstruction,
        } => {
            if let Some(ObstructionWitness::Coloring(w)) = &obstruction.witness {
                if let Some(x) = w.monochromatic(sols) {
                    return CrossCheck::Contradicted(format!(
                        "witness coloring has monochromatic solution {x:?}"
                    ));
                }
            }
            if let Some(ObstructionWitness::Valuation(c)) = &obstruction.witness {
                if let Some(x) = sols.iter().find(|x| {
                    let c0 = c.color(&BigInt::from(x[0]));
                    x.iter().all(|&v| c.color(&BigInt::from(v)) == c0)
                }) {
                    return CrossCheck::Contradicted(format!(
                        "valuation coloring has monochromatic solution {x:?}"
                    ));
                }
            }
            match (notion, constant) {
                (Notion::Plain, Some(s)) => {
                    return CrossCheck::Contradicted(format!(
                        "constant solution ({s}, …, {s}) is monochromatic"
                    ))
                }
                (Notion::Infinite, _) => {
                    let nonconstant = filter_solutions(sols.to_vec(), SolutionFilter::NonConstant);
                    return match avoid_coloring(&nonconstant, k, n, opts.budget) {
                        AvoidOutcome::Found(_) => CrossCheck::Corroborated(format!(
                            "a {k}-coloring of [1..{n}] avoids all non-constant solutions"
                        )),
                        AvoidOutcome::None => CrossCheck::Consistent(format!(
                            "{k} colors do not suffice on [1..{n}]; more colors may"
                        )),
                        AvoidOutcome::BudgetExceeded => {
                            CrossCheck::Skipped("search budget exceeded".into())
                        }
                    };
                }
                _ => {}
            }
            match avoid_coloring(sols, k, n, opts.budget) {
                AvoidOutcome::Found(_) => CrossCheck::Corroborated(format!(
                    "a {k}-coloring of [1..{n}] avoids all solutions"
                )),
                AvoidOutcome::None => CrossCheck::Consistent(format!(
                    "{k} colors do not suffice on [1..{n}]; more colors may"
                )),
                AvoidOutcome::BudgetExceeded => {
                    CrossCheck::Skipped("search budget exceeded".into())
                }
            }
        }
    }
}

/// Oracle cross-check of a polynomial verdict on `[1..oracle_n]`.
pub fn cross_check_polynomial(
    p: &Polynomial,
    verdict: &Verdict,
    opts: &AnalyzeOptions,
) -> CrossCheck {
    match enumerate_solutions(p, opts.oracle_n) {
        Ok(sols) => cross_check_solutions(
            verdict,
            &sols,
            constant_solution_up_to(p, opts.oracle_n),
            opts,
        ),
        Err(e) => CrossCheck::Skipped(e.to_string()),
    }
}

/// Oracle cross-check of a system verdict.
pub fn cross_check_system(
    sys: &MixedSystem,
    verdict: &Verdict,
    opts: &AnalyzeOptions,
) -> CrossCheck {
    let n = match sys.ncols() {
        0..=3 => opts.oracle_n,
        4 => opts.oracle_n.min(30),
        _ => opts.oracle_n.min(12),
    };
    let opts = AnalyzeOptions {
        oracle_n: n,
        ..opts.clone()
    };
    match enumerate_system_solutions(sys, n, 0) {
        Ok(sols) => {
            let constant = sols
                .iter()
                .find(|x| x.iter().all(|&v| v == x[0]))
                .map(|x| x[0]);
            cross_check_solutions(verdict, &sols, constant, &opts)
        }
        Err(e) => CrossCheck::Skipped(e.to_string()),
    }
}

/// Full pipeline for one polynomial.
pub fn analyze_polynomial(
    text: &str,
    vars: Option<&[String]>,
    opts: &AnalyzeOptions,
) -> Result<Report, ParseError> {
    let start = Instant::now();
    let (p, vars) = parse_input(text, vars)?;
    let (route, verdict, evidence) = decide_polynomial(&p, &vars, opts);
    let oracle = cross_check_polynomial(&p, &verdict, opts);
    Ok(Report {
        input: text.to_string(),
        route,
        verdict,
        evidence,
        oracle,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Full pipeline for one mixed system.
pub fn analyze_system(sys: &MixedSystem, opts: &AnalyzeOptions) -> Report {
    let start = Instant::now();
    let (route, verdict) = decide_system(sys);
    let oracle = cross_check_system(sys, &verdict, opts);
    Report {
        input: serde_json::to_string(sys).expect("serializable"),
        route,
        verdict,
        evidence: Vec::new(),
        oracle,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

/// The 12-entry reference corpus.
pub const SHIPPED_CORPUS: &str = include_str!("../../data/corpus.jsonl");

/// Expected outcome of a corpus entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub status: Status,
    /// Where the expectation comes from.
    pub source: String,
}

/// One line of a corpus file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<MixedSystem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {msg}")]
    Schema { line: usize, msg: String },
}

/// Parses a JSON-lines corpus; blank lines and `#` comments are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let e: CorpusEntry = serde_json::from_str(t).map_err(|e| CorpusError::Schema {
            line: i + 1,
            msg: e.to_string(),
        })?;
        if e.poly.is_some() == e.system.is_some() {
            return Err(CorpusError::Schema {
                line: i + 1,
                msg: "exactly one of `poly` and `system` is required".into(),
            });
        }
        out.push(e);
    }
    Ok(out)
}

/// Batch result for one entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRecord {
    pub id: String,
    pub report: Option<Report>,
    pub error: Option<String>,
    pub expected: Option<Expected>,
    /// `None` without an expectation.
    pub matches: Option<bool>,
}

/// Analyses every entry (in parallel, output in input order).
pub fn run_batch(entries: &[CorpusEntry], opts: &AnalyzeOptions) -> Vec<BatchRecord> {
    entries
        .par_iter()
        .map(|e| {
            let result = match (&e.poly, &e.system) {
                (Some(text), _) => {
                    analyze_polynomial(text, e.vars.as_deref(), opts).map_err(|err| err.to_string())
                }
                (None, Some(sys)) => Ok(analyze_system(sys, opts)),
                (None, None) => Err("entry has no input".to_string()),
            };
            let (report, error) = match result {
                Ok(r) => (Some(r), None),
                Err(msg) => (None, Some(msg)),
            };
            let matches = e.expected.as_ref().map(|x| {
                report
                    .as_ref()
                    .is_some_and(|r| r.verdict.status() == x.status)
            });
            BatchRecord {
                id: e.id.clone(),
                report,
                error,
                expected: e.expected.clone(),
                matches,
            }
        })
        .collect()
}

/// Re-checks a certificate without any search.
pub fn verify_certificate(c: &Certificate) -> Result<(), String> {
    match c {
        Certificate::Columns { matrix, columns } => {
            columns.validate(matrix).map_err(|e| e.to_string())
        }
        Certificate::ConstantSolution {
            matrix,
            b,
            s,
            clause,
            columns,
        } => {
            let ones = vec![Rational::from_integer(s.clone()); matrix.cols()];
            if matrix.mul_vec(&ones).map_err(|e| e.to_string())? != *b {
                return Err("A(s,…,s) ≠ b".into());
            }
            match (clause, columns) {
                (1, _) if s > &BigInt::zero() => Ok(()),
                (1, _) => Err("clause 1 needs a natural constant".into()),
                (2, Some(cc)) => cc.validate(matrix).map_err(|e| e.to_string()),
                (2, None) => Err("clause 2 needs a columns certificate".into()),
                _ => Err(format!("unknown clause {clause}")),
            }
        }
        Certificate::Mixed(m) => m.validate().map_err(|e| e.to_string()),
        Certificate::Functional(f) => validate_functional_certificate(f),
        Certificate::CompleteRoot(r) => r.validate(),
        Certificate::Power(pc) => {
            let p = pc
                .extraction
                .reassemble()
                .ok_or("extraction does not expand")?;
            pc.validate(&p)
        }
    }
}
