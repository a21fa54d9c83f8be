//! Partition regularity of linear systems: columns condition, constant solutions,
//! infinite regularity, and systems with strict or unbounded inequalities.

mod columns;
mod mixed;
pub mod positive;

pub use columns::{columns_condition, CertificateError, ColumnsCertificate};
pub(crate) use columns::{CcOutcome, CcProblem, Col};
pub use mixed::{
    augmented_matrix, decide_mixed_inhomogeneous, decide_mixed_strict, decide_mixed_unbounded,
    MixedBranch, MixedCertificate, MixedSystem, SystemError,
};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyalg::{Rational, RationalMatrix};
use crate::verdict::{Certificate, Notion, Obstruction, Verdict};

/// Rado's theorem: `A t = 0` is PR over ℕ iff `A` satisfies the columns condition.
pub fn decide_linear_pr(a: &RationalMatrix) -> Verdict {
    match columns_condition(a) {
        Some(c) => Verdict::proved(
            Notion::Plain,
            Certificate::Columns {
                matrix: a.clone(),
                columns: c,
            },
        ),
        None => Verdict::refuted(
            Notion::Plain,
            Obstruction::new(
                "columns condition",
                "no ordered partition of the columns satisfies the columns condition",
            ),
        ),
    }
}

fn constant_certificate(
    a: &RationalMatrix,
    b: &[Rational],
    s: BigInt,
    clause: u8,
    columns: Option<ColumnsCertificate>,
) -> Certificate {
    Certificate::ConstantSolution {
        matrix: a.clone(),
        b: b.to_vec(),
        s,
        clause,
        columns,
    }
}

/// Inhomogeneous system `A t = b`: PR iff a natural constant solution exists, or
/// the columns condition holds together with an integer constant solution.
pub fn decide_inhomogeneous_pr(a: &RationalMatrix, b: &[Rational]) -> Verdict {
    let cs = a.solve_constant(b).expect("b length equals row count");
    if let Some(s) = cs.natural() {
        return Verdict::proved(Notion::Plain, constant_certificate(a, b, s, 1, None));
    }
    let cc = columns_condition(a);
    match (cs.integer(), cc) {
        (Some(s), Some(c)) => Verdict::proved(Notion::Plain, constant_certificate(a, b, s, 2, Some(c))),
        (s, cc) => Verdict::refuted(
            Notion::Plain,
            Obstruction::new(
                "constant solution",
                format!(
                    "no natural constant solution; integer constant solution {}; columns condition {}",
                    if s.is_some() { "exists" } else { "absent" },
                    if cc.is_some() { "holds" } else { "fails" }
                ),
            ),
        ),
    }
}

/// Infinite partition regularity: for `b ≠ 0` it holds iff the columns condition
/// holds and an integer constant solution exists.
pub fn decide_infinitely_pr(a: &RationalMatrix, b: &[Rational]) -> Verdict {
    if b.iter().all(Zero::is_zero) {
        return match decide_linear_pr(a) {
            Verdict::ProvedPR { certificate, .. } => Verdict::ProvedPR {
                notion: Notion::Infinite,
                certificate,
            },
            Verdict::ProvedNotPR { obstruction, .. } => {
                Verdict::refuted(Notion::Infinite, obstruction)
            }
            other => other,
        };
    }
    let cs = a.solve_constant(b).expect("b length equals row count");
    let cc = columns_condition(a);
    match (cs.integer(), cc) {
        (Some(s), Some(c)) => {
            Verdict::proved(Notion::Infinite, constant_certificate(a, b, s, 2, Some(c)))
        }
        (_, None) => {
            let finite = if cs.natural().is_some() {
                "; the system is PR through its natural constant solution only"
            } else {
                ""
            };
            Verdict::refuted(
                Notion::Infinite,
                Obstruction::new(
                    "columns condition",
                    format!("columns condition fails{finite}"),
                ),
            )
        }
        (None, Some(_)) => Verdict::refuted(
            Notion::Infinite,
            Obstruction::new("constant solution", "no integer constant solution"),
        ),
    }
}
