//! Systems `A t = d` with strict (`b·t > 0`) and unbounded (`b·t ≫ 0`) rows.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::columns::{CcOutcome, CcProblem, Col, ColumnsCertificate};
use crate::polyalg::{Rational, RationalMatrix};
use crate::serde_util;
use crate::verdict::{Certificate, Notion, Obstruction, Verdict};

/// Malformed system input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("row of length {got} in a system with {expected} columns")]
    Ragged { expected: usize, got: usize },
    #[error("cannot infer the number of columns")]
    NoColumns,
    #[error("right-hand side has length {got}, expected {expected}")]
    RhsLength { expected: usize, got: usize },
}

/// Equalities plus strict and unbounded inequality rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSystem {
    pub a: RationalMatrix,
    pub d: Vec<Rational>,
    pub strict: Vec<Vec<Rational>>,
    pub unbounded: Vec<Vec<Rational>>,
}

impl MixedSystem {
    pub fn new(
        a: RationalMatrix,
        d: Vec<Rational>,
        strict: Vec<Vec<Rational>>,
        unbounded: Vec<Vec<Rational>>,
    ) -> Result<Self, SystemError> {
        let n = a.cols();
        if n == 0 {
            return Err(SystemError::NoColumns);
        }
        if d.len() != a.rows() {
            return Err(SystemError::RhsLength {
                expected: a.rows(),
                got: d.len(),
            });
        }
        for r in strict.iter().chain(&unbounded) {
            if r.len() != n {
                return Err(SystemError::Ragged {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        Ok(MixedSystem {
            a,
            d,
            strict,
            unbounded,
        })
    }

    /// Homogeneous system with zero right-hand side.
    pub fn homogeneous(
        a: RationalMatrix,
        strict: Vec<Vec<Rational>>,
        unbounded: Vec<Vec<Rational>>,
    ) -> Result<Self, SystemError> {
        let d = vec![Rational::zero(); a.rows()];
        MixedSystem::new(a, d, strict, unbounded)
    }

    pub fn from_i64(
        a: &[Vec<i64>],
        d: &[i64],
        strict: &[Vec<i64>],
        unbounded: &[Vec<i64>],
    ) -> Result<Self, SystemError> {
        let conv = |rows: &[Vec<i64>]| -> Vec<Vec<Rational>> {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect()
        };
        let n = a
            .first()
            .or(strict.first())
            .or(unbounded.first())
            .map(Vec::len)
            .ok_or(SystemError::NoColumns)?;
        let am = RationalMatrix::from_rows(n, conv(a)).map_err(|_| SystemError::Ragged {
            expected: n,
            got: a.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
        })?;
        let d = d
            .iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect();
        MixedSystem::new(am, d, conv(strict), conv(unbounded))
    }

    pub fn ncols(&self) -> usize {
        self.a.cols()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.d.iter().all(Zero::is_zero)
    }

    /// Strict rows followed by unbounded rows.
    pub fn inequality_rows(&self) -> Vec<Vec<Rational>> {
        self.strict.iter().chain(&self.unbounded).cloned().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    #[serde(rename = "A", default, with = "serde_util::rat_rows")]
    a: Vec<Vec<Rational>>,
    #[serde(default, with = "serde_util::rat_vec")]
    d: Vec<Rational>,
    #[serde(default, with = "serde_util::rat_rows")]
    strict: Vec<Vec<Rational>>,
    #[serde(default, with = "serde_util::rat_rows")]
    unbounded: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ncols: Option<usize>,
}

impl Serialize for MixedSystem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SystemRepr {
            a: self.a.row_vecs(),
            d: self.d.clone(),
            strict: self.strict.clone(),
            unbounded: self.unbounded.clone(),
            ncols: Some(self.ncols()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MixedSystem {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = SystemRepr::deserialize(de)?;
        let n = r
            .ncols
            .or_else(|| r.a.first().map(Vec::len))
            .or_else(|| r.strict.first().map(Vec::len))
            .or_else(|| r.unbounded.first().map(Vec::len))
            .ok_or_else(|| D::Error::custom(SystemError::NoColumns))?;
        let rows = r.a.len();
        let a = RationalMatrix::from_rows(n, r.a).map_err(D::Error::custom)?;
        let d = if r.d.is_empty() {
            vec![Rational::zero(); rows]
        } else {
            r.d
        };
        MixedSystem::new(a, d, r.strict, r.unbounded).map_err(D::Error::custom)
    }
}

/// Which sufficient branch produced a mixed-system certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixedBranch {
    /// `d = 0`: augmented matrix satisfies the columns condition.
    Homogeneous,
    /// Natural constant solution satisfying every strict row (no unbounded rows).
    NaturalConstant,
    /// Integer constant solution plus a homogeneous certificate.
    IntegerConstant,
}

/// Re-checkable witness for a mixed system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedCertificate {
    pub system: MixedSystem,
    pub branch: MixedBranch,
    #[serde(with = "serde_util::big_opt")]
    pub s: Option<BigInt>,
    #[serde(with = "serde_util::rat_vec")]
    pub q: Vec<Rational>,
    pub augmented: Option<RationalMatrix>,
    pub columns: Option<ColumnsCertificate>,
}

/// Failure to re-validate a mixed certificate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MixedCertificateError {
    #[error("constant solution does not satisfy the equalities")]
    Constant,
    #[error("constant solution violates an inequality row")]
    Inequality,
    #[error("q values must be positive, one per inequality row")]
    Q,
    #[error("augmented matrix does not match the system and q")]
    Augmented,
    #[error("missing component for branch")]
    Missing,
    #[error(transparent)]
    Columns(#[from] super::columns::CertificateError),
}

impl MixedCertificate {
    pub fn validate(&self) -> Result<(), MixedCertificateError> {
        let sys = &self.system;
        let n = sys.ncols();
        if let Some(s) = &self.s {
            let t = vec![Rational::from_integer(s.clone()); n];
            if sys.a.mul_vec(&t).expect("shape") != sys.d {
                return Err(MixedCertificateError::Constant);
            }
            if self.branch == MixedBranch::NaturalConstant {
                if !s.is_positive() || !sys.unbounded.is_empty() {
                    return Err(MixedCertificateError::Inequality);
                }
                for r in &sys.strict {
                    let v: Rational = r.iter().zip(&t).map(|(x, y)| x * y).sum();
                    if !v.is_positive() {
                        return Err(MixedCertificateError::Inequality);
                    }
                }
                return Ok(());
            }
        }
        match self.branch {
            MixedBranch::NaturalConstant => Err(MixedCertificateError::Missing),
            MixedBranch::IntegerConstant if self.s.is_none() => Err(MixedCertificateError::Missing),
            MixedBranch::Homogeneous if !sys.is_homogeneous() => {
                Err(MixedCertificateError::Constant)
            }
            _ => {
                let rows = sys.inequality_rows();
                if self.q.len() != rows.len() || self.q.iter().any(|q| !q.is_positive()) {
                    return Err(MixedCertificateError::Q);
                }
                let (Some(aug), Some(cols)) = (&self.augmented, &self.columns) else {
                    return Err(MixedCertificateError::Missing);
                };
                if *aug != augmented_matrix(&sys.a, &rows, &self.q) {
                    return Err(MixedCertificateError::Augmented);
                }
                cols.validate(aug)?;
                Ok(())
            }
        }
    }
}

/// `[[A, 0], [B, −diag(q)]]`.
pub fn augmented_matrix(
    a: &RationalMatrix,
    rows: &[Vec<Rational>],
    q: &[Rational],
) -> RationalMatrix {
    let n = a.cols();
    let d = rows.len();
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(a.rows() + d);
    for i in 0..a.rows() {
        let mut r = a.row(i).to_vec();
        r.extend(std::iter::repeat_n(Rational::zero(), d));
        out.push(r);
    }
    for (j, b) in rows.iter().enumerate() {
        let mut r = b.clone();
        r.extend((0..d).map(|k| {
            if k == j {
                -q[j].clone()
            } else {
                Rational::zero()
            }
        }));
        out.push(r);
    }
    RationalMatrix::from_rows(n + d, out).expect("shape")
}

fn homogeneous_search(a: &RationalMatrix, rows: &[Vec<Rational>]) -> CcOutcome {
    let n = a.cols();
    let dim = a.rows() + rows.len();
    let mut cols: Vec<Col> = (0..n)
        .map(|j| {
            let mut c = a.column(j);
            c.extend(rows.iter().map(|r| r[j].clone()));
            Col::Fixed(c)
        })
        .collect();
    cols.extend((0..rows.len()).map(|i| Col::Slack(a.rows() + i)));
    CcProblem::new(dim, cols).solve()
}

fn homogeneous_verdict(sys: &MixedSystem, via_strict: bool) -> Verdict {
    let rows = sys.inequality_rows();
    match homogeneous_search(&sys.a, &rows) {
        CcOutcome::Found { partition, q } => {
            let aug = augmented_matrix(&sys.a, &rows, &q);
            Verdict::proved(
                Notion::Plain,
                Certificate::Mixed(MixedCertificate {
                    system: sys.clone(),
                    branch: MixedBranch::Homogeneous,
                    s: None,
                    q,
                    augmented: Some(aug),
                    columns: Some(ColumnsCertificate { partition }),
                }),
            )
        }
        CcOutcome::NotFound => Verdict::refuted(
            Notion::Plain,
            Obstruction::new(
                "augmented columns condition",
                format!(
                    "no positive q makes the augmented matrix satisfy the columns condition (exact search){}",
                    if via_strict {
                        "; unbounded rows decided through their strict counterparts"
                    } else {
                        ""
                    }
                ),
            ),
        ),
        CcOutcome::Undecided => Verdict::unknown("positivity elimination exceeded its constraint cap"),
    }
}

/// Homogeneous equalities with strict rows: PR iff some positive `q` makes the
/// augmented matrix satisfy the columns condition.
pub fn decide_mixed_strict(a: &RationalMatrix, strict: &[Vec<Rational>]) -> Verdict {
    match MixedSystem::homogeneous(a.clone(), strict.to_vec(), Vec::new()) {
        Ok(sys) => homogeneous_verdict(&sys, false),
        Err(e) => Verdict::unknown(format!("malformed system: {e}")),
    }
}

/// Homogeneous equalities with unbounded rows; equivalent to the strict version.
pub fn decide_mixed_unbounded(a: &RationalMatrix, unbounded: &[Vec<Rational>]) -> Verdict {
    match MixedSystem::homogeneous(a.clone(), Vec::new(), unbounded.to_vec()) {
        Ok(sys) => homogeneous_verdict(&sys, true),
        Err(e) => Verdict::unknown(format!("malformed system: {e}")),
    }
}

/// General mixed system. PR iff (i) a natural constant solution satisfies every
/// strict row and there are no unbounded rows, or (ii) an integer constant
/// solution exists and the homogeneous mixed system is PR.
pub fn decide_mixed_inhomogeneous(sys: &MixedSystem) -> Verdict {
    if sys.is_homogeneous() {
        return homogeneous_verdict(sys, !sys.unbounded.is_empty());
    }
    let cs = sys.a.solve_constant(&sys.d).expect("shape");
    if let Some(s) = cs.natural() {
        let row_ok = |r: &Vec<Rational>| r.iter().sum::<Rational>().is_positive();
        if sys.unbounded.is_empty() && sys.strict.iter().all(row_ok) {
            return Verdict::proved(
                Notion::Plain,
                Certificate::Mixed(MixedCertificate {
                    system: sys.clone(),
                    branch: MixedBranch::NaturalConstant,
                    s: Some(s),
                    q: Vec::new(),
                    augmented: None,
                    columns: None,
                }),
            );
        }
    }
    let Some(s) = cs.integer() else {
        return Verdict::refuted(
            Notion::Plain,
            Obstruction::new(
                "constant solution",
                "no integer constant solution of A t = d",
            ),
        );
    };
    let hom = MixedSystem {
        d: vec![Rational::zero(); sys.a.rows()],
        ..sys.clone()
    };
    match homogeneous_verdict(&hom, false) {
        Verdict::ProvedPR { certificate, .. } => {
            let Certificate::Mixed(mut c) = *certificate else {
                unreachable!("homogeneous search yields mixed certificates")
            };
            c.system = sys.clone();
            c.branch = MixedBranch::IntegerConstant;
            c.s = Some(s);
            Verdict::proved(Notion::Plain, Certificate::Mixed(c))
        }
        Verdict::ProvedNotPR { obstruction, .. } => Verdict::refuted(
            Notion::Plain,
            Obstruction::new(
                "mixed constant-solution branches",
                format!(
                    "natural-constant branch unavailable; homogeneous part fails: {}",
                    obstruction.detail
                ),
            ),
        ),
        unknown => unknown,
    }
}
