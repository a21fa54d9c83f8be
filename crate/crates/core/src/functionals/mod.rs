//! Rado sets, Rado partitions, and upper/lower Rado functionals.
//!
//! Blocks are stored in canonical order (descending lexicographic) and the first
//! element of each block is its base. For an upper functional of order `m` the
//! system is `Â t = b̂` with difference rows `α_{i,j} − α_{i,1}`, pinned rows
//! `α_{i,1} − α_{m,1} = d_i` (`i < m`), and inequality rows
//! `(α_{m,1} − α_{i,1})·t > 0` (`i > m`). Lower functionals negate the pinned
//! and inequality rows.

mod search;

pub use search::{search_functionals, FunctionalFamily, SearchBounds, SearchError, SearchOutcome};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linear_pr::{
    augmented_matrix, columns_condition, CcOutcome, CcProblem, Col, ColumnsCertificate,
    MixedBranch, MixedCertificate, MixedSystem,
};
use crate::polyalg::{is_homogeneous, MultiIndex, Polynomial, Rational, RationalMatrix};
use crate::serde_util;
use crate::verdict::{Certificate, Notion, Obstruction, PolyText, Verdict};

/// Which end of the value order is pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Upper,
    Lower,
}

/// Candidate or verified Rado functional `(J_0, …, J_l; d_0, …, d_{m−1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RadoFunctional {
    pub direction: Direction,
    pub order: usize,
    pub blocks: Vec<Vec<MultiIndex>>,
    #[serde(with = "serde_util::big_vec")]
    pub increments: Vec<BigInt>,
}

/// Sorts a block into canonical (descending lexicographic) order.
pub fn canonical_block(mut j: Vec<MultiIndex>) -> Vec<MultiIndex> {
    j.sort_by(|a, b| b.cmp(a));
    j.dedup();
    j
}

impl RadoFunctional {
    /// Builds a functional; blocks are canonicalized.
    pub fn new(
        direction: Direction,
        blocks: Vec<Vec<MultiIndex>>,
        order: usize,
        increments: Vec<BigInt>,
    ) -> Self {
        RadoFunctional {
            direction,
            order,
            blocks: blocks.into_iter().map(canonical_block).collect(),
            increments,
        }
    }

    /// Upper functional from small exponent arrays.
    pub fn upper(blocks: &[&[&[u32]]], increments: &[i64]) -> Self {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|e| MultiIndex(e.to_vec())).collect())
            .collect();
        RadoFunctional::new(
            Direction::Upper,
            blocks,
            increments.len(),
            increments.iter().map(|&d| BigInt::from(d)).collect(),
        )
    }

    /// Index of the last block, `l`.
    pub fn last(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Order equals the last block index.
    pub fn is_complete(&self) -> bool {
        self.order == self.last() && self.order >= 1
    }

    pub fn base(&self, i: usize) -> &MultiIndex {
        &self.blocks[i][0]
    }

    /// Degree of block `i`'s base.
    pub fn base_degree(&self, i: usize) -> u64 {
        self.base(i).degree()
    }
}

impl fmt::Display for RadoFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let els: Vec<String> = b.iter().map(|a| a.to_string()).collect();
                format!("{{{}}}", els.join(","))
            })
            .collect();
        write!(
            f,
            "{}[m={}] ({})",
            match self.direction {
                Direction::Upper => "upper",
                Direction::Lower => "lower",
            },
            self.order,
            blocks.join(", ")
        )?;
        if !self.increments.is_empty() {
            let d: Vec<String> = self.increments.iter().map(|x| x.to_string()).collect();
            write!(f, " d=({})", d.join(","))?;
        }
        Ok(())
    }
}

/// Malformed functional candidates.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctionalError {
    #[error("block list must be nonempty and every block nonempty")]
    EmptyBlock,
    #[error("blocks do not partition the support")]
    NotAPartition,
    #[error("order {order} exceeds last block index {last}")]
    OrderTooLarge { order: usize, last: usize },
    #[error("expected {expected} increments, got {got}")]
    IncrementCount { expected: usize, got: usize },
    #[error("increments must be positive and strictly decreasing")]
    IncrementOrder,
    #[error("difference matrix needs at least two elements")]
    Singleton,
    #[error("base index {0} out of range")]
    BaseIndex(usize),
    #[error("set is not contained in the support")]
    NotSubset,
    #[error("set fails the difference-matrix columns condition")]
    NotRadoCandidate,
}

/// Rows `α_i − α_base` for `i ≠ base` (0-based base index).
pub fn difference_matrix(j: &[MultiIndex], base: usize) -> Result<RationalMatrix, FunctionalError> {
    if j.len() < 2 {
        return Err(FunctionalError::Singleton);
    }
    if base >= j.len() {
        return Err(FunctionalError::BaseIndex(base));
    }
    let n = j[0].len();
    let rows: Vec<Vec<Rational>> = j
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != base)
        .map(|(_, a)| {
            a.diff(&j[base])
                .into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    Ok(RationalMatrix::from_rows(n, rows).expect("shape"))
}

/// Necessary condition for a Rado set: its difference matrix satisfies the columns condition.
pub fn rado_set_necessary(j: &[MultiIndex], supp: &[MultiIndex]) -> Result<bool, FunctionalError> {
    if !j.iter().all(|a| supp.contains(a)) {
        return Err(FunctionalError::NotSubset);
    }
    let j = canonical_block(j.to_vec());
    match difference_matrix(&j, 0) {
        Err(FunctionalError::Singleton) => Ok(true),
        Err(e) => Err(e),
        Ok(m) => Ok(columns_condition(&m).is_some()),
    }
}

/// `J` passes the necessary condition and no single added support element keeps it.
pub fn is_maximal_rado_set(j: &[MultiIndex], supp: &[MultiIndex]) -> Result<bool, FunctionalError> {
    if !rado_set_necessary(j, supp)? {
        return Err(FunctionalError::NotRadoCandidate);
    }
    for a in supp.iter().filter(|a| !j.contains(a)) {
        let mut ext = j.to_vec();
        ext.push(a.clone());
        if rado_set_necessary(&ext, supp)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Â`, `b̂` and the inequality rows of a functional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalMatrices {
    pub a_hat: RationalMatrix,
    #[serde(with = "serde_util::big_vec")]
    pub b_hat: Vec<BigInt>,
    #[serde(with = "serde_util::big_rows")]
    pub inequality_rows: Vec<Vec<BigInt>>,
    /// Number of leading difference rows in `a_hat`.
    pub difference_rows: usize,
}

impl FunctionalMatrices {
    pub fn b_hat_rat(&self) -> Vec<Rational> {
        self.b_hat
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect()
    }

    pub fn inequality_rat(&self) -> Vec<Vec<Rational>> {
        self.inequality_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }
}

fn to_rat_row(v: Vec<i64>) -> Vec<Rational> {
    v.into_iter()
        .map(|x| Rational::from_integer(x.into()))
        .collect()
}

/// Structural validation against `supp(P)`.
pub fn check_structure(f: &RadoFunctional, p: &Polynomial) -> Result<(), FunctionalError> {
    if f.blocks.is_empty() || f.blocks.iter().any(Vec::is_empty) {
        return Err(FunctionalError::EmptyBlock);
    }
    let mut all: Vec<&MultiIndex> = f.blocks.iter().flatten().collect();
    all.sort();
    let supp = p.support();
    if all.len() != supp.len() || all.iter().zip(&supp).any(|(a, b)| *a != b) {
        return Err(FunctionalError::NotAPartition);
    }
    if f.order > f.last() {
        return Err(FunctionalError::OrderTooLarge {
            order: f.order,
            last: f.last(),
        });
    }
    if f.increments.len() != f.order {
        return Err(FunctionalError::IncrementCount {
            expected: f.order,
            got: f.increments.len(),
        });
    }
    if f.increments.iter().any(|d| !d.is_positive())
        || f.increments.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(FunctionalError::IncrementOrder);
    }
    Ok(())
}

/// Rows of `Â` (without right-hand side) and the inequality rows.
fn structure_rows(
    direction: Direction,
    blocks: &[Vec<MultiIndex>],
    m: usize,
) -> (Vec<Vec<i64>>, usize, Vec<Vec<i64>>) {
    let mut rows = Vec::new();
    for b in blocks {
        for a in &b[1..] {
            rows.push(a.diff(&b[0]));
        }
    }
    let diff_rows = rows.len();
    let pin = &blocks[m][0];
    let flip = |v: Vec<i64>| -> Vec<i64> {
        match direction {
            Direction::Upper => v,
            Direction::Lower => v.into_iter().map(|x| -x).collect(),
        }
    };
    for b in &blocks[..m] {
        rows.push(flip(b[0].diff(pin)));
    }
    let ineq = blocks[m + 1..]
        .iter()
        .map(|b| flip(pin.diff(&b[0])))
        .collect();
    (rows, diff_rows, ineq)
}

/// Assembles `Â`, `b̂` and the inequality rows.
pub fn build_functional_system(
    f: &RadoFunctional,
    p: &Polynomial,
) -> Result<FunctionalMatrices, FunctionalError> {
    check_structure(f, p)?;
    let n = p.nvars();
    let (rows, diff_rows, ineq) = structure_rows(f.direction, &f.blocks, f.order);
    let mut b_hat = vec![BigInt::zero(); diff_rows];
    b_hat.extend(f.increments.iter().cloned());
    let a_hat =
        RationalMatrix::from_rows(n, rows.into_iter().map(to_rat_row).collect()).expect("shape");
    Ok(FunctionalMatrices {
        a_hat,
        b_hat,
        inequality_rows: ineq
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
        difference_rows: diff_rows,
    })
}

/// Violated corollary conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "corollary", rename_all = "snake_case")]
pub enum CorollaryViolation {
    /// Malformed candidate.
    Structure { detail: String },
    /// `Â t = b̂` has no integer constant solution.
    ConstantSolution,
    /// `Â` fails the columns condition.
    ColumnsCondition,
    /// A block is not homogeneous although `m ≥ 1`.
    InhomogeneousBlock { block: usize },
    /// `d_i ≠ s·(L_i − L_m)` for every integer `s`.
    DegreeRelation,
    /// Homogeneous `P` admits only order-0 functionals.
    HomogeneousOrder,
}

impl fmt::Display for CorollaryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorollaryViolation::Structure { detail } => write!(f, "malformed candidate: {detail}"),
            CorollaryViolation::ConstantSolution => write!(
                f,
                "constant-solution corollary: no integer constant solution"
            ),
            CorollaryViolation::ColumnsCondition => {
                write!(f, "constant-solution corollary: columns condition fails")
            }
            CorollaryViolation::InhomogeneousBlock { block } => {
                write!(
                    f,
                    "block-homogeneity corollary: J_{block} is not homogeneous"
                )
            }
            CorollaryViolation::DegreeRelation => write!(
                f,
                "degree-relation corollary: increments are not s·(L_i − L_m)"
            ),
            CorollaryViolation::HomogeneousOrder => {
                write!(f, "homogeneous-order corollary: homogeneous P forces m = 0")
            }
        }
    }
}

/// The integer `s` with `d_i = s·(L_i − L_m)` (upper) or `s·(L_m − L_i)` (lower), if any.
fn degree_relation_s(f: &RadoFunctional) -> Option<BigInt> {
    let m = f.order;
    let lm = f.base_degree(m) as i64;
    let mut s: Option<BigInt> = None;
    for i in 0..m {
        let gap = f.base_degree(i) as i64 - lm;
        let gap = match f.direction {
            Direction::Upper => gap,
            Direction::Lower => -gap,
        };
        if gap == 0 {
            return None;
        }
        let g = BigInt::from(gap);
        if !(&f.increments[i] % &g).is_zero() {
            return None;
        }
        let si = &f.increments[i] / &g;
        match &s {
            Some(prev) if *prev != si => return None,
            _ => s = Some(si),
        }
    }
    s
}

/// The integer `s` tying increments to base degrees, when one exists.
pub fn degree_scale(f: &RadoFunctional) -> Option<BigInt> {
    degree_relation_s(f)
}

/// Fast necessary checks; empty iff all applicable conditions pass.
pub fn validate_corollaries(f: &RadoFunctional, p: &Polynomial) -> Vec<CorollaryViolation> {
    let mats = match build_functional_system(f, p) {
        Ok(m) => m,
        Err(e) => {
            return vec![CorollaryViolation::Structure {
                detail: e.to_string(),
            }];
        }
    };
    let mut out = Vec::new();
    if f.order >= 1 {
        if p.is_homogeneous() {
            out.push(CorollaryViolation::HomogeneousOrder);
        }
        let mut all_homogeneous = true;
        for (i, b) in f.blocks.iter().enumerate() {
            if !is_homogeneous(b) {
                out.push(CorollaryViolation::InhomogeneousBlock { block: i });
                all_homogeneous = false;
            }
        }
        if all_homogeneous && degree_relation_s(f).is_none() {
            out.push(CorollaryViolation::DegreeRelation);
        }
    }
    let cs = mats.a_hat.solve_constant(&mats.b_hat_rat()).expect("shape");
    if cs.integer().is_none() {
        out.push(CorollaryViolation::ConstantSolution);
    }
    if mats.a_hat.rows() > 0 && columns_condition(&mats.a_hat).is_none() {
        out.push(CorollaryViolation::ColumnsCondition);
    }
    out
}

/// Verified functional with everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalCertificate {
    pub poly: PolyText,
    pub functional: RadoFunctional,
    /// Integer constant solution (`None` when `b̂ = 0`).
    #[serde(with = "serde_util::big_opt")]
    pub s: Option<BigInt>,
    pub a_hat_columns: Option<ColumnsCertificate>,
    pub mixed: MixedCertificate,
}

/// Result of checking the homogeneous part of a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum StructureCheck {
    Verified {
        partition: Vec<Vec<usize>>,
        q: Vec<Rational>,
    },
    Rejected,
    Undecided,
}

/// Decides PR of `Â t = 0` with the inequality rows (independent of the increments).
pub(crate) fn check_structure_rows(
    n: usize,
    rows: &[Vec<i64>],
    ineq: &[Vec<i64>],
) -> StructureCheck {
    let dim = rows.len() + ineq.len();
    let mut cols: Vec<Col> = (0..n)
        .map(|j| {
            Col::Fixed(
                rows.iter()
                    .chain(ineq)
                    .map(|r| Rational::from_integer(r[j].into()))
                    .collect(),
            )
        })
        .collect();
    cols.extend((0..ineq.len()).map(|i| Col::Slack(rows.len() + i)));
    match CcProblem::new(dim, cols).solve() {
        CcOutcome::Found { partition, q } => StructureCheck::Verified { partition, q },
        CcOutcome::NotFound => StructureCheck::Rejected,
        CcOutcome::Undecided => StructureCheck::Undecided,
    }
}

pub(crate) fn assemble_certificate(
    f: &RadoFunctional,
    p: &Polynomial,
    vars: &[String],
    mats: &FunctionalMatrices,
    s: Option<BigInt>,
    partition: Vec<Vec<usize>>,
    q: Vec<Rational>,
) -> FunctionalCertificate {
    let ineq = mats.inequality_rat();
    let system = MixedSystem::new(
        mats.a_hat.clone(),
        mats.b_hat_rat(),
        ineq.clone(),
        Vec::new(),
    )
    .expect("shape");
    let aug = augmented_matrix(&mats.a_hat, &ineq, &q);
    let branch = if s.is_some() {
        MixedBranch::IntegerConstant
    } else {
        MixedBranch::Homogeneous
    };
    let a_hat_columns = if mats.a_hat.rows() > 0 {
        columns_condition(&mats.a_hat)
    } else {
        None
    };
    FunctionalCertificate {
        poly: PolyText::new(p, vars),
        functional: f.clone(),
        s: s.clone(),
        a_hat_columns,
        mixed: MixedCertificate {
            system,
            branch,
            s,
            q,
            augmented: Some(aug),
            columns: Some(ColumnsCertificate { partition }),
        },
    }
}

/// Outcome of [`verify_functional_detailed`].
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionalCheck {
    Verified(Box<FunctionalCertificate>),
    Rejected(Vec<CorollaryViolation>, String),
    Undecided(String),
}

/// Full verification with structured output.
pub fn verify_functional_detailed(
    f: &RadoFunctional,
    p: &Polynomial,
    vars: &[String],
) -> FunctionalCheck {
    let mats = match build_functional_system(f, p) {
        Ok(m) => m,
        Err(e) => {
            return FunctionalCheck::Rejected(
                vec![CorollaryViolation::Structure {
                    detail: e.to_string(),
                }],
                e.to_string(),
            )
        }
    };
    // cheap filters first; the columns condition is covered by the augmented search
    let mut quick: Vec<CorollaryViolation> = Vec::new();
    if f.order >= 1 {
        if p.is_homogeneous() {
            quick.push(CorollaryViolation::HomogeneousOrder);
        }
        for (i, b) in f.blocks.iter().enumerate() {
            if !is_homogeneous(b) {
                quick.push(CorollaryViolation::InhomogeneousBlock { block: i });
            }
        }
    }
    let cs = mats.a_hat.solve_constant(&mats.b_hat_rat()).expect("shape");
    let Some(s_int) = cs.integer() else {
        quick.push(CorollaryViolation::ConstantSolution);
        return FunctionalCheck::Rejected(quick, "no integer constant solution".into());
    };
    if !quick.is_empty() {
        return FunctionalCheck::Rejected(quick, "corollary filter".into());
    }
    let (rows, _, ineq) = structure_rows(f.direction, &f.blocks, f.order);
    match check_structure_rows(p.nvars(), &rows, &ineq) {
        StructureCheck::Verified { partition, q } => {
            let s = if f.order == 0 { None } else { Some(s_int) };
            FunctionalCheck::Verified(Box::new(assemble_certificate(
                f, p, vars, &mats, s, partition, q,
            )))
        }
        StructureCheck::Rejected => {
            let v = if mats.a_hat.rows() > 0 && columns_condition(&mats.a_hat).is_none() {
                vec![CorollaryViolation::ColumnsCondition]
            } else {
                Vec::new()
            };
            FunctionalCheck::Rejected(
                v,
                "inequality-augmented system is not partition regular".into(),
            )
        }
        StructureCheck::Undecided => {
            FunctionalCheck::Undecided("positivity elimination cap".into())
        }
    }
}

/// Decides whether `f` is a genuine Rado functional for `P`.
pub fn verify_functional(f: &RadoFunctional, p: &Polynomial) -> Verdict {
    let vars = crate::polyalg::default_var_names(p.nvars());
    match verify_functional_detailed(f, p, &vars) {
        FunctionalCheck::Verified(c) => {
            Verdict::proved(Notion::Infinite, Certificate::Functional(*c))
        }
        FunctionalCheck::Rejected(v, detail) => {
            let names: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Verdict::refuted(
                Notion::Infinite,
                Obstruction::new(
                    if names.is_empty() {
                        "functional system".to_string()
                    } else {
                        names.join("; ")
                    },
                    detail,
                ),
            )
        }
        FunctionalCheck::Undecided(r) => Verdict::unknown(r),
    }
}

/// Re-checks a functional certificate without search.
pub fn validate_functional_certificate(c: &FunctionalCertificate) -> Result<(), String> {
    let p = c.poly.parse().map_err(|e| e.to_string())?;
    let mats = build_functional_system(&c.functional, &p).map_err(|e| e.to_string())?;
    if c.mixed.system.a != mats.a_hat
        || c.mixed.system.d != mats.b_hat_rat()
        || c.mixed.system.strict != mats.inequality_rat()
    {
        return Err("mixed system does not match the functional".into());
    }
    if c.mixed.s != c.s {
        return Err("constant solution mismatch".into());
    }
    if c.functional.order >= 1 && c.s.is_none() {
        return Err("missing constant solution".into());
    }
    c.mixed.validate().map_err(|e| e.to_string())?;
    if let Some(cc) = &c.a_hat_columns {
        cc.validate(&mats.a_hat).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Summary matrix `[[−M ; N̂, 0], [inequality rows, −diag(q)]]`.
///
/// Difference rows are written as base minus member (a row negation of `Â`'s
/// difference rows, which preserves the columns condition).
pub fn assemble_o(
    f: &RadoFunctional,
    p: &Polynomial,
    q: &[Rational],
) -> Result<RationalMatrix, FunctionalError> {
    let mats = build_functional_system(f, p)?;
    if q.len() != mats.inequality_rows.len() {
        return Err(FunctionalError::IncrementCount {
            expected: mats.inequality_rows.len(),
            got: q.len(),
        });
    }
    let mut top: Vec<Vec<Rational>> = mats.a_hat.row_vecs();
    for r in top.iter_mut().take(mats.difference_rows) {
        for x in r.iter_mut() {
            *x = -x.clone();
        }
    }
    let top = RationalMatrix::from_rows(p.nvars(), top).expect("shape");
    Ok(augmented_matrix(&top, &mats.inequality_rat(), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{default_var_names, parse_polynomial, rat};
    use crate::verdict::Status;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, &default_var_names(3)).unwrap()
    }

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex(e.to_vec())
    }

    #[test]
    fn difference_matrix_examples() {
        let m = difference_matrix(&[mi(&[3, 0, 0]), mi(&[0, 0, 3])], 0).unwrap();
        assert_eq!(m, RationalMatrix::from_i64(&[vec![-3, 0, 3]]));
        let m = difference_matrix(&[mi(&[4, 0, 0]), mi(&[0, 4, 2]), mi(&[2, 2, 1])], 0).unwrap();
        assert_eq!(
            m,
            RationalMatrix::from_i64(&[vec![-4, 4, 2], vec![-2, 2, 1]])
        );
        assert_eq!(
            difference_matrix(&[mi(&[1, 0, 0])], 0),
            Err(FunctionalError::Singleton)
        );
    }

    #[test]
    fn rado_set_examples() {
        let p = poly("x^4 + y^4*z^2 + x^2*y^2*z");
        let supp = p.support();
        let j = [mi(&[4, 0, 0]), mi(&[0, 4, 2])];
        assert!(rado_set_necessary(&j, &supp).unwrap());
        assert!(!is_maximal_rado_set(&j, &supp).unwrap());
        assert!(is_maximal_rado_set(&supp, &supp).unwrap());
        let p = poly("x + y - z^2");
        let supp = p.support();
        assert!(!rado_set_necessary(&[mi(&[1, 0, 0]), mi(&[0, 0, 2])], &supp).unwrap());
        assert!(is_maximal_rado_set(&[mi(&[1, 0, 0]), mi(&[0, 1, 0])], &supp).unwrap());
        assert!(rado_set_necessary(&[mi(&[0, 0, 2])], &supp).unwrap());
    }

    #[test]
    fn system_examples() {
        let p = poly("x^3 + y^3 - z^3");
        let f = RadoFunctional::upper(&[&[&[3, 0, 0], &[0, 0, 3]], &[&[0, 3, 0]]], &[]);
        let m = build_functional_system(&f, &p).unwrap();
        assert_eq!(m.a_hat, RationalMatrix::from_i64(&[vec![-3, 0, 3]]));
        assert_eq!(m.b_hat, vec![BigInt::from(0)]);
        assert_eq!(
            m.inequality_rows,
            vec![vec![3.into(), (-3).into(), 0.into()]]
        );
        let p = poly("x*y^2 - 2*z");
        let f = RadoFunctional::upper(&[&[&[0, 0, 1]], &[&[1, 2, 0]]], &[2]);
        let m = build_functional_system(&f, &p).unwrap();
        assert_eq!(m.a_hat, RationalMatrix::from_i64(&[vec![-1, -2, 1]]));
        assert_eq!(m.b_hat, vec![BigInt::from(2)]);
        assert!(m.inequality_rows.is_empty());
        let p = poly("3*x*y");
        let f = RadoFunctional::upper(&[&[&[1, 1, 0]]], &[]);
        let m = build_functional_system(&f, &p).unwrap();
        assert_eq!((m.a_hat.rows(), m.inequality_rows.len()), (0, 0));
    }

    #[test]
    fn verification_examples() {
        let p = poly("x^3 + y^3 - z^3");
        let f = RadoFunctional::upper(&[&[&[3, 0, 0], &[0, 0, 3]], &[&[0, 3, 0]]], &[]);
        let v = verify_functional(&f, &p);
        assert_eq!(v.status(), Status::ProvedPR);
        if let Some(Certificate::Functional(c)) = v.certificate() {
            validate_functional_certificate(c).unwrap();
        }
        let f = RadoFunctional::upper(&[&[&[3, 0, 0]], &[&[0, 0, 3], &[0, 3, 0]]], &[3]);
        assert_eq!(verify_functional(&f, &p).status(), Status::ProvedNotPR);
        let p = poly("x + y - z^2");
        let f = RadoFunctional::upper(&[&[&[1, 0, 0], &[0, 1, 0]], &[&[0, 0, 2]]], &[1]);
        assert_eq!(verify_functional(&f, &p).status(), Status::ProvedNotPR);
        let p = poly("x*y^2 - 2*z");
        let f = RadoFunctional::upper(&[&[&[0, 0, 1]], &[&[1, 2, 0]]], &[2]);
        let v = verify_functional(&f, &p);
        assert_eq!(v.status(), Status::ProvedPR);
        let Some(Certificate::Functional(c)) = v.certificate() else {
            panic!()
        };
        assert_eq!(c.s, Some(BigInt::from(-1)));
        validate_functional_certificate(c).unwrap();
    }

    #[test]
    fn corollary_examples() {
        let p = poly("x^3 + y^3 - z^3");
        let f = RadoFunctional::upper(&[&[&[3, 0, 0]], &[&[0, 0, 3], &[0, 3, 0]]], &[3]);
        assert!(validate_corollaries(&f, &p).contains(&CorollaryViolation::HomogeneousOrder));
        let p = poly("x + y - z^2");
        let f = RadoFunctional::upper(&[&[&[1, 0, 0], &[0, 0, 2]], &[&[0, 1, 0]]], &[1]);
        assert!(validate_corollaries(&f, &p)
            .contains(&CorollaryViolation::InhomogeneousBlock { block: 0 }));
        // 4xy^2 - 5x^2yz + x^3z^2 with pinned singletons, s = 1
        let p = poly("4*x*y^2 - 5*x^2*y*z + x^3*z^2");
        let f = RadoFunctional::upper(&[&[&[3, 0, 2]], &[&[2, 1, 1]], &[&[1, 2, 0]]], &[2, 1]);
        assert!(validate_corollaries(&f, &p).is_empty());
    }

    #[test]
    fn summary_matrix() {
        let p = poly("x^3 + y^3 - z^3");
        let f = RadoFunctional::upper(&[&[&[3, 0, 0], &[0, 0, 3]], &[&[0, 3, 0]]], &[]);
        let o = assemble_o(&f, &p, &[rat(1)]).unwrap();
        assert_eq!(
            o,
            RationalMatrix::from_i64(&[vec![3, 0, -3, 0], vec![3, -3, 0, -1]])
        );
        let p = poly("x*y^2 - 2*z");
        let f = RadoFunctional::upper(&[&[&[0, 0, 1]], &[&[1, 2, 0]]], &[2]);
        let o = assemble_o(&f, &p, &[]).unwrap();
        assert_eq!(o, build_functional_system(&f, &p).unwrap().a_hat);
        let p = poly("x + y - z");
        let f = RadoFunctional::upper(&[&[&[1, 0, 0]], &[&[0, 1, 0]], &[&[0, 0, 1]]], &[]);
        let o = assemble_o(&f, &p, &[rat(2), rat(5)]).unwrap();
        assert_eq!(o.cols(), 5);
        assert_eq!(o.get(0, 3), &rat(-2));
        assert_eq!(o.get(1, 4), &rat(-5));
        assert_eq!(o.get(0, 4), &rat(0));
    }
}
