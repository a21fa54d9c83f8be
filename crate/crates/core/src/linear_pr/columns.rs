//! Columns-condition search, including columns carrying an unknown `−q` slack entry.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::positive::{positive_point, Positivity};
use crate::polyalg::{in_span, LinAlgError, Rational, RationalMatrix, SpanBasis};

/// Ordered partition `(I_0, …, I_r)` of column indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColumnsCertificate {
    pub partition: Vec<Vec<usize>>,
}

/// Why a certificate does not re-validate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("blocks do not partition columns 0..{0}")]
    NotAPartition(usize),
    #[error("block I_0 does not sum to zero")]
    NonZeroFirstBlock,
    #[error("sum of block I_{0} is outside the span of earlier columns")]
    OutsideSpan(usize),
    #[error(transparent)]
    Shape(#[from] LinAlgError),
}

impl ColumnsCertificate {
    /// Re-checks the certificate against `m` with the rank-based span test.
    pub fn validate(&self, m: &RationalMatrix) -> Result<(), CertificateError> {
        let n = m.cols();
        let mut seen = vec![false; n];
        for block in &self.partition {
            if block.is_empty() {
                return Err(CertificateError::NotAPartition(n));
            }
            for &c in block {
                if c >= n || seen[c] {
                    return Err(CertificateError::NotAPartition(n));
                }
                seen[c] = true;
            }
        }
        if seen.iter().any(|s| !s) || self.partition.is_empty() {
            return Err(CertificateError::NotAPartition(n));
        }
        let cols = m.columns();
        let block_sum = |b: &[usize]| -> Vec<Rational> {
            (0..m.rows())
                .map(|i| b.iter().map(|&c| cols[c][i].clone()).sum())
                .collect()
        };
        if block_sum(&self.partition[0]).iter().any(|x| !x.is_zero()) {
            return Err(CertificateError::NonZeroFirstBlock);
        }
        let mut earlier: Vec<Vec<Rational>> =
            self.partition[0].iter().map(|&c| cols[c].clone()).collect();
        for (u, block) in self.partition.iter().enumerate().skip(1) {
            if !in_span(&block_sum(block), &earlier)? {
                return Err(CertificateError::OutsideSpan(u));
            }
            earlier.extend(block.iter().map(|&c| cols[c].clone()));
        }
        Ok(())
    }

    /// Human-readable form with 1-based column names.
    pub fn describe(&self) -> String {
        self.partition
            .iter()
            .enumerate()
            .map(|(u, b)| {
                let names: Vec<String> = b.iter().map(|c| format!("c{}", c + 1)).collect();
                format!("I_{u}={{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// A column of a search problem.
#[derive(Debug, Clone)]
pub(crate) enum Col {
    Fixed(Vec<Rational>),
    /// `−q·e_row` with an unknown `q > 0`.
    Slack(usize),
}

/// Result of a parametric columns-condition search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CcOutcome {
    /// Partition plus one positive `q` per slack column, in column order.
    Found {
        partition: Vec<Vec<usize>>,
        q: Vec<Rational>,
    },
    NotFound,
    /// Positivity elimination exceeded its cap somewhere.
    Undecided,
}

/// Cap on Fourier–Motzkin constraint growth.
pub(crate) const FM_CAP: usize = 4096;

pub(crate) struct CcProblem {
    dim: usize,
    cols: Vec<Col>,
    slack_index: Vec<Option<usize>>,
}

fn combinations(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if rec(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// `(column, q)` pairs of a block.
type QValues = Vec<(usize, Rational)>;

enum BlockCheck {
    Valid(QValues),
    Invalid,
    Undecided,
}

impl CcProblem {
    pub(crate) fn new(dim: usize, cols: Vec<Col>) -> Self {
        let mut next = 0;
        let slack_index = cols
            .iter()
            .map(|c| match c {
                Col::Slack(_) => {
                    next += 1;
                    Some(next - 1)
                }
                Col::Fixed(_) => None,
            })
            .collect();
        CcProblem {
            dim,
            cols,
            slack_index,
        }
    }

    pub(crate) fn from_matrix(m: &RationalMatrix) -> Self {
        CcProblem::new(m.rows(), m.columns().into_iter().map(Col::Fixed).collect())
    }

    fn unit(&self, row: usize) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); self.dim];
        e[row] = Rational::from_integer(1.into());
        e
    }

    fn fixed_sum(&self, block: &[usize]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        for &c in block {
            if let Col::Fixed(col) = &self.cols[c] {
                for (vi, ci) in v.iter_mut().zip(col) {
                    *vi += ci;
                }
            }
        }
        v
    }

    fn slacks(&self, block: &[usize]) -> Vec<(usize, usize)> {
        block
            .iter()
            .filter_map(|&c| match self.cols[c] {
                Col::Slack(r) => Some((c, r)),
                Col::Fixed(_) => None,
            })
            .collect()
    }

    /// Zero-sum test for a first block; returns the forced slack values.
    fn zero_sum(&self, block: &[usize]) -> Option<Vec<(usize, Rational)>> {
        let v = self.fixed_sum(block);
        let slacks = self.slacks(block);
        let mut q = Vec::new();
        let mut covered = vec![false; self.dim];
        for &(c, r) in &slacks {
            if !v[r].is_positive() || covered[r] {
                return None;
            }
            covered[r] = true;
            q.push((c, v[r].clone()));
        }
        for (i, x) in v.iter().enumerate() {
            if !covered[i] && !x.is_zero() {
                return None;
            }
        }
        Some(q)
    }

    fn check_block(&self, w: &SpanBasis, block: &[usize]) -> BlockCheck {
        let v = self.fixed_sum(block);
        let slacks = self.slacks(block);
        if slacks.is_empty() {
            return if w.contains(&v) {
                BlockCheck::Valid(Vec::new())
            } else {
                BlockCheck::Invalid
            };
        }
        // reduce(v) = Σ q_z reduce(e_{r_z}); reduce is linear with kernel W
        let rv = w.reduce(&v);
        let rcols: Vec<Vec<Rational>> = slacks
            .iter()
            .map(|&(_, r)| w.reduce(&self.unit(r)))
            .collect();
        let rows: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| rcols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let m = RationalMatrix::from_rows(slacks.len(), rows).expect("shape");
        let Some((q0, kernel)) = m.solve(&rv).expect("shape") else {
            return BlockCheck::Invalid;
        };
        match positive_point(&q0, &kernel, FM_CAP) {
            Positivity::Found(q) => {
                BlockCheck::Valid(slacks.iter().map(|&(c, _)| c).zip(q).collect())
            }
            Positivity::Infeasible => BlockCheck::Invalid,
            Positivity::TooLarge => BlockCheck::Undecided,
        }
    }

    fn add_block(&self, w: &mut SpanBasis, block: &[usize]) {
        for &c in block {
            match &self.cols[c] {
                Col::Fixed(col) => {
                    w.insert(col);
                }
                Col::Slack(r) => {
                    w.insert(&self.unit(*r));
                }
            }
        }
    }

    /// Greedy closure from a first block; complete because validity is monotone in the used set.
    fn close(&self, first: &[usize], q_first: Vec<(usize, Rational)>) -> CcOutcome {
        let n = self.cols.len();
        let mut used = vec![false; n];
        let mut w = SpanBasis::new(self.dim);
        for &c in first {
            used[c] = true;
        }
        self.add_block(&mut w, first);
        let mut partition = vec![first.to_vec()];
        let mut q_vals: QValues = q_first;
        let mut undecided = false;
        loop {
            let remaining: Vec<usize> = (0..n).filter(|&c| !used[c]).collect();
            if remaining.is_empty() {
                break;
            }
            let mut chosen: Option<(Vec<usize>, QValues)> = None;
            for k in 1..=remaining.len() {
                let done = combinations(&remaining, k, &mut |b| match self.check_block(&w, b) {
                    BlockCheck::Valid(q) => {
                        chosen = Some((b.to_vec(), q));
                        true
                    }
                    BlockCheck::Invalid => false,
                    BlockCheck::Undecided => {
                        undecided = true;
                        false
                    }
                });
                if done {
                    break;
                }
            }
            let Some((block, q)) = chosen else {
                return if undecided {
                    CcOutcome::Undecided
                } else {
                    CcOutcome::NotFound
                };
            };
            for &c in &block {
                used[c] = true;
            }
            self.add_block(&mut w, &block);
            q_vals.extend(q);
            partition.push(block);
        }
        let nslack = self.slack_index.iter().flatten().count();
        let mut q = vec![Rational::zero(); nslack];
        for (c, v) in q_vals {
            q[self.slack_index[c].expect("slack column")] = v;
        }
        CcOutcome::Found { partition, q }
    }

    /// Searches first blocks by increasing size, lexicographically.
    pub(crate) fn solve(&self) -> CcOutcome {
        let all: Vec<usize> = (0..self.cols.len()).collect();
        let mut result = CcOutcome::NotFound;
        let mut undecided = false;
        for k in 1..=all.len() {
            let done = combinations(&all, k, &mut |b| {
                let Some(q) = self.zero_sum(b) else {
                    return false;
                };
                match self.close(b, q) {
                    found @ CcOutcome::Found { .. } => {
                        result = found;
                        true
                    }
                    CcOutcome::Undecided => {
                        undecided = true;
                        false
                    }
                    CcOutcome::NotFound => false,
                }
            });
            if done {
                return result;
            }
        }
        if undecided {
            CcOutcome::Undecided
        } else {
            CcOutcome::NotFound
        }
    }
}

/// A columns-condition certificate for `a`, if one exists.
pub fn columns_condition(a: &RationalMatrix) -> Option<ColumnsCertificate> {
    if a.cols() == 0 {
        return None;
    }
    match CcProblem::from_matrix(a).solve() {
        CcOutcome::Found { partition, .. } => Some(ColumnsCertificate { partition }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_certificate() {
        let a = RationalMatrix::from_i64(&[vec![1, 1, -1]]);
        let c = columns_condition(&a).unwrap();
        assert_eq!(c.partition, vec![vec![0, 2], vec![1]]);
        assert_eq!(c.describe(), "I_0={c1,c3}, I_1={c2}");
        c.validate(&a).unwrap();
    }

    #[test]
    fn positive_row_fails() {
        assert!(columns_condition(&RationalMatrix::from_i64(&[vec![1, 1, 1]])).is_none());
        assert!(columns_condition(&RationalMatrix::from_i64(&[vec![2, -1]])).is_none());
    }

    #[test]
    fn summary_matrix_example() {
        let o = RationalMatrix::from_i64(&[vec![3, 0, -3, 0], vec![3, -3, 0, -1]]);
        let c = columns_condition(&o).unwrap();
        c.validate(&o).unwrap();
    }

    #[test]
    fn validation_rejects_bad_certificates() {
        let a = RationalMatrix::from_i64(&[vec![1, 1, -1]]);
        let bad = ColumnsCertificate {
            partition: vec![vec![0, 1], vec![2]],
        };
        assert_eq!(bad.validate(&a), Err(CertificateError::NonZeroFirstBlock));
        let bad = ColumnsCertificate {
            partition: vec![vec![0, 2]],
        };
        assert!(matches!(
            bad.validate(&a),
            Err(CertificateError::NotAPartition(3))
        ));
        let a = RationalMatrix::from_i64(&[vec![1, -1, 0], vec![0, 0, 1]]);
        let bad = ColumnsCertificate {
            partition: vec![vec![0, 1], vec![2]],
        };
        assert_eq!(bad.validate(&a), Err(CertificateError::OutsideSpan(1)));
    }

    #[test]
    fn slack_search_matches_augmented_example() {
        let p = CcProblem::new(
            2,
            vec![
                Col::Fixed(
                    vec![1.into(), (-1).into()]
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect(),
                ),
                Col::Fixed(
                    vec![1.into(), 0.into()]
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect(),
                ),
                Col::Fixed(
                    vec![(-1).into(), 1.into()]
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect(),
                ),
                Col::Slack(1),
            ],
        );
        match p.solve() {
            CcOutcome::Found { partition, q } => {
                assert_eq!(partition, vec![vec![0, 2], vec![1, 3]]);
                assert_eq!(q, vec![Rational::from_integer(1.into())]);
            }
            other => panic!("{other:?}"),
        }
    }
}
