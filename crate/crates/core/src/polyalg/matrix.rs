//! Dense exact matrices over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arith::{fmt_rat, rat, Rational};

/// Shape errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Output of [`RationalMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Solutions of `A·s·1 = b` for a scalar `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantSolution {
    /// Exactly one scalar works.
    Unique(Rational),
    /// Every scalar works (all row sums and `b` vanish).
    Any,
    /// No scalar works.
    None,
}

impl ConstantSolution {
    /// An integer witness, if any (`0` for [`ConstantSolution::Any`]).
    pub fn integer(&self) -> Option<BigInt> {
        match self {
            ConstantSolution::Unique(s) if s.is_integer() => Some(s.to_integer()),
            ConstantSolution::Any => Some(BigInt::zero()),
            _ => None,
        }
    }

    /// A positive integer witness, if any (`1` for [`ConstantSolution::Any`]).
    pub fn natural(&self) -> Option<BigInt> {
        match self {
            ConstantSolution::Unique(s) if s.is_integer() && s > &Rational::zero() => {
                Some(s.to_integer())
            }
            ConstantSolution::Any => Some(BigInt::one()),
            _ => None,
        }
    }
}

/// Particular solution and kernel basis.
pub type AffineSolution = (Vec<Rational>, Vec<Vec<Rational>>);

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds from integer rows; panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_i64_cols(cols, rows)
    }

    /// Builds from integer rows with an explicit column count (for zero-row matrices).
    pub fn from_i64_cols(cols: usize, rows: &[Vec<i64>]) -> Self {
        RationalMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Reduced row-echelon form with leftmost-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in r.pivots.iter().enumerate() {
                    v[p] = -r.matrix.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Affine solution set of `A x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<AffineSolution>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = RationalMatrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let r = aug.rref();
        if r.pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix.get(i, self.cols).clone();
        }
        Ok(Some((x, self.kernel_basis())))
    }

    /// Scalars `s` with `A (s,…,s)ᵀ = b`.
    pub fn solve_constant(&self, b: &[Rational]) -> Result<ConstantSolution, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut found: Option<Rational> = None;
        for (sum, bi) in self.row_sums().iter().zip(b) {
            if sum.is_zero() {
                if !bi.is_zero() {
                    return Ok(ConstantSolution::None);
                }
                continue;
            }
            let s = bi / sum;
            match &found {
                Some(prev) if *prev != s => return Ok(ConstantSolution::None),
                _ => found = Some(s),
            }
        }
        Ok(match found {
            Some(s) => ConstantSolution::Unique(s),
            None => ConstantSolution::Any,
        })
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(fmt_rat).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `true` iff `v` lies in the ℚ-span of `basis` (rank test).
pub fn in_span(v: &[Rational], basis: &[Vec<Rational>]) -> Result<bool, LinAlgError> {
    for b in basis {
        if b.len() != v.len() {
            return Err(LinAlgError::DimensionMismatch {
                expected: v.len(),
                got: b.len(),
            });
        }
    }
    if basis.is_empty() {
        return Ok(v.iter().all(Zero::is_zero));
    }
    let m = RationalMatrix::from_rows(v.len(), basis.to_vec())?;
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    let mv = RationalMatrix::from_rows(v.len(), with)?;
    Ok(m.rank() == mv.rank())
}

/// Incrementally maintained subspace in echelon form.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis {
    dim: usize,
    /// Rows with a leading 1 at `pivots[i]`, fully reduced against each other.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj -= &f * rj;
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        let w: Vec<Rational> = w.iter().map(|x| x * &inv).collect();
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (rj, wj) in row.iter_mut().zip(&w) {
                *rj -= &f * wj;
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Basis vectors.
    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}
