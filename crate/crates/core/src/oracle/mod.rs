//! Finite ground truth: solutions in `[1..N]`, colorings avoiding monochromatic
//! solutions, and forcing thresholds.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linear_pr::MixedSystem;
use crate::polyalg::arith::denominator_lcm;
use crate::polyalg::{Polynomial, Rational};

/// Which solutions count as monochromatic witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionFilter {
    /// Every solution, constant ones included.
    #[default]
    All,
    /// Solutions with at least two distinct values.
    NonConstant,
}

impl SolutionFilter {
    fn keep(self, x: &[u64]) -> bool {
        match self {
            SolutionFilter::All => true,
            SolutionFilter::NonConstant => x.iter().any(|v| *v != x[0]),
        }
    }
}

/// Errors from the enumerators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("too many variables ({0}) for brute force")]
    TooManyVariables(usize),
    #[error("range must be at least 1")]
    EmptyRange,
    #[error("coefficients exceed the native integer range")]
    Overflow,
}

fn univariate_in_last(p: &Polynomial, prefix: &[i128]) -> Option<Vec<i128>> {
    let n = p.nvars();
    let mut coeffs: Vec<i128> = Vec::new();
    for (a, c) in p.terms() {
        let mut v = c.to_i128()?;
        for (i, x) in prefix.iter().enumerate() {
            for _ in 0..a.get(i) {
                v = v.checked_mul(*x)?;
            }
        }
        let k = a.get(n - 1) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = coeffs[k].checked_add(v)?;
    }
    Some(coeffs)
}

fn eval_i128(c: &[i128], t: i128) -> Option<i128> {
    c.iter()
        .rev()
        .try_fold(0i128, |acc, &x| acc.checked_mul(t)?.checked_add(x))
}

/// Roots of `c` in `[1, n]`, ascending.
fn roots_in_range(c: &[i128], n: u64) -> Vec<u64> {
    let Some(low) = c.iter().position(|x| *x != 0) else {
        return (1..=n).collect();
    };
    if low == c.len() - 1 {
        return Vec::new();
    }
    // nonzero roots divide the lowest nonzero coefficient
    let a = c[low].unsigned_abs();
    let mut out = Vec::new();
    let mut push = |t: u64| {
        if t <= n && eval_i128(c, t as i128) == Some(0) {
            out.push(t);
        }
    };
    if a <= (n as u128) * (n as u128) {
        let mut d = 1u128;
        while d * d <= a {
            if a.is_multiple_of(d) {
                push(d as u64);
                if d * d != a && a / d <= n as u128 {
                    push((a / d) as u64);
                }
            }
            d += 1;
        }
    } else {
        for t in 1..=n {
            if a.is_multiple_of(t as u128) {
                push(t);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All solutions of `P = 0` with coordinates in `[1, n]`, lexicographic order.
pub fn enumerate_solutions(p: &Polynomial, n: u64) -> Result<Vec<Vec<u64>>, OracleError> {
    let nv = p.nvars();
    if nv > 6 {
        return Err(OracleError::TooManyVariables(nv));
    }
    if n == 0 {
        return Err(OracleError::EmptyRange);
    }
    let mut out = Vec::new();
    let mut prefix = vec![1u64; nv.saturating_sub(1)];
    loop {
        let pre: Vec<i128> = prefix.iter().map(|&x| x as i128).collect();
        let lasts = match univariate_in_last(p, &pre) {
            Some(c) => roots_in_range(&c, n),
            None => (1..=n)
                .filter(|&t| {
                    let x: Vec<BigInt> = prefix
                        .iter()
                        .chain([&t])
                        .map(|&v| BigInt::from(v))
                        .collect();
                    p.eval(&x).is_zero()
                })
                .collect(),
        };
        for t in lasts {
            let mut x = prefix.clone();
            x.push(t);
            out.push(x);
        }
        // odometer
        let mut i = prefix.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if prefix[i] < n {
                prefix[i] += 1;
                for v in &mut prefix[i + 1..] {
                    *v = 1;
                }
                break;
            }
        }
    }
}

/// Solutions of a mixed system in `[1, n]^k`: equalities exact, inequality rows `> margin`
/// (strict rows `> 0`).
pub fn enumerate_system_solutions(
    sys: &MixedSystem,
    n: u64,
    margin: i64,
) -> Result<Vec<Vec<u64>>, OracleError> {
    let k = sys.ncols();
    if k > 5 {
        return Err(OracleError::TooManyVariables(k));
    }
    if n == 0 {
        return Err(OracleError::EmptyRange);
    }
    // rows scaled to integers: `(row, rhs)` with `row·t ⋈ rhs`
    let scale = |r: &[Rational], rhs: &Rational| -> Option<(Vec<i128>, i128)> {
        let l = denominator_lcm(r.iter().chain(std::iter::once(rhs)));
        let to = |x: &Rational| {
            (x * Rational::from_integer(l.clone()))
                .to_integer()
                .to_i128()
        };
        Some((r.iter().map(to).collect::<Option<_>>()?, to(rhs)?))
    };
    let margin = Rational::from_integer(margin.into());
    let zero = Rational::zero();
    let eq: Vec<(Vec<i128>, i128)> = sys
        .a
        .row_vecs()
        .iter()
        .zip(&sys.d)
        .map(|(r, d)| scale(r, d))
        .collect::<Option<_>>()
        .ok_or(OracleError::Overflow)?;
    let strict: Vec<(Vec<i128>, i128)> = sys
        .strict
        .iter()
        .map(|r| scale(r, &zero))
        .collect::<Option<_>>()
        .ok_or(OracleError::Overflow)?;
    let unbounded: Vec<(Vec<i128>, i128)> = sys
        .unbounded
        .iter()
        .map(|r| scale(r, &margin))
        .collect::<Option<_>>()
        .ok_or(OracleError::Overflow)?;
    let dot =
        |r: &[i128], t: &[u64]| -> i128 { r.iter().zip(t).map(|(a, &x)| a * x as i128).sum() };
    let mut out = Vec::new();
    let mut t = vec![1u64; k];
    loop {
        let ok = eq.iter().all(|(r, d)| dot(r, &t) == *d)
            && strict
                .iter()
                .chain(&unbounded)
                .all(|(r, m)| dot(r, &t) > *m);
        if ok {
            out.push(t.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if t[i] < n {
                t[i] += 1;
                for v in &mut t[i + 1..] {
                    *v = 1;
                }
                break;
            }
        }
    }
}

/// A coloring of `[1, N]` with colors `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringWitness {
    #[serde(rename = "N")]
    pub n: u64,
    pub k: u8,
    pub colors: Vec<u8>,
}

impl ColoringWitness {
    pub fn color(&self, v: u64) -> u8 {
        self.colors[(v - 1) as usize]
    }

    /// Color classes as sorted value lists.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        (1..=self.k)
            .map(|c| (1..=self.n).filter(|&v| self.color(v) == c).collect())
            .collect()
    }

    /// First monochromatic solution among `solutions`, if any.
    pub fn monochromatic<'a>(&self, solutions: &'a [Vec<u64>]) -> Option<&'a Vec<u64>> {
        solutions.iter().find(|x| {
            x.iter().all(|&v| v >= 1 && v <= self.n)
                && x.iter().all(|&v| self.color(v) == self.color(x[0]))
        })
    }

    /// Rescans every solution of `P` in range.
    pub fn verify(&self, p: &Polynomial, filter: SolutionFilter) -> bool {
        let sols: Vec<Vec<u64>> = match enumerate_solutions(p, self.n) {
            Ok(s) => s.into_iter().filter(|x| filter.keep(x)).collect(),
            Err(_) => return false,
        };
        self.colors.len() == self.n as usize && self.monochromatic(&sols).is_none()
    }
}

/// Search limits; exceeding them yields [`AvoidOutcome::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 50_000_000,
            time: None,
        }
    }
}

/// Result of a coloring search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AvoidOutcome {
    Found(ColoringWitness),
    /// Every coloring has a monochromatic solution (exhaustive).
    None,
    BudgetExceeded,
}

impl AvoidOutcome {
    pub fn witness(&self) -> Option<&ColoringWitness> {
        match self {
            AvoidOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

struct Search {
    k: u8,
    domain: Vec<u8>,
    color: Vec<Option<u8>>,
    sols: Vec<Vec<usize>>,
    occurs: Vec<Vec<usize>>,
    trail: Vec<(usize, u8, Option<u8>)>,
    nodes: u64,
    budget: Budget,
    deadline: Option<Instant>,
    out_of_budget: bool,
}

impl Search {
    fn set_domain(&mut self, v: usize, d: u8) {
        self.trail.push((v, self.domain[v], self.color[v]));
        self.domain[v] = d;
    }

    fn assign(&mut self, v: usize, c: u8) -> bool {
        let mut queue = vec![(v, c)];
        while let Some((v, c)) = queue.pop() {
            match self.color[v] {
                Some(x) if x == c => continue,
                Some(_) => return false,
                None => {}
            }
            if self.domain[v] & (1 << c) == 0 {
                return false;
            }
            self.trail.push((v, self.domain[v], self.color[v]));
            self.color[v] = Some(c);
            self.domain[v] = 1 << c;
            for si in 0..self.occurs[v].len() {
                let s = self.occurs[v][si];
                let mut free = None;
                let mut n_free = 0;
                let mut broken = false;
                for &w in &self.sols[s] {
                    match self.color[w] {
                        Some(x) if x != c => {
                            broken = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            if self.domain[w] & (1 << c) != 0 {
                                n_free += 1;
                                free = Some(w);
                            } else {
                                broken = true;
                                break;
                            }
                        }
                    }
                }
                if broken {
                    continue;
                }
                match (n_free, free) {
                    (0, _) => return false,
                    (1, Some(w)) => {
                        let d = self.domain[w] & !(1 << c);
                        if d == 0 {
                            return false;
                        }
                        self.set_domain(w, d);
                        if d.count_ones() == 1 {
                            queue.push((w, d.trailing_zeros() as u8));
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, d, c) = self.trail.pop().expect("trail");
            self.domain[v] = d;
            self.color[v] = c;
        }
    }

    fn dfs(&mut self, next: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes.is_multiple_of(4096)
                && self.deadline.is_some_and(|d| Instant::now() > d))
        {
            self.out_of_budget = true;
            return false;
        }
        let Some(v) = (next..self.color.len()).find(|&v| self.color[v].is_none()) else {
            return true;
        };
        for c in 0..self.k {
            if self.domain[v] & (1 << c) == 0 {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(v, c) && self.dfs(v + 1) {
                return true;
            }
            self.undo(mark);
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Backtracking search for a `k`-coloring of `[1, n]` with no monochromatic
/// solution among `solutions`. The smallest involved value gets color 1.
pub fn avoid_coloring(solutions: &[Vec<u64>], k: u8, n: u64, budget: Budget) -> AvoidOutcome {
    assert!((1..=8).contains(&k), "1 ≤ k ≤ 8");
    let mut involved: Vec<u64> = solutions
        .iter()
        .flatten()
        .copied()
        .filter(|&v| v <= n)
        .collect();
    involved.sort_unstable();
    involved.dedup();
    let index = |v: u64| involved.binary_search(&v).ok();
    let mut sols: Vec<Vec<usize>> = Vec::new();
    for x in solutions {
        if x.iter().any(|&v| v == 0 || v > n) {
            continue;
        }
        let mut s: Vec<usize> = x.iter().map(|&v| index(v).expect("involved")).collect();
        s.sort_unstable();
        s.dedup();
        sols.push(s);
    }
    sols.sort();
    sols.dedup();
    let mut occurs = vec![Vec::new(); involved.len()];
    for (i, s) in sols.iter().enumerate() {
        for &v in s {
            occurs[v].push(i);
        }
    }
    let full = if k == 8 { u8::MAX } else { (1u8 << k) - 1 };
    let mut search = Search {
        k,
        domain: vec![full; involved.len()],
        color: vec![None; involved.len()],
        sols,
        occurs,
        trail: Vec::new(),
        nodes: 0,
        budget,
        deadline: budget.time.map(|t| Instant::now() + t),
        out_of_budget: false,
    };
    // a single-value solution can never be colored
    if search.sols.iter().any(|s| s.len() == 1) {
        return AvoidOutcome::None;
    }
    if !involved.is_empty() {
        search.domain[0] = 1;
    }
    if search.dfs(0) {
        let mut colors = vec![1u8; n as usize];
        for (i, &v) in involved.iter().enumerate() {
            colors[(v - 1) as usize] = search.color[i].expect("complete assignment") + 1;
        }
        AvoidOutcome::Found(ColoringWitness { n, k, colors })
    } else if search.out_of_budget {
        AvoidOutcome::BudgetExceeded
    } else {
        AvoidOutcome::None
    }
}

/// [`avoid_coloring`] on the solutions of `P = 0` in `[1, n]`.
pub fn search_avoiding_coloring(
    p: &Polynomial,
    k: u8,
    n: u64,
    filter: SolutionFilter,
    budget: Budget,
) -> Result<AvoidOutcome, OracleError> {
    let sols: Vec<Vec<u64>> = enumerate_solutions(p, n)?
        .into_iter()
        .filter(|x| filter.keep(x))
        .collect();
    Ok(avoid_coloring(&sols, k, n, budget))
}

/// Outcome of [`min_forcing_n`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Forcing {
    /// Least `N` where every coloring has a monochromatic solution.
    At(u64),
    /// Avoiding colorings exist for every `N ≤ n_max`.
    NotWithin,
    BudgetExceeded(u64),
}

/// Least `N ≤ n_max` such that every `k`-coloring of `[1, N]` has a monochromatic solution.
pub fn min_forcing_n(
    solutions_up_to: impl Fn(u64) -> Vec<Vec<u64>>,
    k: u8,
    n_max: u64,
    budget: Budget,
) -> Forcing {
    let all = solutions_up_to(n_max);
    for n in 1..=n_max {
        let sols: Vec<Vec<u64>> = all
            .iter()
            .filter(|x| x.iter().all(|&v| v <= n))
            .cloned()
            .collect();
        match avoid_coloring(&sols, k, n, budget) {
            AvoidOutcome::Found(_) => {}
            AvoidOutcome::None => return Forcing::At(n),
            AvoidOutcome::BudgetExceeded => return Forcing::BudgetExceeded(n),
        }
    }
    Forcing::NotWithin
}

/// [`min_forcing_n`] for a polynomial equation.
pub fn min_forcing_n_poly(
    p: &Polynomial,
    k: u8,
    n_max: u64,
    filter: SolutionFilter,
    budget: Budget,
) -> Result<Forcing, OracleError> {
    let all: Vec<Vec<u64>> = enumerate_solutions(p, n_max)?
        .into_iter()
        .filter(|x| filter.keep(x))
        .collect();
    Ok(min_forcing_n(|_| all.clone(), k, n_max, budget))
}

/// Fixed colorings used for empirical checks (colors are 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestColoring {
    Parity,
    /// `⌊log₂ v⌋ mod 2`.
    GeometricBlocks,
    /// `ν₂(v) mod 2`.
    Nu2Parity,
    /// `v > h`.
    Halves(u64),
}

impl TestColoring {
    pub const ALL: [TestColoring; 3] = [
        TestColoring::Parity,
        TestColoring::GeometricBlocks,
        TestColoring::Nu2Parity,
    ];

    pub fn color(self, v: u64) -> u8 {
        match self {
            TestColoring::Parity => (v % 2) as u8,
            TestColoring::GeometricBlocks => ((63 - v.leading_zeros()) % 2) as u8,
            TestColoring::Nu2Parity => (v.trailing_zeros() % 2) as u8,
            TestColoring::Halves(h) => u8::from(v > h),
        }
    }
}

/// First monochromatic solution of the system in `[1, n]` under `coloring`,
/// with inequality rows exceeding `margin`.
pub fn check_system_empirically(
    sys: &MixedSystem,
    coloring: TestColoring,
    n: u64,
    margin: i64,
) -> Result<Option<Vec<u64>>, OracleError> {
    Ok(enumerate_system_solutions(sys, n, margin)?
        .into_iter()
        .find(|t| t.iter().all(|&v| coloring.color(v) == coloring.color(t[0]))))
}

/// Applies `filter` to a solution list.
pub fn filter_solutions(sols: Vec<Vec<u64>>, filter: SolutionFilter) -> Vec<Vec<u64>> {
    sols.into_iter().filter(|x| filter.keep(x)).collect()
}

/// `true` when `P` has a constant solution `(s, …, s)` with `1 ≤ s ≤ n`.
pub fn constant_solution_up_to(p: &Polynomial, n: u64) -> Option<u64> {
    (1..=n).find(|&s| p.eval(&vec![BigInt::from(s); p.nvars()]).is_zero())
}

/// Sign-stable helper for witness JSON: colors as classes.
pub fn classes_json(w: &ColoringWitness) -> serde_json::Value {
    serde_json::json!(w.classes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{default_var_names, parse_polynomial};

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, &default_var_names(3)).unwrap()
    }

    #[test]
    fn schur_solutions() {
        let s = enumerate_solutions(&poly("x + y - z"), 4).unwrap();
        let want: Vec<Vec<u64>> = vec![
            vec![1, 1, 2],
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![2, 1, 3],
            vec![2, 2, 4],
            vec![3, 1, 4],
        ];
        assert_eq!(s, want);
        assert!(enumerate_solutions(&poly("x^3 + y^3 - z^3"), 50)
            .unwrap()
            .is_empty());
        let s = enumerate_solutions(&poly("x*z^2 - 4*y"), 2).unwrap();
        assert_eq!(s, vec![vec![1, 1, 2], vec![2, 2, 2]]);
    }

    #[test]
    fn schur_coloring() {
        let p = poly("x + y - z");
        let b = Budget::default();
        let w = search_avoiding_coloring(&p, 2, 4, SolutionFilter::All, b).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.classes(), vec![vec![1, 4], vec![2, 3]]);
        assert!(w.verify(&p, SolutionFilter::All));
        assert_eq!(
            search_avoiding_coloring(&p, 2, 5, SolutionFilter::All, b).unwrap(),
            AvoidOutcome::None
        );
        assert_eq!(
            min_forcing_n_poly(&p, 2, 20, SolutionFilter::All, b).unwrap(),
            Forcing::At(5)
        );
    }

    #[test]
    fn valuation_coloring_avoids() {
        let p = poly("x*z^2 - 8*y");
        let w =
            search_avoiding_coloring(&p, 2, 32, SolutionFilter::All, Budget::default()).unwrap();
        assert!(w.witness().unwrap().verify(&p, SolutionFilter::All));
    }

    #[test]
    fn budget_is_distinct() {
        let p = poly("x + y - z");
        let tiny = Budget {
            max_nodes: 3,
            time: None,
        };
        assert_eq!(
            search_avoiding_coloring(&p, 3, 13, SolutionFilter::All, tiny).unwrap(),
            AvoidOutcome::BudgetExceeded
        );
    }

    #[test]
    fn empirical_system() {
        let sys = MixedSystem::from_i64(&[vec![1, 1, -1]], &[0], &[], &[]).unwrap();
        let t = check_system_empirically(&sys, TestColoring::Parity, 20, 0)
            .unwrap()
            .unwrap();
        assert_eq!(t, vec![2, 2, 4]);
    }
}
