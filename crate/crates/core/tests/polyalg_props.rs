use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rado_core::polyalg::{
    default_var_names, in_span, parse_polynomial, rat, ratio, rational_roots, render_polynomial,
    sturm_count_roots, MultiIndex, Polynomial, Rational, RationalMatrix, UnivariatePoly,
};

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((prop::collection::vec(0u32..4, n), -20i64..=20), 0..6).prop_map(
            move |terms| {
                Polynomial::from_terms(
                    n,
                    terms
                        .into_iter()
                        .map(|(e, c)| (MultiIndex(e), BigInt::from(c))),
                )
                .unwrap()
            },
        )
    })
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Rank as the largest non-vanishing minor.
fn rank_by_minors(rows: &[Vec<i64>]) -> usize {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|ri| {
                subsets(c, k).iter().any(|ci| {
                    let m: Vec<Vec<i64>> = ri
                        .iter()
                        .map(|&i| ci.iter().map(|&j| rows[i][j]).collect())
                        .collect();
                    det(&m) != 0
                })
            })
        })
        .unwrap_or(0)
}

fn to_rat(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// `∏ (den·x − num)` times `x² + 1`, so the real roots are exactly the given rationals.
fn with_roots(roots: &[(i64, i64)]) -> UnivariatePoly {
    let mut p = UnivariatePoly::from_i64(&[1, 0, 1]);
    for &(num, den) in roots {
        p = mul(&p, &UnivariatePoly::from_i64(&[-num, den]));
    }
    p
}

fn mul(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    let mut out = vec![Rational::zero(); a.coeffs().len() + b.coeffs().len()];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    UnivariatePoly::new(out)
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

proptest! {
    #[test]
    fn parse_inverts_render(p in poly_strategy()) {
        let vars = default_var_names(p.nvars());
        let text = render_polynomial(&p, &vars);
        prop_assert_eq!(parse_polynomial(&text, &vars).unwrap(), p);
    }

    #[test]
    fn rref_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..5)) {
        let m = RationalMatrix::from_i64(&rows);
        let once = m.rref().matrix;
        prop_assert_eq!(once.rref().matrix, once.clone());
        prop_assert_eq!(m.rank(), rank_by_minors(&rows));
    }

    #[test]
    fn span_matches_minor_rank(
        basis in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3),
        v in prop::collection::vec(-3i64..=3, 3),
    ) {
        let b: Vec<Vec<Rational>> = basis.iter().map(|r| to_rat(r)).collect();
        let mut aug = basis.clone();
        aug.push(v.clone());
        let expected = rank_by_minors(&aug) == rank_by_minors(&basis);
        prop_assert_eq!(in_span(&to_rat(&v), &b).unwrap(), expected);
        // small integer combinations are always inside
        for c in [[1i64, 0, 0], [1, -1, 2], [-3, 2, 1]] {
            let w: Vec<i64> = (0..3).map(|k| (0..3).map(|i| c[i] * basis[i][k]).sum()).collect();
            prop_assert!(in_span(&to_rat(&w), &b).unwrap());
        }
    }

    #[test]
    fn sturm_counts_planted_roots(
        roots in prop::collection::btree_set((-12i64..=12, 1i64..=3), 0..6),
        lo in -15i64..=15,
        width in 0i64..=20,
    ) {
        let roots: Vec<(i64, i64)> = roots.into_iter().collect();
        let q = with_roots(&roots);
        let (lo, hi) = (rat(lo), rat(lo + width));
        let distinct: std::collections::BTreeSet<Rational> = roots.iter().map(|&(n, d)| ratio(n, d)).collect();
        let expected = distinct.iter().filter(|r| **r >= lo && **r <= hi).count();
        prop_assert_eq!(sturm_count_roots(&q, &lo, &hi).unwrap(), expected);
    }

    #[test]
    fn sturm_bounds_grid_sign_changes(coeffs in prop::collection::vec(-9i64..=9, 1..=9)) {
        let q = UnivariatePoly::from_i64(&coeffs);
        prop_assume!(!q.is_zero());
        let grid: Vec<Rational> = (-80..=80).map(|k| ratio(k, 8)).collect();
        let signs: Vec<i32> = grid.iter().map(|x| {
            let v = q.eval(x);
            if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 }
        }).collect();
        let zeros = signs.iter().filter(|&&s| s == 0).count();
        let nonzero: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        let changes = zeros.max(nonzero.windows(2).filter(|w| w[0] != w[1]).count());
        let n = sturm_count_roots(&q, &rat(-10), &rat(10)).unwrap();
        prop_assert!(n >= changes, "sturm {} < grid {}", n, changes);
        prop_assert!(n <= q.degree().unwrap_or(0));
    }

    #[test]
    fn rational_roots_are_exact_and_complete(coeffs in prop::collection::vec(-12i64..=12, 2..=6)) {
        let q = UnivariatePoly::from_i64(&coeffs);
        prop_assume!(q.degree().unwrap_or(0) >= 1 && coeffs[0] != 0);
        let found = rational_roots(&q).unwrap();
        for r in &found {
            prop_assert!(q.eval(r).is_zero());
        }
        let lead = *coeffs.iter().rev().find(|&&c| c != 0).unwrap();
        for p in divisors(coeffs[0]) {
            for d in divisors(lead) {
                for r in [ratio(p, d), ratio(-p, d)] {
                    prop_assert_eq!(q.eval(&r).is_zero(), found.contains(&r));
                }
            }
        }
    }
}

#[test]
fn planted_roots_fixed_cases() {
    let q = with_roots(&[(1, 1), (2, 1), (3, 2)]);
    assert_eq!(sturm_count_roots(&q, &rat(1), &rat(2)).unwrap(), 3);
    assert_eq!(
        sturm_count_roots(&q, &ratio(3, 2), &ratio(3, 2)).unwrap(),
        1
    );
    assert_eq!(
        rational_roots(&q).unwrap(),
        vec![rat(1), ratio(3, 2), rat(2)]
    );
    assert!(Rational::one() > Rational::zero());
}
