use num_bigint::BigInt;
use proptest::prelude::*;
use rado_core::functionals::{
    build_functional_system, degree_scale, search_functionals, verify_functional,
    verify_functional_detailed, Direction, FunctionalCheck, RadoFunctional, SearchBounds,
};
use rado_core::linear_pr::MixedSystem;
use rado_core::oracle::{check_system_empirically, TestColoring};
use rado_core::polyalg::{default_var_names, parse_polynomial_auto, MultiIndex, Polynomial};
use rado_core::Status;

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..3, 3),
            prop::sample::select(vec![-4i64, -2, -1, 1, 2, 3]),
        ),
        2..=4,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            3,
            terms
                .into_iter()
                .map(|(e, c)| (MultiIndex(e), BigInt::from(c))),
        )
        .unwrap()
    })
    .prop_filter("nonzero, no constant", |p| {
        p.num_terms() >= 2 && !p.has_constant_term()
    })
}

fn bounds() -> SearchBounds {
    SearchBounds {
        s_max: 3,
        d_max: 12,
        ..SearchBounds::default()
    }
}

fn flip(a: &MultiIndex, d: &[u32]) -> MultiIndex {
    MultiIndex((0..d.len()).map(|i| d[i] - a.get(i)).collect())
}

/// `x^D P(1/x)` with `D` the componentwise maximal exponent; reverses every value `α·t`.
fn reflect(p: &Polynomial) -> (Polynomial, Vec<u32>) {
    let d: Vec<u32> = (0..p.nvars())
        .map(|i| p.support().iter().map(|a| a.get(i)).max().unwrap_or(0))
        .collect();
    let q = Polynomial::from_terms(
        p.nvars(),
        p.terms().iter().map(|(a, c)| (flip(a, &d), c.clone())),
    )
    .unwrap();
    (q, d)
}

type FamilyKey = (usize, Vec<Vec<MultiIndex>>, Vec<Vec<MultiIndex>>, i8);

/// Pinned blocks in order, tail blocks as a set.
fn family_key(f: &rado_core::functionals::FunctionalFamily, d: Option<&[u32]>) -> FamilyKey {
    let blocks: Vec<Vec<MultiIndex>> = f
        .blocks
        .iter()
        .map(|b| {
            let mut v: Vec<MultiIndex> = b
                .iter()
                .map(|a| d.map_or(a.clone(), |d| flip(a, d)))
                .collect();
            v.sort();
            v
        })
        .collect();
    let pinned = blocks[..=f.order].to_vec();
    let mut tail = blocks[f.order + 1..].to_vec();
    tail.sort();
    (f.order, pinned, tail, f.sign)
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// `Â t = b̂` with every inequality row above `margin`.
fn functional_system(f: &RadoFunctional, p: &Polynomial) -> MixedSystem {
    let m = build_functional_system(f, p).unwrap();
    MixedSystem::new(
        m.a_hat.clone(),
        m.b_hat_rat(),
        Vec::new(),
        m.inequality_rat(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_results_reverify(p in small_poly()) {
        let vars = default_var_names(3);
        let out = search_functionals(&p, &vars, &[Direction::Upper, Direction::Lower], &bounds()).unwrap();
        for c in &out.functionals {
            prop_assert_eq!(verify_functional(&c.functional, &p).status(), Status::ProvedPR);
            if c.functional.order >= 1 {
                for b in &c.functional.blocks {
                    prop_assert!(rado_core::polyalg::is_homogeneous(b));
                }
                // one integer s witnesses both the constant solution and the degree relation
                let s = degree_scale(&c.functional);
                prop_assert!(s.is_some());
                prop_assert_eq!(c.s.clone(), s);
            }
        }
    }

    #[test]
    fn lower_search_mirrors_upper_search_of_reflection(p in small_poly()) {
        let vars = default_var_names(3);
        let (q, d) = reflect(&p);
        let lo = search_functionals(&p, &vars, &[Direction::Lower], &bounds()).unwrap();
        let up = search_functionals(&q, &vars, &[Direction::Upper], &bounds()).unwrap();
        let lo_keys: Vec<_> = sorted(lo.families.iter().map(|f| family_key(f, Some(&d))).collect());
        let up_keys: Vec<_> = sorted(up.families.iter().map(|f| family_key(f, None)).collect());
        prop_assert_eq!(lo_keys, up_keys);
        for c in &lo.functionals {
            let f = &c.functional;
            let blocks = f.blocks.iter().map(|b| b.iter().map(|a| flip(a, &d)).collect()).collect();
            let g = RadoFunctional::new(Direction::Upper, blocks, f.order, f.increments.clone());
            prop_assert!(matches!(verify_functional_detailed(&g, &q, &vars), FunctionalCheck::Verified(_)));
        }
    }
}

#[test]
fn verified_functionals_have_monochromatic_witnesses() {
    let n = 60;
    let mut checked = 0;
    for text in [
        "x*z^2 - 4*y",
        "x*y^2 - 2*z",
        "x + y - z",
        "x^3 + y^3 - z^3",
        "x + y - z^2",
        "x*y - z^2",
    ] {
        let (p, vars) = parse_polynomial_auto(text).unwrap();
        let out = search_functionals(&p, &vars, &[Direction::Upper], &bounds()).unwrap();
        for c in &out.functionals {
            let sys = functional_system(&c.functional, &p);
            for coloring in [TestColoring::Parity, TestColoring::Halves(n / 2)] {
                let t = check_system_empirically(&sys, coloring, n, 3).unwrap();
                assert!(t.is_some(), "{text}: {} under {coloring:?}", c.functional);
                checked += 1;
            }
        }
    }
    assert!(checked >= 20);
}
