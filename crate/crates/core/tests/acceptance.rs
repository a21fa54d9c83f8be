//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rado_core::conditions::{
    certify_pr_complete, complete_q_polynomial, generate_solutions, maximal_rado_check,
    scaling_identity_holds, MrcStatus, TargetSet,
};
use rado_core::functionals::{
    assemble_o, search_functionals, validate_corollaries, CorollaryViolation, Direction,
    RadoFunctional, SearchBounds,
};
use rado_core::linear_pr::{
    columns_condition, decide_infinitely_pr, decide_inhomogeneous_pr, decide_linear_pr,
    decide_mixed_strict, decide_mixed_unbounded, MixedBranch, MixedSystem,
};
use rado_core::oracle::{
    avoid_coloring, enumerate_solutions, enumerate_system_solutions, min_forcing_n_poly,
    search_avoiding_coloring, AvoidOutcome, Budget, Forcing, SolutionFilter,
};
use rado_core::pipeline::{parse_corpus, run_batch, AnalyzeOptions, SHIPPED_CORPUS};
use rado_core::polyalg::{
    parse_polynomial_auto, rat, rational_roots, MultiIndex, Polynomial, Rational, RationalMatrix,
};
use rado_core::threevar::{decide_hform_pr, is_power_in_q, Domain};
use rado_core::{Certificate, ObstructionWitness, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn poly(s: &str) -> Polynomial {
    parse_polynomial_auto(s).expect("parses").0
}

fn budget() -> Budget {
    Budget {
        max_nodes: 50_000_000,
        time: None,
    }
}

fn rows(r: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    r.iter()
        .map(|v| v.iter().map(|&x| rat(x)).collect())
        .collect()
}

fn criterion_1() -> Outcome {
    let a = RationalMatrix::from_i64(&[vec![1, 1, -1]]);
    let v = decide_linear_pr(&a);
    let Some(Certificate::Columns { matrix, columns }) = v.certificate() else {
        return Err(format!("x+y=z: {}", v.summary()));
    };
    columns
        .validate(matrix)
        .map_err(|e| format!("certificate does not re-validate: {e}"))?;
    let v = decide_linear_pr(&RationalMatrix::from_i64(&[vec![2, -1]]));
    ensure(
        v.status() == Status::ProvedNotPR,
        format!("2x=y: {}", v.summary()),
    )?;
    let schur = poly("x + y - z");
    let f = min_forcing_n_poly(&schur, 2, 20, SolutionFilter::All, budget())
        .map_err(|e| e.to_string())?;
    ensure(f == Forcing::At(5), format!("Schur forcing N = {f:?}"))?;
    let double = poly("2*x - y");
    match search_avoiding_coloring(&double, 2, 50, SolutionFilter::All, budget())
        .map_err(|e| e.to_string())?
    {
        AvoidOutcome::Found(w) if w.verify(&double, SolutionFilter::All) => {}
        other => return Err(format!("2x=y on [1..50]: {other:?}")),
    }
    Ok("CC certificate partition re-validates; forcing N = 5; 2x=y avoided on [1..50]".into())
}

fn criterion_2() -> Outcome {
    let a = RationalMatrix::from_i64(&[vec![1, 1, 1]]);
    let b = vec![rat(3)];
    let v = decide_inhomogeneous_pr(&a, &b);
    match v.certificate() {
        Some(Certificate::ConstantSolution { s, clause: 1, .. }) if s.is_one() => {}
        _ => return Err(format!("x+y+z=3: {}", v.summary())),
    }
    let inf = decide_infinitely_pr(&a, &b);
    ensure(
        inf.status() == Status::ProvedNotPR,
        format!("infinite notion: {}", inf.summary()),
    )?;
    let sys = MixedSystem::from_i64(&[vec![1, 1, 1]], &[3], &[], &[]).map_err(|e| e.to_string())?;
    let sols = enumerate_system_solutions(&sys, 30, 0).map_err(|e| e.to_string())?;
    ensure(
        sols == vec![vec![1, 1, 1]],
        format!("solutions in [1..30]: {sols:?}"),
    )?;
    Ok("natural constant s = 1; not infinitely PR; (1,1,1) is the only solution in [1..30]".into())
}

fn criterion_3() -> Outcome {
    let a = RationalMatrix::from_i64(&[vec![1, 1, -1]]);
    let v = decide_mixed_unbounded(&a, &rows(&[vec![-1, 0, 1]]));
    let Some(Certificate::Mixed(c)) = v.certificate() else {
        return Err(format!("z−x≫0: {}", v.summary()));
    };
    c.validate().map_err(|e| e.to_string())?;
    ensure(
        c.branch == MixedBranch::Homogeneous && c.q == vec![rat(1)],
        format!("branch {:?}, q {:?}", c.branch, c.q),
    )?;
    let expected = RationalMatrix::from_i64(&[vec![1, 1, -1, 0], vec![-1, 0, 1, -1]]);
    ensure(
        c.augmented.as_ref() == Some(&expected),
        "augmented matrix differs",
    )?;
    ensure(
        columns_condition(&expected).is_some(),
        "augmented matrix fails the columns condition",
    )?;
    let v = decide_mixed_unbounded(&a, &rows(&[vec![1, 0, -1]]));
    ensure(
        v.status() == Status::ProvedNotPR,
        format!("x−z≫0: {}", v.summary()),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let eq: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
        let ineq: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let a = RationalMatrix::from_i64(std::slice::from_ref(&eq));
        let r = rows(std::slice::from_ref(&ineq));
        let (s, u) = (
            decide_mixed_strict(&a, &r).status(),
            decide_mixed_unbounded(&a, &r).status(),
        );
        ensure(
            s == u,
            format!("{eq:?} / {ineq:?}: strict {s} vs unbounded {u}"),
        )?;
    }
    Ok("q = 1 certificate with the expected augmented matrix; 100 random systems agree".into())
}

/// Ordered set partitions of `0..n`.
fn ordered_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for mask in 1u32..1 << n {
        let first: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        for tail in ordered_partitions(rest.len()) {
            let mut p = vec![first.clone()];
            p.extend(
                tail.into_iter()
                    .map(|b| b.into_iter().map(|i| rest[i]).collect()),
            );
            out.push(p);
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let p = poly("x^3 + y^3 - z^3");
    let vars = ["x", "y", "z"].map(String::from);
    let out = search_functionals(&p, &vars, &[Direction::Upper], &SearchBounds::default())
        .map_err(|e| e.to_string())?;
    let j0 = vec![MultiIndex(vec![3, 0, 0]), MultiIndex(vec![0, 0, 3])];
    let f = out
        .functionals
        .iter()
        .map(|c| &c.functional)
        .find(|f| f.order == 0 && f.blocks[0] == j0)
        .ok_or("order-0 functional with J_0 = {(3,0,0),(0,0,3)} not found")?;
    let o = assemble_o(f, &p, &[rat(1)]).map_err(|e| e.to_string())?;
    let expected = RationalMatrix::from_i64(&[vec![3, 0, -3, 0], vec![3, -3, 0, -1]]);
    ensure(o == expected, format!("O = {:?}", o.row_vecs()))?;
    let supp = p.support();
    let mut rejected = 0;
    for part in ordered_partitions(supp.len())
        .into_iter()
        .filter(|b| b.len() >= 2)
    {
        let blocks: Vec<Vec<MultiIndex>> = part
            .iter()
            .map(|b| b.iter().map(|&i| supp[i].clone()).collect())
            .collect();
        for m in 1..blocks.len() {
            for d in 1..=3i64 {
                let inc = (0..m).map(|i| BigInt::from(d * (m - i) as i64)).collect();
                let cand = RadoFunctional::new(Direction::Upper, blocks.clone(), m, inc);
                let v = validate_corollaries(&cand, &p);
                ensure(
                    v.contains(&CorollaryViolation::HomogeneousOrder),
                    format!("{cand} not rejected: {v:?}"),
                )?;
                rejected += 1;
            }
        }
    }
    Ok(format!(
        "J_0 found, O matches exactly; {rejected} order ≥ 1 candidates rejected"
    ))
}

fn criterion_5() -> Outcome {
    let cubes = poly("x^3 + y^3 - z^3");
    let r = maximal_rado_check(&cubes, &[2, 3, 4, 5, 7, 16], &SearchBounds::default());
    ensure(
        r.status == MrcStatus::Holds,
        format!("cubes: {:?}", r.status),
    )?;
    ensure(
        r.order_zero.iter().any(|q| q.is_zero()),
        "no order-0 polynomial vanishes identically",
    )?;
    let sols = enumerate_solutions(&cubes, 50).map_err(|e| e.to_string())?;
    ensure(sols.is_empty(), format!("cube solutions: {sols:?}"))?;
    let sq = poly("x + y - z^2");
    let r = maximal_rado_check(&sq, &[2, 3, 4, 5, 7, 16], &SearchBounds::default());
    ensure(
        r.status == MrcStatus::Fails,
        format!("x+y=z²: {:?}", r.status),
    )?;
    let sols = enumerate_solutions(&sq, 40).map_err(|e| e.to_string())?;
    match avoid_coloring(&sols, 2, 40, budget()) {
        AvoidOutcome::Found(w) if w.monochromatic(&sols).is_none() => Ok(
            "cubes hold with Q ≡ 0 and no solutions; x+y=z² fails and is 2-colorable on [1..40]"
                .into(),
        ),
        AvoidOutcome::Found(_) => Err("oracle witness does not verify".into()),
        AvoidOutcome::BudgetExceeded => Err("oracle budget exceeded".into()),
        AvoidOutcome::None => {
            let constant = sols
                .iter()
                .find(|x| x.iter().all(|&v| v == x[0]))
                .cloned()
                .unwrap_or_default();
            let nonconstant: Vec<Vec<u64>> = sols
                .iter()
                .filter(|x| !x.iter().all(|&v| v == x[0]))
                .cloned()
                .collect();
            let largest = (1..=40u64)
                .rev()
                .find(|&n| {
                    let s: Vec<Vec<u64>> = nonconstant
                        .iter()
                        .filter(|x| x.iter().all(|&v| v <= n))
                        .cloned()
                        .collect();
                    matches!(avoid_coloring(&s, 2, n, budget()), AvoidOutcome::Found(_))
                })
                .unwrap_or(0);
            Err(format!(
                "no 2-coloring of [1..40] avoids x+y=z²: {constant:?} is monochromatic under every coloring; \
                 without constant solutions the largest avoidable range is [1..{largest}]"
            ))
        }
    }
}

fn criterion_6() -> Outcome {
    let p = poly("x*z^2 - 4*y");
    let vars = ["x", "y", "z"].map(String::from);
    let out = search_functionals(&p, &vars, &[Direction::Upper], &SearchBounds::default())
        .map_err(|e| e.to_string())?;
    let cert = out
        .complete_families()
        .filter_map(|fam| fam.member(fam.sign as i64))
        .map(|f| certify_pr_complete(&p, &vars, &f, &TargetSet::Naturals))
        .find(|v| v.status() == Status::ProvedPR)
        .ok_or("xz²=4y: no complete-functional certificate")?;
    let Some(Certificate::CompleteRoot(c)) = cert.certificate() else {
        return Err("unexpected certificate kind".into());
    };
    ensure(c.root == BigInt::from(2), format!("root {}", c.root))?;
    let batch =
        generate_solutions(&p, &c.functional.functional, &c.root, 3).map_err(|e| e.to_string())?;
    ensure(
        batch.solutions.len() >= 3,
        format!("{} solutions", batch.solutions.len()),
    )?;
    for x in &batch.solutions {
        ensure(p.eval(x).is_zero(), format!("{x:?} is not a solution"))?;
        ensure(
            x.iter()
                .all(|v| v.is_positive() && (v & (v - 1u32)).is_zero()),
            format!("{x:?} has a non-power of 2"),
        )?;
    }
    let q2 = poly("x*y^2 - 2*z");
    let out = search_functionals(&q2, &vars, &[Direction::Upper], &SearchBounds::default())
        .map_err(|e| e.to_string())?;
    let target = RadoFunctional::upper(&[&[&[0, 0, 1]], &[&[1, 2, 0]]], &[2]);
    ensure(
        out.functionals.iter().any(|c| c.functional == target),
        "complete functional ({z},{xy²},2) not found",
    )?;
    let q = complete_q_polynomial(&q2, &target)
        .map_err(|e| e.to_string())?
        .poly;
    ensure(
        q.coeffs() == [rat(1), rat(0), rat(-2)].as_slice(),
        format!("Q = {:?}", q.coeffs()),
    )?;
    let roots = rational_roots(&q).map_err(|e| e.to_string())?;
    ensure(
        !roots.iter().any(|r| r.is_integer() && r.is_positive()),
        "Q has a natural root",
    )?;
    let v = decide_hform_pr(&q2, Domain::Naturals);
    ensure(
        v.status() == Status::ProvedNotPR,
        format!("xy²=2z: {}", v.summary()),
    )?;
    match search_avoiding_coloring(&q2, 2, 32, SolutionFilter::All, budget())
        .map_err(|e| e.to_string())?
    {
        AvoidOutcome::Found(w) if w.verify(&q2, SolutionFilter::All) => {}
        other => return Err(format!("no oracle witness on [1..32]: {other:?}")),
    }
    Ok(format!(
        "root 2 with {} power-of-2 solutions; Q = 1 − 2w² has no natural root; NotPR corroborated",
        batch.solutions.len()
    ))
}

/// `∃ r = ±u/v, u, v ≤ 64: r^m = (a/b)^n`.
fn brute_power_in_q(a: i64, b: i64, m: i64, n: u64) -> bool {
    let pow = |x: &Rational, e: i64| {
        let mut out = Rational::one();
        for _ in 0..e.unsigned_abs() {
            out *= x;
        }
        if e < 0 {
            out.recip()
        } else {
            out
        }
    };
    let target = pow(&Rational::new(a.into(), b.into()), n as i64);
    (1..=64i64).any(|u| {
        (1..=64i64).any(|v| {
            u.gcd(&v) == 1
                && [u, -u]
                    .iter()
                    .any(|&s| pow(&Rational::new(s.into(), v.into()), m) == target)
        })
    })
}

fn criterion_7() -> Outcome {
    let p8 = poly("x*z^2 - 8*y");
    let v = decide_hform_pr(&p8, Domain::Naturals);
    let Some(ObstructionWitness::Valuation(c)) = v.obstruction().and_then(|o| o.witness.clone())
    else {
        return Err(format!("xz²=8y: {}", v.summary()));
    };
    ensure(
        c.primes == vec![2],
        format!("obstructing primes {:?}", c.primes),
    )?;
    let sols = enumerate_solutions(&p8, 64).map_err(|e| e.to_string())?;
    for x in &sols {
        let c0 = c.color(&BigInt::from(x[0]));
        ensure(
            x.iter().any(|&y| c.color(&BigInt::from(y)) != c0),
            format!("{x:?} monochromatic"),
        )?;
    }
    let v = decide_hform_pr(&poly("x*z^2 - 4*y"), Domain::Naturals);
    match v.certificate() {
        Some(Certificate::Power(pc)) if pc.l == Some(BigInt::from(2)) => {}
        _ => return Err(format!("xz²=4y: {}", v.summary())),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let a: i64 = rng.gen_range(-64..=64);
        let b: i64 = rng.gen_range(-64..=64);
        let m: i64 = rng.gen_range(-4..=4);
        let n: u64 = rng.gen_range(1..=4);
        if a == 0 || b == 0 || m == 0 || m.unsigned_abs().gcd(&n) != 1 || n > m.unsigned_abs() {
            continue;
        }
        let fast = is_power_in_q(&BigInt::from(a), &BigInt::from(b), m, n);
        ensure(
            fast == brute_power_in_q(a, b, m, n),
            format!("({a},{b},{m},{n}): test says {fast}"),
        )?;
        if n == 1 {
            // a·x·z^m = b·y, shifted to nonnegative exponents
            let (ex, ey) = if m > 0 {
                (m as u32, 0)
            } else {
                (0, (-m) as u32)
            };
            let h = Polynomial::from_terms(
                3,
                [
                    (MultiIndex(vec![1, 0, ex]), BigInt::from(a)),
                    (MultiIndex(vec![0, 1, ey]), BigInt::from(-b)),
                ],
            )
            .map_err(|e| e.to_string())?;
            let st = decide_hform_pr(&h, Domain::Rationals).status();
            ensure(
                (st == Status::ProvedPR) == fast,
                format!("H-form ({a},{b},{m}): {st}"),
            )?;
        }
        checked += 1;
    }
    Ok("prime 2 coloring solution-free on [1..64]; l = 2; 200 random power tests agree".into())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 50 {
        let l = rng.gen_range(1..=2usize);
        let mut degrees: Vec<u32> = (0..=l).map(|_| rng.gen_range(1..=4)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        degrees.dedup();
        if degrees.len() != l + 1 {
            continue;
        }
        let s = rng.gen_range(1..=3i64);
        let mut blocks = Vec::new();
        let mut terms = Vec::new();
        for &d in &degrees {
            let i = rng.gen_range(0..=d);
            let j = rng.gen_range(0..=d - i);
            let m = MultiIndex(vec![i, j, d - i - j]);
            let c: i64 = [-4, -3, -2, -1, 1, 2, 3, 4][rng.gen_range(0..8)];
            terms.push((m.clone(), BigInt::from(c)));
            blocks.push(vec![m]);
        }
        let last = degrees[l] as i64;
        let inc = degrees[..l]
            .iter()
            .map(|&d| BigInt::from(s * (d as i64 - last)))
            .collect();
        let f = RadoFunctional::new(Direction::Upper, blocks, l, inc);
        let p = Polynomial::from_terms(3, terms).map_err(|e| e.to_string())?;
        let a = BigInt::from(rng.gen_range(1..=12));
        let b = BigInt::from(rng.gen_range(1..=12));
        ensure(
            scaling_identity_holds(&p, &f, &a, &b).map_err(|e| e.to_string())?,
            format!("{f} at a={a}, b={b}"),
        )?;
        done += 1;
    }
    Ok("identity exact on 50 random instances".into())
}

fn criterion_9() -> Outcome {
    let entries = parse_corpus(SHIPPED_CORPUS).map_err(|e| e.to_string())?;
    ensure(
        entries.len() == 12,
        format!("{} corpus entries", entries.len()),
    )?;
    let mut notes = Vec::new();
    for r in run_batch(&entries, &AnalyzeOptions::default()) {
        let rep = r.report.ok_or(format!("{}: {:?}", r.id, r.error))?;
        ensure(
            !rep.oracle.is_contradiction(),
            format!("{}: {:?}", r.id, rep.oracle),
        )?;
        ensure(
            r.matches == Some(true),
            format!(
                "{}: expected {:?}, got {}",
                r.id,
                r.expected,
                rep.verdict.status()
            ),
        )?;
        notes.push(format!("{}={}", r.id, rep.verdict.status()));
    }
    Ok(format!("no contradictions ({})", notes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("linear suite", criterion_1),
        ("inhomogeneous suite", criterion_2),
        ("mixed-system suite", criterion_3),
        ("functional suite", criterion_4),
        ("maximal Rado suite", criterion_5),
        ("complete-functional suite", criterion_6),
        ("three-variable valuation suite", criterion_7),
        ("scaling identity", criterion_8),
        ("global consistency", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {}. {name}: {msg} [{secs:.2}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}. {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
