use std::time::Instant;

use rado_core::pipeline::{
    analyze_polynomial, parse_corpus, run_batch, verify_certificate, AnalyzeOptions, BatchRecord,
    CrossCheck, Expected, Report, SHIPPED_CORPUS,
};
use rado_core::{Certificate, Status, Verdict};

fn shipped() -> Vec<BatchRecord> {
    run_batch(
        &parse_corpus(SHIPPED_CORPUS).unwrap(),
        &AnalyzeOptions::default(),
    )
}

#[test]
fn corpus_matches_expectations_without_contradictions() {
    for r in shipped() {
        let rep = r
            .report
            .as_ref()
            .unwrap_or_else(|| panic!("{}: {:?}", r.id, r.error));
        assert_eq!(
            r.matches,
            Some(true),
            "{}: got {}",
            r.id,
            rep.verdict.summary()
        );
        assert!(!rep.oracle.is_contradiction(), "{}: {:?}", r.id, rep.oracle);
    }
}

#[test]
fn certificates_reverify_after_json_round_trip() {
    let mut checked = 0;
    for r in shipped() {
        let rep = r.report.unwrap();
        let json = serde_json::to_string(&rep.verdict).unwrap();
        let back: Verdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep.verdict, "{}", r.id);
        if let Some(c) = back.certificate() {
            let t = Instant::now();
            verify_certificate(c).unwrap_or_else(|e| panic!("{}: {e}", r.id));
            assert!(t.elapsed().as_secs_f64() < 1.0);
            checked += 1;
        }
    }
    assert_eq!(checked, 5);
}

#[test]
fn tampered_certificates_are_rejected() {
    let rep = analyze_polynomial("x + y - z", None, &AnalyzeOptions::default()).unwrap();
    let mut v: serde_json::Value =
        serde_json::to_value(rep.verdict.certificate().unwrap()).unwrap();
    v["columns"]["partition"] = serde_json::json!([[0, 1], [2]]);
    let bad: Certificate = serde_json::from_value(v).unwrap();
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn batch_reports_are_stable_and_ordered() {
    let strip = |rs: Vec<BatchRecord>| -> Vec<(String, Option<Verdict>)> {
        rs.into_iter()
            .map(|r| (r.id, r.report.map(|p: Report| p.verdict)))
            .collect()
    };
    let a = strip(shipped());
    let ids: Vec<&str> = a.iter().map(|(id, _)| id.as_str()).collect();
    let expected: Vec<String> = parse_corpus(SHIPPED_CORPUS)
        .unwrap()
        .into_iter()
        .map(|e| e.id)
        .collect();
    assert_eq!(ids, expected);
    assert_eq!(a, strip(shipped()));
}

#[test]
fn flipped_expectation_is_reported() {
    let mut entries = parse_corpus(SHIPPED_CORPUS).unwrap();
    entries[0].expected = Some(Expected {
        status: Status::ProvedNotPR,
        source: "flipped".into(),
    });
    let out = run_batch(&entries[..1], &AnalyzeOptions::default());
    assert_eq!(out[0].matches, Some(false));
    assert!(run_batch(&[], &AnalyzeOptions::default()).is_empty());
}

#[test]
fn precedence_prefers_complete_decisions() {
    let opts = AnalyzeOptions::default();
    let route = |s: &str| analyze_polynomial(s, None, &opts).unwrap().route;
    assert_eq!(route("x + y - z"), "linear");
    assert_eq!(route("x*z^2 - 8*y"), "threevar H-form");
    assert_eq!(route("x + y - z^2"), "threevar necessary");
    let r = analyze_polynomial("x^3 + y^3 - z^3", None, &opts).unwrap();
    assert_eq!(r.verdict.status(), Status::Unknown);
    assert!(matches!(r.oracle, CrossCheck::Skipped(_)));
}
