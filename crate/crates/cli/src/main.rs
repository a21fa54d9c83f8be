use std::fs;
use std::io::{Read as _, Write as _};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rado_core::conditions::{
    certify_pr_complete, complete_q_polynomial, maximal_rado_check, maximal_rado_verdict, TargetSet,
};
use rado_core::functionals::{search_functionals, Direction, SearchBounds};
use rado_core::linear_pr::{decide_infinitely_pr, MixedSystem};
use rado_core::oracle::{search_avoiding_coloring, AvoidOutcome, Budget, SolutionFilter};
use rado_core::pipeline::{
    analyze_polynomial, analyze_system, decide_system, parse_corpus, parse_input, run_batch,
    verify_certificate, AnalyzeOptions, Report,
};
use rado_core::polyalg::render_polynomial;
use rado_core::threevar::{decide_hform_pr, has_complete_functional_structure, Domain};
use rado_core::{Certificate, Status, Verdict};

const EXIT_MISMATCH: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "rado",
    version,
    about = "Partition regularity of linear systems and polynomial equations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest |s| tried for a functional family.
    #[arg(long, global = true)]
    s_max: Option<u64>,
    /// Largest increment tried for a functional family.
    #[arg(long, global = true)]
    d_max: Option<u64>,
    /// Comma-separated q values reported by the maximal Rado check.
    #[arg(long, global = true, value_delimiter = ',')]
    q_samples: Option<Vec<u64>>,
    /// Wall-clock budget for coloring searches.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Variable order, comma-separated (default: alphabetical).
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and print a polynomial in canonical form.
    Parse { poly: String },
    /// Decide a linear system given as JSON `{"A": [[..]], "d": [..]}`.
    DecideLinear {
        system: String,
        /// Decide the infinite notion instead.
        #[arg(long)]
        infinite: bool,
    },
    /// Decide a system with `strict`/`unbounded` inequality rows.
    DecideMixed { system: String },
    /// Search upper/lower Rado functionals.
    Functionals {
        poly: String,
        #[arg(long, value_enum, default_value = "upper")]
        direction: DirArg,
    },
    /// Check the maximal Rado condition.
    MaximalRado { poly: String },
    /// Certify partition regularity from a complete functional.
    Certify {
        poly: String,
        /// Restrict the root to powers of this integer.
        #[arg(long)]
        powers_of: Option<i64>,
    },
    /// Three-variable H-form classification.
    Threevar {
        #[command(subcommand)]
        cmd: ThreevarCmd,
    },
    /// Finite coloring search.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Run a JSON-lines corpus (`-` reads stdin).
    Batch { corpus: String },
    /// Re-check a certificate, verdict or report JSON file (`-` reads stdin).
    Verify { file: String },
    /// Full pipeline on a polynomial or a system JSON.
    Analyze { input: String },
}

#[derive(Subcommand)]
enum ThreevarCmd {
    Decide {
        poly: String,
        #[arg(long, value_enum, default_value = "N")]
        over: Over,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Search {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 2)]
        colors: u8,
        #[arg(long)]
        range: u64,
        /// Ignore constant solutions.
        #[arg(long)]
        nonconstant: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Upper,
    Lower,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Over {
    #[value(name = "N")]
    N,
    #[value(name = "Q")]
    Q,
}

/// Failures that map to the usage exit code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

impl Global {
    fn options(&self) -> AnalyzeOptions {
        let mut o = AnalyzeOptions {
            bounds: self.bounds(),
            ..AnalyzeOptions::default()
        };
        if let Some(q) = &self.q_samples {
            o.q_samples = q.clone();
        }
        o.budget = self.budget(o.budget);
        o
    }

    fn bounds(&self) -> SearchBounds {
        let mut b = SearchBounds::default();
        if let Some(s) = self.s_max {
            b.s_max = s;
        }
        if let Some(d) = self.d_max {
            b.d_max = d;
        }
        b
    }

    fn budget(&self, base: Budget) -> Budget {
        Budget {
            time: self.budget_ms.map(Duration::from_millis).or(base.time),
            ..base
        }
    }

    fn poly(&self, text: &str) -> Result<(rado_core::polyalg::Polynomial, Vec<String>)> {
        parse_input(text, self.vars.as_deref()).map_err(|e| usage(format!("parse error: {e}")))
    }
}

fn read_arg(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn parse_system(text: &str) -> Result<MixedSystem> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("system JSON: {e}")))?;
    let v = if v.is_array() { json!({ "A": v }) } else { v };
    serde_json::from_value(v).map_err(|e| usage(format!("system JSON: {e}")))
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = v.summary();
    if let Some(c) = v.certificate() {
        s.push_str(&format!("\ncertificate: {}", c.kind()));
    }
    if let Some(o) = v.obstruction() {
        s.push_str(&format!("\nobstruction: {} ({})", o.condition, o.detail));
    }
    s
}

fn report_text(r: &Report) -> String {
    let mut s = format!(
        "{}\nroute: {}\n{}",
        r.input,
        r.route,
        verdict_text(&r.verdict)
    );
    for e in &r.evidence {
        s.push_str(&format!("\nevidence: {e}"));
    }
    s.push_str(&format!(
        "\noracle: {}",
        serde_json::to_string(&r.oracle).unwrap_or_default()
    ));
    s
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            code: 0,
        }
    }
}

fn run(cli: Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Parse { poly } => {
            let (p, vars) = g.poly(poly)?;
            let canonical = render_polynomial(&p, &vars);
            let terms: Vec<Value> = p
                .terms()
                .iter()
                .map(|(a, c)| json!({ "exponent": a.0, "coeff": c.to_string() }))
                .collect();
            Ok(Output::ok(
                json!({ "vars": vars, "canonical": canonical, "terms": terms, "degree": p.degree() }),
                canonical,
            ))
        }
        Cmd::DecideLinear { system, infinite } => {
            let sys = parse_system(system)?;
            if !sys.strict.is_empty() || !sys.unbounded.is_empty() {
                bail!(usage("inequality rows given; use decide-mixed"));
            }
            let (route, v) = if *infinite {
                (
                    "linear infinite".to_string(),
                    decide_infinitely_pr(&sys.a, &sys.d),
                )
            } else {
                decide_system(&sys)
            };
            Ok(Output::ok(
                json!({ "route": route, "verdict": v }),
                verdict_text(&v),
            ))
        }
        Cmd::DecideMixed { system } => {
            let sys = parse_system(system)?;
            let (route, v) = decide_system(&sys);
            Ok(Output::ok(
                json!({ "route": route, "verdict": v }),
                format!("route: {route}\n{}", verdict_text(&v)),
            ))
        }
        Cmd::Functionals { poly, direction } => {
            let (p, vars) = g.poly(poly)?;
            let dirs: &[Direction] = match direction {
                DirArg::Upper => &[Direction::Upper],
                DirArg::Lower => &[Direction::Lower],
                DirArg::Both => &[Direction::Upper, Direction::Lower],
            };
            let out =
                search_functionals(&p, &vars, dirs, &g.bounds()).map_err(|e| anyhow!("{e}"))?;
            let mut text = format!(
                "{} functionals in {} families",
                out.functionals.len(),
                out.families.len()
            );
            for c in &out.functionals {
                text.push_str(&format!("\n  {}", c.functional));
            }
            if !out.exhaustive() {
                text.push_str("\nsearch not exhaustive");
            }
            Ok(Output::ok(serde_json::to_value(&out)?, text))
        }
        Cmd::MaximalRado { poly } => {
            let (p, _) = g.poly(poly)?;
            let r = maximal_rado_check(&p, &g.options().q_samples, &g.bounds());
            let v = maximal_rado_verdict(&r);
            let text = format!("{:?}: {}\n{}", r.status, r.detail, verdict_text(&v));
            Ok(Output::ok(json!({ "report": r, "verdict": v }), text))
        }
        Cmd::Certify { poly, powers_of } => {
            let (p, vars) = g.poly(poly)?;
            let set = match powers_of {
                Some(l) if *l >= 2 => TargetSet::PowersOf { l: (*l).into() },
                Some(_) => bail!(usage("--powers-of needs l ≥ 2")),
                None => TargetSet::Naturals,
            };
            let out = search_functionals(&p, &vars, &[Direction::Upper], &g.bounds())
                .map_err(|e| anyhow!("{e}"))?;
            let mut tried = Vec::new();
            for fam in out.complete_families() {
                let Some(f) = fam.member(fam.sign as i64) else {
                    continue;
                };
                let v = certify_pr_complete(&p, &vars, &f, &set);
                let q = complete_q_polynomial(&p, &f)
                    .map(|q| {
                        q.poly
                            .coeffs()
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                    })
                    .ok();
                if v.status() == Status::ProvedPR {
                    return Ok(Output::ok(
                        json!({ "verdict": v, "q": q }),
                        verdict_text(&v),
                    ));
                }
                tried.push(json!({ "functional": f.to_string(), "q": q, "verdict": v }));
            }
            let v = Verdict::unknown(format!(
                "{} complete functionals, none with a root in the target set",
                tried.len()
            ));
            Ok(Output::ok(
                json!({ "verdict": v, "tried": tried }),
                verdict_text(&v),
            ))
        }
        Cmd::Threevar {
            cmd: ThreevarCmd::Decide { poly, over },
        } => {
            let (p, _) = g.poly(poly)?;
            let domain = match over {
                Over::N => Domain::Naturals,
                Over::Q => Domain::Rationals,
            };
            let extraction =
                has_complete_functional_structure(&p).map_err(|e| usage(e.to_string()))?;
            let v = decide_hform_pr(&p, domain);
            let mut text = verdict_text(&v);
            if let Some(e) = &extraction {
                text = format!("rho = {}\n{text}", e.rho);
            }
            Ok(Output::ok(
                json!({ "extraction": extraction, "verdict": v }),
                text,
            ))
        }
        Cmd::Oracle {
            cmd:
                OracleCmd::Search {
                    poly,
                    colors,
                    range,
                    nonconstant,
                },
        } => {
            let (p, _) = g.poly(poly)?;
            if *colors == 0 {
                bail!(usage("--colors must be positive"));
            }
            let filter = if *nonconstant {
                SolutionFilter::NonConstant
            } else {
                SolutionFilter::All
            };
            let budget = g.budget(Budget::default());
            match search_avoiding_coloring(&p, *colors, *range, filter, budget)
                .map_err(|e| anyhow!("{e}"))?
            {
                AvoidOutcome::Found(w) => {
                    let classes = w.classes();
                    Ok(Output::ok(json!(classes), format!("{classes:?}")))
                }
                AvoidOutcome::None => Ok(Output {
                    json: Value::Null,
                    text: format!(
                        "every {colors}-coloring of [1..{range}] has a monochromatic solution"
                    ),
                    code: EXIT_MISMATCH,
                }),
                AvoidOutcome::BudgetExceeded => Ok(Output {
                    json: json!({ "budget": "exceeded" }),
                    text: "budget exceeded".into(),
                    code: EXIT_BUDGET,
                }),
            }
        }
        Cmd::Batch { corpus } => {
            let entries = parse_corpus(&read_arg(corpus)?).map_err(|e| usage(e.to_string()))?;
            let records = run_batch(&entries, &g.options());
            let mut lines = Vec::new();
            let mut code = 0;
            for r in &records {
                if r.matches == Some(false) || r.error.is_some() {
                    code = EXIT_MISMATCH;
                }
                let got = r.report.as_ref().map(|x| x.verdict.status().to_string());
                let mark = match r.matches {
                    Some(true) => "ok",
                    Some(false) => "MISMATCH",
                    None => "-",
                };
                let want = r
                    .expected
                    .as_ref()
                    .map(|e| e.status.to_string())
                    .unwrap_or_default();
                lines.push(format!(
                    "{mark} {}: got {} expected {want}",
                    r.id,
                    got.or(r.error.clone()).unwrap_or_default()
                ));
            }
            let json = Value::Array(
                records
                    .iter()
                    .map(|r| serde_json::to_value(r).expect("serializable"))
                    .collect(),
            );
            Ok(Output {
                json,
                text: lines.join("\n"),
                code,
            })
        }
        Cmd::Verify { file } => {
            let v: Value =
                serde_json::from_str(&read_arg(file)?).map_err(|e| usage(format!("JSON: {e}")))?;
            let cert = extract_certificate(v)?;
            match verify_certificate(&cert) {
                Ok(()) => Ok(Output::ok(
                    json!({ "valid": true, "kind": cert.kind() }),
                    format!("valid {}", cert.kind()),
                )),
                Err(e) => Ok(Output {
                    json: json!({ "valid": false, "kind": cert.kind(), "error": e }),
                    text: format!("invalid {}: {e}", cert.kind()),
                    code: EXIT_MISMATCH,
                }),
            }
        }
        Cmd::Analyze { input } => {
            let opts = g.options();
            let report = if input.trim_start().starts_with(['{', '[']) {
                analyze_system(&parse_system(input)?, &opts)
            } else {
                analyze_polynomial(input, g.vars.as_deref(), &opts)
                    .map_err(|e| usage(format!("parse error: {e}")))?
            };
            let text = report_text(&report);
            Ok(Output::ok(serde_json::to_value(&report)?, text))
        }
    }
}

/// Accepts a bare certificate, a verdict, a report or a batch record.
fn extract_certificate(v: Value) -> Result<Certificate> {
    let mut cur = v;
    for key in ["report", "verdict", "certificate"] {
        if let Some(inner) = cur.get(key) {
            if !inner.is_null() {
                cur = inner.clone();
            }
        }
    }
    if let Ok(c) = serde_json::from_value::<Certificate>(cur.clone()) {
        return Ok(c);
    }
    if let Ok(v) = serde_json::from_value::<Verdict>(cur.clone()) {
        return v
            .certificate()
            .cloned()
            .ok_or_else(|| usage("verdict carries no certificate"));
    }
    Err(usage("no certificate found in input"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.global.json;
    match run(cli) {
        Ok(out) => {
            let body = if json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text
            };
            // a closed pipe is not an error
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<Usage>() {
                EXIT_USAGE
            } else {
                EXIT_MISMATCH
            })
        }
    }
}
