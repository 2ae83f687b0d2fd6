use std::process::{Command, Output};

use focal_kit::cli::{
    parse_family_file, parse_poly, render_poly, run, serialize_family, AnalysisRequest, Command as Cmd, Suite,
    EXIT_VERIFICATION_FAILED,
};
use focal_kit::exactalg::{MPoly, Rat, Vars};
use focal_kit::families::{fixture, fixture_ids};
use focal_kit::Error;
use proptest::prelude::*;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_focal-kit"));
    c.env_remove("FOCALKIT_SEED");
    c
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn vars() -> Vars {
    Vars::new(&["t", "s"])
}

/// Syntax errors must point inside the text (one past the end for EOF).
fn structured(text: &str, r: &Result<MPoly, Error>) -> bool {
    match r {
        Ok(_) | Err(Error::Input(_)) => true,
        Err(Error::Syntax { line, column, .. }) => {
            let lines: Vec<&str> = text.split('\n').collect();
            *line >= 1
                && *line <= lines.len()
                && *column >= 1
                && *column <= lines[*line - 1].chars().count() + 1
        }
        Err(_) => false,
    }
}

#[test]
fn fixtures_round_trip_through_family_files() {
    for id in fixture_ids() {
        let spec = fixture(id).unwrap();
        let text = serialize_family(&spec);
        assert_eq!(parse_family_file(&text).unwrap(), spec, "{id}");
        for p in spec.span() {
            for c in p.coords() {
                assert_eq!(&parse_poly(&render_poly(c), spec.params()).unwrap(), c, "{id}");
            }
        }
    }
}

#[test]
fn expression_examples() {
    let v = vars();
    let t = MPoly::var(&v, 0);
    let s = MPoly::var(&v, 1);
    let three_halves = Rat::new(3.into(), 2.into());
    let p = parse_poly("3/2*t^2 - s*t + -4", &v).unwrap();
    let expected = &(&t.pow(2).scale(&three_halves) - &(&s * &t)) - &MPoly::constant(&v, Rat::from_integer(4.into()));
    assert_eq!(p, expected);
    assert_eq!(parse_poly("(t + s)^2", &v).unwrap(), (&t + &s).pow(2));
    assert_eq!(parse_poly("-t^2", &v).unwrap(), t.pow(2).scale(&Rat::from_integer((-1).into())));
    match parse_poly("t^", &v) {
        Err(Error::Syntax { line: 1, column: 3, .. }) => {}
        other => panic!("{other:?}"),
    }
    match parse_poly("t +\n  s^", &v) {
        Err(Error::Syntax { line: 2, column: 5, .. }) => {}
        other => panic!("{other:?}"),
    }
    for bad in ["", "t +", "1/0", "u", "t^-1", "t^999", "(t", "t)", "2 t", "t**2"] {
        assert!(parse_poly(bad, &v).is_err(), "{bad:?}");
    }
}

#[test]
fn deep_nesting_is_an_error_not_a_crash() {
    let v = vars();
    let deep = format!("{}t{}", "(".repeat(10_000), ")".repeat(10_000));
    assert!(matches!(parse_poly(&deep, &v), Err(Error::Syntax { .. })));
    let minus = format!("{}t", "-".repeat(10_000));
    assert!(matches!(parse_poly(&minus, &v), Err(Error::Syntax { .. })));
}

fn grammar_soup() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            Just("t".to_string()),
            Just("s".to_string()),
            Just("x".to_string()),
            Just("+".to_string()),
            Just("-".to_string()),
            Just("*".to_string()),
            Just("^".to_string()),
            Just("/".to_string()),
            Just("(".to_string()),
            Just(")".to_string()),
            Just(" ".to_string()),
            Just("\n".to_string()),
            (0u64..1_000_000).prop_map(|n| n.to_string()),
        ],
        0..24,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5_000))]

    #[test]
    fn fuzz_grammar_tokens(text in grammar_soup()) {
        let r = parse_poly(&text, &vars());
        prop_assert!(structured(&text, &r), "{:?} -> {:?}", text, r);
    }

    #[test]
    fn fuzz_arbitrary_text(text in any::<String>()) {
        let r = parse_poly(&text, &vars());
        prop_assert!(structured(&text, &r), "{:?} -> {:?}", text, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rendering_reparses(terms in prop::collection::vec((0u32..4, 0u32..4, -20i64..=20, 1i64..=6), 0..6)) {
        let v = vars();
        let p = MPoly::from_terms(&v, terms.into_iter().map(|(a, b, n, d)| (vec![a, b], Rat::new(n.into(), d.into()))));
        prop_assert_eq!(parse_poly(&render_poly(&p), &v).unwrap(), p);
    }
}

#[test]
fn in_process_runs_are_deterministic() {
    for req in [
        AnalysisRequest::new(Cmd::Analyze).fixture("F4").seed(7),
        AnalysisRequest::new(Cmd::Classify).fixture("F7").seed(3),
        AnalysisRequest::new(Cmd::Verify(Suite::TheoremA)).fixture("F10").seed(1),
    ] {
        let a = run(&req);
        let b = run(&req);
        assert_eq!(a.exit_code, 0);
        assert_eq!(a.doc.to_json(), b.doc.to_json());
    }
}

#[test]
fn analyze_secant_family() {
    let out = bin().args(["analyze", "--fixture", "F4", "--seed", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["union_dim"], 3);
    for b in doc["bases"].as_array().unwrap() {
        assert_eq!(b["focal_divisor"], "x0*x1");
        assert_eq!(b["envelope"]["projective_dim"], 3);
    }
    let again = bin().args(["analyze", "--fixture", "F4", "--seed", "7"]).output().unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn classify_cone_over_the_veronese() {
    let out = bin().args(["classify", "--fixture", "F8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["classification"]["label"], "c2h-cone-over-surface");
}

#[test]
fn verify_suites_from_the_binary() {
    let out = bin().args(["verify", "theoremC", "--fixture", "F1", "--trials", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["all_passed"], true);
    assert_eq!(doc["verdicts"].as_array().unwrap().len(), 5);

    let out = bin().args(["verify", "counterexample"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_passed"], true);

    let out = bin().args(["verify", "phi"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(code(&["fixtures"]), Some(0));
    assert_eq!(code(&["analyze", "--fixture", "F99"]), Some(1));
    assert_eq!(code(&["analyze"]), Some(1));
    assert_eq!(code(&["verify", "bogus", "--fixture", "F1"]), Some(1));
    assert_eq!(code(&["analyze", "--fixture", "F4", "--base", "1"]), Some(1));
    assert_eq!(code(&["analyze", "--fixture", "F4", "--input", "x.json"]), Some(1));
    assert_eq!(code(&["verify", "theoremC", "--fixture", "F12"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
    assert_ne!(EXIT_VERIFICATION_FAILED, 0);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = bin().args(["analyze", "--fixture", "F1"]).env("FOCALKIT_SEED", "42").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["request"]["seed"], 42);
    let explicit = bin().args(["analyze", "--fixture", "F1", "--seed", "42"]).output().unwrap();
    assert_eq!(out.stdout, explicit.stdout);
    let flag_wins = bin().args(["analyze", "--fixture", "F1", "--seed", "5"]).env("FOCALKIT_SEED", "42").output().unwrap();
    assert_eq!(json(&flag_wins)["request"]["seed"], 5);
    let bad = bin().args(["analyze", "--fixture", "F1"]).env("FOCALKIT_SEED", "forty").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn family_files_and_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("f1.json");
    std::fs::write(
        &family,
        r#"{"N": 3, "k": 1, "params": ["t"], "points": [["1", "t", "t^2", "t^3"], ["0", "1", "2*t", "3*t^2"]]}"#,
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let out = bin()
        .args(["analyze", "--input", family.to_str().unwrap(), "--out", report.to_str().unwrap(), "--seed", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for b in doc["bases"].as_array().unwrap() {
        assert_eq!(b["focal_divisor"], "x1");
    }
    let from_fixture = bin().args(["analyze", "--fixture", "F1", "--seed", "2"]).output().unwrap();
    assert_eq!(json(&from_fixture)["bases"], doc["bases"]);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, r#"{"N": 3, "k": 1, "params": ["t"], "points": [["1", "t", "t^2", "t^"], ["0", "1", "2*t", "3*t^2"]]}"#)
        .unwrap();
    let out = bin().args(["analyze", "--input", broken.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["error"]["kind"], "syntax");
    assert!(doc["error"]["message"].as_str().unwrap().contains("points[0][3]"));
}
