use std::path::PathBuf;

use veronese_cli::report::{Payload, Report, Status};
use veronese_cli::run_args;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn veronese(args: &[&str]) -> veronese_cli::Invocation {
    run_args(std::iter::once("veronese").chain(args.iter().copied()))
}

fn obstruction_reason(report: &Report) -> &str {
    match &report.payload {
        Payload::Obstruction { reason, .. } => reason,
        other => panic!("expected an obstruction, got {other:?}"),
    }
}

#[test]
fn one_variable_derivation_is_not_divisible() {
    let out = veronese(&["lift-derivation", &data("kx_derivation.map")]);
    assert_eq!(out.code, 2);
    assert_eq!(out.stdout, golden("kx_derivation.txt"));
    assert_eq!(obstruction_reason(out.report.as_ref().unwrap()), "NotDivisible");
}

#[test]
fn one_variable_automorphism_is_rejected() {
    let out = veronese(&["lift-automorphism", &data("kx_automorphism.map")]);
    assert_eq!(out.code, 2);
    assert_eq!(out.stdout, golden("kx_automorphism.txt"));
    assert_eq!(obstruction_reason(out.report.as_ref().unwrap()), "SingleVariable");
}

#[test]
fn scaling_by_two_has_no_square_root() {
    let out = veronese(&["lift-automorphism", &data("scale_by_two.map")]);
    assert_eq!(out.code, 2);
    assert_eq!(out.stdout, golden("scale_by_two.txt"));
    assert_eq!(obstruction_reason(out.report.as_ref().unwrap()), "NoRationalDthRoot");
}

#[test]
fn bracket_expands_by_leibniz() {
    let out = veronese(&["bracket", "--n", "2", "{x1, x1*x2}"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "bracket: ok\nx1*[x1,x2]\n");
    let out = veronese(&["bracket", "x1*x2", "x1"]);
    assert_eq!(out.stdout, "bracket: ok\n-x1*[x1,x2]\n");
}

#[test]
fn parse_errors_exit_one_with_location() {
    let out = veronese(&["bracket", "x1 +"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 1, column 5"), "{}", out.stderr);
    let out = veronese(&["lift-derivation", "/nonexistent/file.map"]);
    assert_eq!(out.code, 1);
    let out = veronese(&["lift-derivation", "--n", "3", &data("euler.map")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("disagrees"));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(veronese(&["frobnicate"]).code, 1);
    assert_eq!(veronese(&["grade", "x1"]).code, 1);
    let help = veronese(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("lift-automorphism"));
}

#[test]
fn lifts_and_lnd() {
    let out = veronese(&["lift-automorphism", &data("elementary.map")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("x2 -> x1^4 + x2"));

    let out = veronese(&["check-lnd", &data("triangular.map")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("x2: nilpotency index 2"));

    let out = veronese(&["check-lnd", &data("euler.map")]);
    assert_eq!(out.code, 2);
    assert_eq!(out.report.unwrap().status, Status::Obstructed);

    let out = veronese(&["check-lnd", "--cap", "1", &data("triangular.map")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.report.unwrap().status, Status::Inconclusive);
}

#[test]
fn kernel_and_poisson() {
    let out = veronese(&["verify-kernel", &data("elementary.map")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("1 * id"));

    let out = veronese(&["lift-automorphism", &data("poisson_shift.map")]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("[x1,x2] -> x1*[x1,[x1,x2]] + [x1,x2]"));
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["lift-automorphism".to_string(), data("poisson_shift.map")],
        vec!["lift-derivation".to_string(), data("kx_derivation.map")],
        vec!["check-lnd".to_string(), data("triangular.map")],
        vec!["basis".to_string(), "--n".to_string(), "3".to_string(), "--bound".to_string(), "4".to_string()],
        vec!["grade".to_string(), "--d".to_string(), "3".to_string(), "x1^4 - x1*x2 + 7".to_string()],
    ] {
        let mut full = vec!["--format".to_string(), "json".to_string()];
        full.extend(args);
        let out = veronese(&full.iter().map(String::as_str).collect::<Vec<_>>());
        let report = out.report.unwrap();
        let back = Report::from_json(&out.stdout).unwrap();
        assert_eq!(back, report);
        if let Payload::Lift { images, .. } = &back.payload {
            for img in images.iter().filter_map(|i| i.value.as_ref()) {
                let p = img.to_polynomial().unwrap();
                assert_eq!(p.arity(), img.arity);
                assert_eq!(p.num_terms(), img.terms.len());
            }
        }
    }
}

#[test]
fn selftest_is_deterministic() {
    let a = veronese(&["--format", "json", "selftest", "--seed", "7"]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    let b = veronese(&["--format", "json", "selftest", "--seed", "7"]);
    assert_eq!(a.report.unwrap().payload, b.report.unwrap().payload);
}
