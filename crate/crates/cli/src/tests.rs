use std::path::PathBuf;

use super::*;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn thma(args: &[&str]) -> Outcome {
    run(std::iter::once("thma").chain(args.iter().copied()))
}

fn result(out: &Outcome) -> Value {
    serde_json::from_str::<Value>(&out.stdout).unwrap()["result"].clone()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(thma(&["validate", &fixture("two.json")]).code, 0);
    let missing = thma(&["validate", &fixture("two_missing_triple.json")]);
    assert_eq!(missing.code, 1);
    assert!(missing.stdout.contains("(id_1, u)"), "{}", missing.stdout);
    let bad = thma(&["validate", &fixture("malformed.json")]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("line 4"), "{}", bad.stderr);
    assert_eq!(thma(&["validate", &fixture("no_such_file.json")]).code, 2);
}

#[test]
fn build_sizes() {
    let sizes = |c: &str, f: &str| {
        let out = thma(&["build", c, &fixture(f)]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let s = &result(&out)["sizes"];
        (s["objects"].as_u64().unwrap(), s["morphisms"].as_u64().unwrap())
    };
    assert_eq!(sizes("T", "two.json"), (3, 4));
    assert_eq!(sizes("twisted", "two.json"), (3, 5));
    assert_eq!(sizes("cech", "cover_12.json").0, 3);
    // comma(id) and S(id) agree with T and the twisted arrow category
    assert_eq!(sizes("comma", "id_two.json"), (3, 4));
    assert_eq!(sizes("S", "id_two.json"), (3, 5));
}

#[test]
fn build_type_mismatch_and_budget() {
    assert_eq!(thma(&["build", "T", &fixture("pt_to_two.json")]).code, 2);
    assert_eq!(thma(&["build", "comma", &fixture("two.json")]).code, 2);
    let out = thma(&["build", "D", &fixture("pt_to_two.json"), "--budget", "3"]);
    assert_eq!(out.code, 3, "{}", out.stdout);
    assert_eq!(thma(&["build", "nothing", &fixture("two.json")]).code, 2);
}

#[test]
fn homology_examples() {
    let groups = |f: &str| {
        let out = thma(&["homology", &fixture(f)]);
        assert_eq!(out.code, 0);
        result(&out)["groups"].clone()
    };
    assert_eq!(groups("two.json"), json!(["Z", "0", "0", "0"]));
    assert_eq!(groups("z2.json"), json!(["Z", "Z/2", "0", "Z/2"]));
    assert_eq!(groups("disc_abc.json")[0], "Z^3");
    let out = thma(&["homology", &fixture("z2.json"), "--trunc", "6", "--budget", "50"]);
    assert_eq!(out.code, 3);
}

#[test]
fn check_exit_codes() {
    assert_eq!(thma(&["check", "a", &fixture("pt_to_two.json")]).code, 0);
    assert_eq!(thma(&["check", "morita", &fixture("fatten_two_functor.json")]).code, 0);
    let out = thma(&["check", "a", &fixture("disc01_to_two.json")]);
    assert_eq!(out.code, 4);
    // the report names the fiber that failed
    let hyps = result(&out)["verdict"]["hypotheses"].clone();
    assert_eq!(hyps[0]["holds"], json!(false));
    assert!(hyps[0]["name"].as_str().unwrap().starts_with('0'));
    assert_eq!(thma(&["check", "cover", &fixture("cover_12.json")]).code, 0);
    assert_eq!(thma(&["check", "cover", &fixture("two.json")]).code, 2);
}

#[test]
fn export_dot_examples() {
    let out = thma(&["export-dot", &fixture("two.json")]);
    assert_eq!(out.stdout.matches(" -> ").count(), 1);
    assert!(out.stdout.contains("[label=\"u\"]"));
    let out = thma(&["export-dot", &fixture("disc_abc.json")]);
    assert_eq!(out.stdout.matches(" -> ").count(), 0);
    let out = thma(&["export-dot", &fixture("codisc_ab.json")]);
    assert_eq!(out.stdout.matches(" -> ").count(), 2);
}

#[test]
fn text_format_and_timing() {
    let out = thma(&["homology", &fixture("z2.json"), "--format", "text"]);
    assert!(out.stdout.contains("H_1 = Z/2"));
    assert!(out.stdout.contains("not certified"));
    let plain = thma(&["homology", &fixture("two.json")]);
    assert!(!plain.stdout.contains("timing_ms"));
    let timed = thma(&["homology", &fixture("two.json"), "--timing"]);
    assert!(timed.stdout.contains("timing_ms"));
}
