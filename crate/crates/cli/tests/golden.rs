mod common;

use common::CASES;

/// Set `THMA_BLESS=1` to rewrite the golden files from the current output.
#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("THMA_BLESS").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let out = case.run(&[]);
        assert_eq!(out.code, case.code, "{}: {}", case.golden, out.stderr);
        if bless {
            std::fs::write(case.golden_path(), &out.stdout).unwrap();
            continue;
        }
        let golden = std::fs::read_to_string(case.golden_path())
            .unwrap_or_else(|e| panic!("{}: {e}", case.golden));
        if golden != out.stdout {
            failures.push(case.golden);
        }
    }
    assert!(failures.is_empty(), "reports differ from golden files: {failures:?}");
}

#[test]
fn binary_matches_library() {
    let exe = env!("CARGO_BIN_EXE_thma");
    for case in CASES.iter().take(4) {
        let argv = case.argv(&[]);
        let out = std::process::Command::new(exe).args(&argv[1..]).output().unwrap();
        assert_eq!(out.status.code(), Some(case.code));
        assert_eq!(String::from_utf8(out.stdout).unwrap(), case.run(&[]).stdout);
    }
}
