//! Golden report cases shared by the golden and acceptance tests.

#![allow(dead_code)]

use std::path::PathBuf;

use thma_cli::{run, Outcome};

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

pub struct Case {
    /// Golden file name under `tests/golden`.
    pub golden: &'static str,
    pub args: &'static [&'static str],
    /// Fixture the case reads; substituted for `{}` in `args`.
    pub input: &'static str,
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case { golden: "validate_two.json", args: &["validate", "{}"], input: "two.json", code: 0 },
    Case { golden: "validate_missing_triple.json", args: &["validate", "{}"], input: "two_missing_triple.json", code: 1 },
    Case { golden: "validate_malformed.json", args: &["validate", "{}"], input: "malformed.json", code: 2 },
    Case { golden: "build_T_two.json", args: &["build", "T", "{}"], input: "two.json", code: 0 },
    Case { golden: "build_twisted_two.json", args: &["build", "twisted", "{}"], input: "two.json", code: 0 },
    Case { golden: "build_cech_cover_12.json", args: &["build", "cech", "{}"], input: "cover_12.json", code: 0 },
    Case { golden: "build_diag_pt_to_two.json", args: &["build", "diag", "{}", "--trunc", "3"], input: "pt_to_two.json", code: 0 },
    Case { golden: "homology_z2.json", args: &["homology", "{}", "--trunc", "4"], input: "z2.json", code: 0 },
    Case { golden: "homology_codisc_ab.json", args: &["homology", "{}", "--trunc", "4"], input: "codisc_ab.json", code: 0 },
    Case { golden: "homology_two.json", args: &["homology", "{}", "--trunc", "3"], input: "two.json", code: 0 },
    Case { golden: "homology_disc_abc.json", args: &["homology", "{}"], input: "disc_abc.json", code: 0 },
    Case { golden: "check_a_pt_to_two.json", args: &["check", "a", "{}"], input: "pt_to_two.json", code: 0 },
    Case { golden: "check_a_disc01_to_two.json", args: &["check", "a", "{}"], input: "disc01_to_two.json", code: 4 },
    Case { golden: "check_morita_fatten_two.json", args: &["check", "morita", "{}"], input: "fatten_two_functor.json", code: 0 },
    Case { golden: "check_cover_12.json", args: &["check", "cover", "{}"], input: "cover_12.json", code: 0 },
    Case { golden: "dot_two.dot", args: &["export-dot", "{}"], input: "two.json", code: 0 },
    Case { golden: "dot_codisc_ab.dot", args: &["export-dot", "{}"], input: "codisc_ab.json", code: 0 },
];

impl Case {
    pub fn argv(&self, extra: &[String]) -> Vec<String> {
        let mut v = vec!["thma".to_string()];
        v.extend(self.args.iter().map(|a| {
            if *a == "{}" {
                fixture(self.input)
            } else {
                a.to_string()
            }
        }));
        v.extend(extra.iter().cloned());
        v
    }

    pub fn run(&self, extra: &[String]) -> Outcome {
        run(self.argv(extra))
    }

    pub fn golden_path(&self) -> PathBuf {
        root().join("golden").join(self.golden)
    }
}
