//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the output; exits non-zero if
//! any criterion fails.

mod common;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_like::gcd;
use serde_json::Value;

use thma_core::cat::fixtures::{cyclic_group, interval};
use thma_core::cat::{codisc, disc, terminal, CatFunctor, FinCat, Mor, Obj};
use thma_core::constructions::{
    comma_slice, fatten, s_category, slice_decomposition_check, t_category, t_op_category,
    twisted_arrow, CoverData,
};
use thma_core::gen;
use thma_core::homology::{
    chain_homotopy_from_simplicial, chain_map, homology, is_homology_equivalence,
    normalized_chains, pi0_bijection, total_complex,
};
use thma_core::simplicial::{
    bisimplicial_d, check_diag_equals_nerve_s, diagonal, nat_trans_to_homotopy, nerve_map, Bounds,
};
use thma_core::verifiers::{
    morita_check, segal_cover_check, shrinkable_witness_check, theorem_a_check, CertificateKind,
};

// Pinned sizes and tolerances.
const EXHAUSTIVE_MAX_OBJECTS: usize = 3;
const EXHAUSTIVE_MAX_MORPHISMS: usize = 8;
const EXHAUSTIVE_MAX_HOM: usize = 2;
const MAX_OBJECTS: usize = 4;
const DIAGONAL_TRUNCATION: usize = 3;
const DIAGONAL_FUNCTORS: usize = 100;
const EZ_TRUNCATION: usize = 4;
const EZ_FUNCTORS: usize = 100;
const SECTION_CATEGORIES: usize = 60;
const SECTION_TRUNCATION: usize = 4;
/// Degree through which `dom^T` must induce isomorphisms.
const SECTION_DEGREE: usize = 2;
const THEOREM_A_FUNCTORS: usize = 200;
const THEOREM_TRUNCATION: usize = 4;
const MORITA_CASES: usize = 100;
const COVER_CASES: usize = 100;
const COVER_MAX_BASE: usize = 6;
const COVER_MAX_PIECES: usize = 4;
const HOMOTOPY_CASES: usize = 100;
const HOMOTOPY_TRUNCATION: usize = 4;
const SHUFFLE_SEEDS: [u64; 3] = [1, 2, 3];
const BUDGET: usize = 2_000_000;

fn bounds(n: usize) -> Bounds {
    Bounds::new(n, BUDGET)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("construction identities", c1_construction_identities),
        ("diagonal identity", c2_diagonal),
        ("Eilenberg-Zilber shadow", c3_eilenberg_zilber),
        ("adjoint sections shrink", c4_sections),
        ("Theorem A soundness", c5_theorem_a),
        ("Morita soundness", c6_morita),
        ("Segal cover check", c7_cover),
        ("homology oracle fixtures", c8_homology_fixtures),
        ("chain-homotopy exactness", c9_homotopy),
        ("CLI determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn functor_family(seed: u64, count: usize) -> Vec<CatFunctor> {
    let mut rng = gen::rng(seed);
    (0..count)
        .map(|_| gen::random_functor_pair(&mut rng, MAX_OBJECTS))
        .collect()
}

fn c1_construction_identities() -> Outcome {
    let family = gen::exhaustive_family(
        EXHAUSTIVE_MAX_OBJECTS,
        EXHAUSTIVE_MAX_MORPHISMS,
        EXHAUSTIVE_MAX_HOM,
    );
    let mut bad = Vec::new();
    for c in &family {
        let y = Arc::new(c.clone());
        let id = CatFunctor::identity(y.clone());
        let comma_ok = comma_slice(&id)
            .and_then(|cs| Ok(cs.cat.same_tables(&t_category(&y)?.cat)))
            .unwrap_or(false);
        let s_ok = s_category(&id)
            .and_then(|s| Ok(s.s.same_tables(&twisted_arrow(&y)?.cat)))
            .unwrap_or(false);
        if !(comma_ok && s_ok) {
            bad.push(y.object_count());
        }
    }
    outcome(
        bad.is_empty() && !family.is_empty(),
        format!(
            "{} categories with <= {} objects, <= {} morphisms, hom-sets <= {}; {} mismatches",
            family.len(),
            EXHAUSTIVE_MAX_OBJECTS,
            EXHAUSTIVE_MAX_MORPHISMS,
            EXHAUSTIVE_MAX_HOM,
            bad.len()
        ),
    )
}

fn c2_diagonal() -> Outcome {
    let family = functor_family(2, DIAGONAL_FUNCTORS);
    let failures: Vec<String> = family
        .iter()
        .enumerate()
        .filter_map(|(i, f)| {
            check_diag_equals_nerve_s(f, bounds(DIAGONAL_TRUNCATION))
                .err()
                .map(|e| format!("#{i}: {e}"))
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!(
            "{} functors at N = {}; failures {:?}",
            family.len(),
            DIAGONAL_TRUNCATION,
            failures
        ),
    )
}

fn c3_eilenberg_zilber() -> Outcome {
    let family = functor_family(2, EZ_FUNCTORS);
    let through = EZ_TRUNCATION - 2;
    let mut failures = Vec::new();
    for (i, f) in family.iter().enumerate() {
        let r = (|| -> thma_core::Result<bool> {
            let d = bisimplicial_d(f, bounds(EZ_TRUNCATION))?;
            let tot = homology(&total_complex(&d)?);
            // groups through degree N-2 only need boundaries up to degree N-1
            let diag = diagonal(&d)?.truncated(EZ_TRUNCATION - 1)?;
            let diag = homology(&normalized_chains(&diag)?);
            Ok(tot.agrees_with(&diag, through))
        })();
        match r {
            Ok(true) => {}
            Ok(false) => failures.push(format!("#{i}: groups differ")),
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} functors at N = {}, exact groups through degree {}; failures {:?}",
            family.len(),
            EZ_TRUNCATION,
            through,
            failures
        ),
    )
}

fn c4_sections() -> Outcome {
    let mut rng = gen::rng(4);
    let mut ys: Vec<FinCat> = vec![interval(), cyclic_group(2), cyclic_group(3)];
    ys.extend((0..SECTION_CATEGORIES).map(|_| gen::random_category(&mut rng, MAX_OBJECTS)));
    let mut failures = Vec::new();
    for (i, y) in ys.iter().enumerate() {
        let y = Arc::new(y.clone());
        let r = (|| -> thma_core::Result<Vec<&'static str>> {
            let mut bad = Vec::new();
            let t = t_category(&y)?;
            if !shrinkable_witness_check(&t.sigma, bounds(SECTION_TRUNCATION))?.holds {
                bad.push("sigma");
            }
            let to = t_op_category(&y)?;
            if !shrinkable_witness_check(&to.tau, bounds(SECTION_TRUNCATION))?.holds {
                bad.push("tau");
            }
            // the cone through SECTION_DEGREE + 1 certifies isomorphisms through SECTION_DEGREE
            let dom = nerve_map(&t.dom_t, bounds(SECTION_TRUNCATION))?;
            let eq = is_homology_equivalence(&chain_map(&dom)?, SECTION_DEGREE + 1)?;
            if !(eq.holds && pi0_bijection(&dom)) {
                bad.push("dom^T");
            }
            Ok(bad)
        })();
        match r {
            Ok(bad) if bad.is_empty() => {}
            Ok(bad) => failures.push(format!("#{i}: {bad:?}")),
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} categories, witnesses at N = {}, dom^T iso through degree {}; failures {:?}",
            ys.len(),
            SECTION_TRUNCATION,
            SECTION_DEGREE,
            failures
        ),
    )
}

fn select(y: &Arc<FinCat>, o: Obj) -> CatFunctor {
    CatFunctor::constant(Arc::new(terminal()), y.clone(), o).unwrap()
}

fn to_point(x: &Arc<FinCat>) -> CatFunctor {
    CatFunctor::constant(x.clone(), Arc::new(terminal()), Obj(0)).unwrap()
}

fn c5_theorem_a() -> Outcome {
    let mut rng = gen::rng(5);
    let mut family = Vec::new();
    // a quarter each: random functors, identities, maps to a point, fattenings
    let quarter = THEOREM_A_FUNCTORS / 4;
    for _ in 0..quarter {
        family.push(gen::random_functor_pair(&mut rng, MAX_OBJECTS));
    }
    for _ in 0..quarter {
        family.push(CatFunctor::identity(Arc::new(gen::random_category(&mut rng, MAX_OBJECTS))));
    }
    for _ in 0..quarter {
        let x = Arc::new(gen::random_category(&mut rng, MAX_OBJECTS));
        family.push(to_point(&x));
    }
    for k in 0..THEOREM_A_FUNCTORS - 3 * quarter {
        let y = Arc::new(gen::fatten_base(&mut rng, k));
        let p = gen::random_surjection(&mut rng, &y, 1);
        family.push(fatten(&y, &p).unwrap().f);
    }

    let (mut certified, mut weak, mut counterexamples, mut errors) = (0, 0, Vec::new(), Vec::new());
    for (i, f) in family.iter().enumerate() {
        match theorem_a_check(f, bounds(THEOREM_TRUNCATION)) {
            Ok(v) => {
                if v.hypothesis_holds {
                    certified += 1;
                    if v.theorem != thma_core::verifiers::TheoremId::A {
                        weak += 1;
                    }
                    if !v.conclusion.holds {
                        counterexamples.push(i);
                    }
                }
            }
            Err(e) => errors.push(format!("#{i}: {e}")),
        }
    }

    let two = Arc::new(interval());
    let z2 = Arc::new(cyclic_group(2));
    let d01 = Arc::new(disc(&["0", "1"]).unwrap());
    let incl = CatFunctor::new(
        d01.clone(),
        two.clone(),
        vec![Obj(0), Obj(1)],
        vec![two.ident(Obj(0)), two.ident(Obj(1))],
    )
    .unwrap();
    let cd = Arc::new(codisc(&["a", "b"]).unwrap());
    let controls = [
        ("disc({0,1}) -> 2", incl),
        ("Z/2 -> pt", to_point(&z2)),
        ("pt -> Z/2", select(&z2, Obj(0))),
        ("disc({a,b}) -> codisc({a,b})", {
            let dab = Arc::new(disc(&["a", "b"]).unwrap());
            CatFunctor::new(
                dab,
                cd.clone(),
                vec![Obj(0), Obj(1)],
                vec![cd.ident(Obj(0)), cd.ident(Obj(1))],
            )
            .unwrap()
        }),
    ];
    let mut control_failures = Vec::new();
    for (name, f) in &controls {
        match theorem_a_check(f, bounds(THEOREM_TRUNCATION)) {
            Ok(v) if !v.hypothesis_holds && !v.conclusion.holds => {}
            Ok(_) => control_failures.push(name.to_string()),
            Err(e) => control_failures.push(format!("{name}: {e}")),
        }
    }
    let pass = counterexamples.is_empty()
        && errors.is_empty()
        && control_failures.is_empty()
        && certified > 0;
    outcome(
        pass,
        format!(
            "{} functors, {} with certified fibers ({} via the homology proxy), \
             counterexamples {:?}, errors {:?}; {} negative controls, failures {:?}",
            family.len(),
            certified,
            weak,
            counterexamples,
            errors,
            controls.len(),
            control_failures
        ),
    )
}

fn c6_morita() -> Outcome {
    let mut rng = gen::rng(6);
    let mut failures = Vec::new();
    let mut kinds = [0usize; 4];
    for k in 0..MORITA_CASES {
        kinds[k % 4] += 1;
        let y = Arc::new(gen::fatten_base(&mut rng, k));
        let p = gen::random_surjection(&mut rng, &y, 2);
        let r = (|| -> thma_core::Result<Option<String>> {
            let fx = fatten(&y, &p)?;
            let v = morita_check(&fx.f, bounds(THEOREM_TRUNCATION))?;
            let slice = slice_decomposition_check(&fx.f)?;
            Ok(match (v.exit_code(), slice.pass()) {
                (0, true) => None,
                (code, s) => Some(format!("exit {code}, slice decomposition {s}")),
            })
        })();
        match r {
            Ok(None) => {}
            Ok(Some(m)) => failures.push(format!("#{k}: {m}")),
            Err(e) => failures.push(format!("#{k}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} fattenings (posets {}, Z/2 {}, Z/3 {}, mixed {}); failures {:?}",
            MORITA_CASES, kinds[0], kinds[1], kinds[2], kinds[3], failures
        ),
    )
}

fn c7_cover() -> Outcome {
    let mut rng = gen::rng(7);
    let mut failures = Vec::new();
    for i in 0..COVER_CASES {
        let u = gen::random_cover(&mut rng, COVER_MAX_BASE, COVER_MAX_PIECES);
        match segal_cover_check(&u, bounds(THEOREM_TRUNCATION)) {
            Ok(v) if v.exit_code() == 0 => {}
            Ok(v) => failures.push(format!("#{i}: exit {}", v.exit_code())),
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    let specific = CoverData::new(
        vec!["1".into(), "2".into()],
        vec![
            ("a".into(), vec!["1".into(), "2".into()]),
            ("b".into(), vec!["2".into()]),
        ],
    );
    let initial = match segal_cover_check(&specific, bounds(THEOREM_TRUNCATION)) {
        Ok(v) => {
            v.exit_code() == 0
                && v.hypotheses.iter().all(|h| {
                    matches!(
                        h.contractibility.as_ref().and_then(|c| c.certificate()).map(|c| &c.kind),
                        Some(CertificateKind::InitialObject { .. })
                    )
                })
        }
        Err(_) => false,
    };
    outcome(
        failures.is_empty() && initial,
        format!(
            "{} random covers (|M| <= {}, <= {} pieces), failures {:?}; \
             M = {{1,2}}, U = {{{{1,2}},{{2}}}} fibers initial-object certified: {}",
            COVER_CASES, COVER_MAX_BASE, COVER_MAX_PIECES, failures, initial
        ),
    )
}

fn c8_homology_fixtures() -> Outcome {
    // (golden case, category, truncation, expected groups in degrees 0..N-1)
    let two = interval();
    let cd = codisc(&["a", "b"]).unwrap();
    let z2 = cyclic_group(2);
    let expected: [(&str, &FinCat, usize, &[&str]); 3] = [
        ("homology_z2.json", &z2, 4, &["Z", "Z/2", "0", "Z/2"]),
        ("homology_codisc_ab.json", &cd, 4, &["Z", "0", "0", "0"]),
        ("homology_two.json", &two, 3, &["Z", "0", "0"]),
    ];
    let mut problems = Vec::new();
    for (golden, c, n, groups) in expected {
        let oracle = oracle::nerve_homology(c, n);
        if oracle != groups {
            problems.push(format!("{golden}: oracle gives {oracle:?}"));
        }
        let case = common::CASES.iter().find(|k| k.golden == golden).unwrap();
        let out = case.run(&[]);
        let frozen = std::fs::read_to_string(case.golden_path()).unwrap_or_default();
        if out.stdout != frozen {
            problems.push(format!("{golden}: report differs from the golden file"));
        }
        let v: Value = serde_json::from_str(&frozen).unwrap_or(Value::Null);
        let reported: Vec<String> = v["result"]["groups"]
            .as_array()
            .map(|a| a.iter().map(|g| g.as_str().unwrap_or("").to_string()).collect())
            .unwrap_or_default();
        if reported != groups {
            problems.push(format!("{golden}: golden file reports {reported:?}"));
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "BZ/2 (Z; Z/2; 0; Z/2), B codisc({{a,b}}) (Z; 0; 0; 0), B2 (Z; 0; 0) \
             against a dense Smith-form oracle and the golden files; problems {problems:?}"
        ),
    )
}

fn c9_homotopy() -> Outcome {
    let mut rng = gen::rng(9);
    let mut failures = Vec::new();
    let (mut degrees, mut nontrivial, mut swapped_caught) = (0, 0, 0);
    for i in 0..HOMOTOPY_CASES {
        let x = Arc::new(gen::random_category(&mut rng, MAX_OBJECTS - 1));
        let y = Arc::new(gen::random_category(&mut rng, MAX_OBJECTS));
        let alpha = gen::random_nat_trans(&mut rng, &x, &y);
        let r = (|| -> thma_core::Result<Option<usize>> {
            let hom = nat_trans_to_homotopy(&alpha, bounds(HOMOTOPY_TRUNCATION))?;
            let check = chain_homotopy_from_simplicial(&hom)?;
            degrees = degrees.max(check.h.degrees());
            if check.start.maps != check.end.maps {
                nontrivial += 1;
                // the same h must not also bound F_* - G_*
                if oracle::homotopy_failure(&check.h, &check.start.maps, &check.end.maps).is_some() {
                    swapped_caught += 1;
                }
            }
            // recomputed densely, independent of the library's own comparison
            Ok(oracle::homotopy_failure(&check.h, &check.end.maps, &check.start.maps))
        })();
        match r {
            Ok(None) => {}
            Ok(Some(n)) => failures.push(format!("#{i}: degree {n}")),
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    outcome(
        failures.is_empty() && nontrivial > 0 && swapped_caught == nontrivial,
        format!(
            "{} transformations at N = {}, exact in degrees 0..={} ({} with G_* != F_*, \
             swapped endpoints rejected in {}); failures {:?}",
            HOMOTOPY_CASES,
            HOMOTOPY_TRUNCATION,
            degrees.saturating_sub(1),
            nontrivial,
            swapped_caught,
            failures
        ),
    )
}

fn c10_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_thma");
    let mut problems = Vec::new();
    for case in common::CASES {
        let golden = std::fs::read_to_string(case.golden_path()).unwrap_or_default();
        let mut runs = vec![("first run".to_string(), case.run(&[]).stdout)];
        runs.push(("second run".into(), case.run(&[]).stdout));
        let argv = case.argv(&[]);
        match std::process::Command::new(exe).args(&argv[1..]).output() {
            Ok(out) => runs.push(("binary".into(), String::from_utf8_lossy(&out.stdout).into_owned())),
            Err(e) => problems.push(format!("{}: {e}", case.golden)),
        }
        for seed in SHUFFLE_SEEDS {
            let extra = vec!["--shuffle-seed".to_string(), seed.to_string()];
            runs.push((format!("shuffle {seed}"), case.run(&extra).stdout));
        }
        for (label, text) in runs {
            if text != golden {
                problems.push(format!("{} ({label})", case.golden));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} golden reports, 2 runs + binary + {} shuffled bases each; mismatches {:?}",
            common::CASES.len(),
            SHUFFLE_SEEDS.len(),
            problems
        ),
    )
}

mod num_like {
    pub fn gcd(a: i128, b: i128) -> i128 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
}

/// Brute-force references that share no code with the library's homology.
mod oracle {
    use super::*;

    /// Nondegenerate simplices of the nerve: strings of non-identity
    /// composable morphisms, with objects in degree 0.
    fn simplices(c: &FinCat, n: usize) -> Vec<Vec<Mor>> {
        let mut level: Vec<Vec<Mor>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for s in &level {
                for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
                    if s.last().map_or(true, |&l| c.tgt(l) == c.src(m)) {
                        let mut t = s.clone();
                        t.push(m);
                        next.push(t);
                    }
                }
            }
            level = next;
        }
        level
    }

    /// Dense boundary `C_n → C_{n-1}` with the face maps written out by hand.
    fn boundary(c: &FinCat, n: usize) -> Vec<Vec<i128>> {
        let rows = if n == 1 { c.object_count() } else { simplices(c, n - 1).len() };
        let below: HashMap<Vec<Mor>, usize> = if n == 1 {
            HashMap::new()
        } else {
            simplices(c, n - 1).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
        };
        let cells = simplices(c, n);
        let mut d = vec![vec![0i128; cells.len()]; rows];
        for (j, s) in cells.iter().enumerate() {
            if n == 1 {
                d[c.tgt(s[0]).idx()][j] += 1;
                d[c.src(s[0]).idx()][j] -= 1;
                continue;
            }
            for i in 0..=n {
                let face: Option<Vec<Mor>> = if i == 0 {
                    Some(s[1..].to_vec())
                } else if i == n {
                    Some(s[..n - 1].to_vec())
                } else {
                    let gf = c.compose(s[i], s[i - 1]);
                    (!c.is_identity(gf)).then(|| {
                        let mut t = s[..i - 1].to_vec();
                        t.push(gf);
                        t.extend_from_slice(&s[i + 1..]);
                        t
                    })
                };
                if let Some(f) = face {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d[below[&f]][j] += sign;
                }
            }
        }
        d
    }

    /// Diagonal entries of a Smith normal form, by repeated pivoting.
    pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            // smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if a[r][c] != 0 && best.map_or(true, |(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else { break };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let p = a[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let q = a[r][t] / p;
                if q != 0 {
                    for c in t..cols {
                        a[r][c] -= q * a[t][c];
                    }
                }
                clean &= a[r][t] == 0;
            }
            for c in t + 1..cols {
                let q = a[t][c] / p;
                if q != 0 {
                    for r in t..rows {
                        a[r][c] -= q * a[r][t];
                    }
                }
                clean &= a[t][c] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest, or its row absorbs an offender
            let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a[r][c] % p != 0));
            if let Some(r) = offender {
                for c in t..cols {
                    a[t][c] += a[r][c];
                }
                continue;
            }
            diag.push(p.abs());
            t += 1;
        }
        diag
    }

    fn group(betti: usize, torsion: &[i128]) -> String {
        let mut parts = Vec::new();
        match betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Groups `H_0 .. H_{n-1}` of the nerve truncated at `n`.
    pub fn nerve_homology(c: &FinCat, n: usize) -> Vec<String> {
        let dims: Vec<usize> = (0..=n)
            .map(|k| if k == 0 { c.object_count() } else { simplices(c, k).len() })
            .collect();
        let factors: Vec<Vec<i128>> = (0..=n)
            .map(|k| if k == 0 { Vec::new() } else { smith_diagonal(boundary(c, k)) })
            .collect();
        (0..n)
            .map(|k| {
                let betti = dims[k] - factors[k].len() - factors[k + 1].len();
                let torsion: Vec<i128> = factors[k + 1].iter().copied().filter(|&t| t > 1).collect();
                debug_assert!(torsion.windows(2).all(|w| gcd(w[0], w[1]) == w[0]));
                group(betti, &torsion)
            })
            .collect()
    }

    fn dense(m: &thma_core::homology::IntMatrix) -> Vec<Vec<i128>> {
        m.to_dense()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string().parse().unwrap()).collect())
            .collect()
    }

    fn mul(a: &[Vec<i128>], b: &[Vec<i128>], rows: usize, cols: usize) -> Vec<Vec<i128>> {
        let mut out = vec![vec![0; cols]; rows];
        for (i, row) in a.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                if v != 0 {
                    for j in 0..cols {
                        out[i][j] += v * b[k][j];
                    }
                }
            }
        }
        out
    }

    /// First degree where `∂h + h∂ ≠ G_* − F_*`, checked entry by entry.
    pub fn homotopy_failure(
        h: &thma_core::homology::ChainHomotopyData,
        g: &[thma_core::homology::IntMatrix],
        f: &[thma_core::homology::IntMatrix],
    ) -> Option<usize> {
        for n in 0..h.degrees() {
            let rows = h.target.rank(n);
            let cols = h.source.rank(n);
            let mut lhs = mul(&dense(h.target.boundary(n + 1)), &dense(&h.h[n]), rows, cols);
            if n > 0 {
                let more = mul(&dense(&h.h[n - 1]), &dense(h.source.boundary(n)), rows, cols);
                for (a, b) in lhs.iter_mut().zip(more) {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                }
            }
            let (g, f) = (dense(&g[n]), dense(&f[n]));
            for i in 0..rows {
                for j in 0..cols {
                    if lhs[i][j] != g[i][j] - f[i][j] {
                        return Some(n);
                    }
                }
            }
        }
        None
    }
}
