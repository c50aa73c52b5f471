//! Small named categories used throughout examples and tests.

use super::category::{FinCat, Mor, MorphismData, Obj};
use crate::error::Result;

/// The interval category `2`: objects `0`, `1` and one arrow `u: 0 → 1`.
pub fn interval() -> FinCat {
    let mors = vec![
        MorphismData { name: "id_0".into(), src: Obj(0), tgt: Obj(0) },
        MorphismData { name: "id_1".into(), src: Obj(1), tgt: Obj(1) },
        MorphismData { name: "u".into(), src: Obj(0), tgt: Obj(1) },
    ];
    let (i0, i1, u) = (Mor(0), Mor(1), Mor(2));
    FinCat::from_parts(
        vec!["0".into(), "1".into()],
        mors,
        vec![i0, i1],
        [(i0, i0, i0), (i1, i1, i1), (u, i0, u), (i1, u, u)],
    )
    .expect("interval category")
}

/// A one-object category from a monoid multiplication table
/// (`table[a][b] = a·b`, element 0 the unit). Element names are `e`
/// followed by the given names.
pub fn monoid(object: &str, names: &[&str], table: &[Vec<usize>]) -> Result<FinCat> {
    let mors = names
        .iter()
        .map(|n| MorphismData { name: n.to_string(), src: Obj(0), tgt: Obj(0) })
        .collect();
    let mut triples = Vec::new();
    for (a, row) in table.iter().enumerate() {
        for (b, &ab) in row.iter().enumerate() {
            triples.push((Mor(a as u32), Mor(b as u32), Mor(ab as u32)));
        }
    }
    FinCat::from_parts(vec![object.to_string()], mors, vec![Mor(0)], triples)
}

/// The cyclic group `Z/n` as a one-object category; elements `g0 .. g{n-1}`.
pub fn cyclic_group(n: usize) -> FinCat {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|k| format!("g{k}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    monoid("*", &refs, &table).expect("cyclic group")
}

/// The monoid `{e, z}` with `z·z = z`.
pub fn idempotent_monoid() -> FinCat {
    monoid("*", &["e", "z"], &[vec![0, 1], vec![1, 1]]).expect("idempotent monoid")
}
