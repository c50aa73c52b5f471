use super::*;
use crate::cat::fixtures::{cyclic_group, idempotent_monoid, interval};
use crate::cat::{codisc, disc, object_inclusion, validate_category, validate_functor};
use crate::simplicial::nerve;

fn no_files(p: &str) -> Result<CategoryDocument> {
    Err(Error::Document(format!("no file `{p}` here")))
}

#[test]
fn category_round_trip() {
    for c in [
        interval(),
        cyclic_group(3),
        idempotent_monoid(),
        codisc(&["a", "b"]).unwrap(),
        disc(&["x"]).unwrap(),
    ] {
        let doc = CategoryDocument::from_cat(&c);
        let text = doc.to_json().unwrap();
        let again = CategoryDocument::parse(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.to_json().unwrap(), text);
        let back = again.to_cat().unwrap();
        assert!(back.same_tables(&c));
        assert_eq!(back.object_names(), c.object_names());
    }
}

#[test]
fn keys_are_sorted() {
    let text = CategoryDocument::from_cat(&interval()).to_json().unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("composition") < pos("format"));
    assert!(pos("format") < pos("identities"));
    assert!(pos("identities") < pos("morphisms"));
    assert!(pos("morphisms") < pos("objects"));
    assert!(text.ends_with("}\n"));
}

#[test]
fn missing_triple_is_a_validation_failure() {
    let mut doc = CategoryDocument::from_cat(&interval());
    let i = doc
        .composition
        .iter()
        .position(|t| t[0] == "id_1" && t[1] == "u")
        .unwrap();
    doc.composition.remove(i);
    let c = doc.to_cat().unwrap();
    let report = validate_category(&c);
    assert!(!report.pass());
    let text = report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n");
    assert!(text.contains("id_1") && text.contains('u'), "{text}");
}

#[test]
fn malformed_text_reports_a_position() {
    let err = CategoryDocument::parse("{\n  \"format\": \"thma-category/1\",\n  \"objects\": [\n").unwrap_err();
    match err {
        Error::Document(m) => assert!(m.starts_with("line "), "{m}"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        CategoryDocument::parse(r#"{"format": "thma-cover/1", "objects": [], "morphisms": [], "identities": {}, "composition": []}"#),
        Err(Error::Document(_))
    ));
}

#[test]
fn unknown_identifiers_are_document_errors() {
    let mut doc = CategoryDocument::from_cat(&interval());
    doc.morphisms[2].tgt = "2".into();
    assert!(matches!(doc.to_cat(), Err(Error::Document(_))));
    let mut doc = CategoryDocument::from_cat(&interval());
    doc.composition.push(["v".into(), "u".into(), "u".into()]);
    assert!(matches!(doc.to_cat(), Err(Error::Document(_))));
}

fn chain_document(n: usize) -> CategoryDocument {
    // the poset 0 < 1 < ... < n-1 with no composites given
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut morphisms = Vec::new();
    for i in 0..n {
        for j in i..n {
            morphisms.push(MorphismEntry {
                id: if i == j { format!("id_{i}") } else { format!("{i}{j}") },
                src: i.to_string(),
                tgt: j.to_string(),
            });
        }
    }
    CategoryDocument {
        format: CATEGORY_FORMAT.into(),
        identities: (0..n).map(|i| (i.to_string(), format!("id_{i}"))).collect(),
        objects,
        morphisms,
        composition: Vec::new(),
    }
}

#[test]
fn closure_fills_a_poset() {
    let closed = close_composition(&chain_document(4)).unwrap();
    let c = closed.to_cat().unwrap();
    assert!(validate_category(&c).pass());
    assert_eq!(c.morphism_count(), 10);
}

#[test]
fn closure_uses_associativity() {
    // Z/2 with only g·g = e given; units fill the rest
    let mut doc = CategoryDocument::from_cat(&cyclic_group(2));
    doc.composition.retain(|t| t[0] == "g1" && t[1] == "g1");
    let closed = close_composition(&doc).unwrap();
    assert!(closed.to_cat().unwrap().same_tables(&cyclic_group(2)));
}

#[test]
fn closure_reports_ambiguity_and_gaps() {
    let mut doc = CategoryDocument::from_cat(&cyclic_group(2));
    doc.composition.clear();
    assert!(matches!(close_composition(&doc), Err(Error::Closure(_))));

    let mut doc = chain_document(2);
    doc.morphisms.push(MorphismEntry {
        id: "v".into(),
        src: "0".into(),
        tgt: "1".into(),
    });
    doc.composition.push(["id_1".into(), "01".into(), "v".into()]);
    assert!(matches!(close_composition(&doc), Err(Error::Closure(_))));
}

#[test]
fn functor_round_trip() {
    let y = Arc::new(interval());
    let f = object_inclusion(&y).unwrap();
    let doc = FunctorDocument::from_functor(&f);
    let text = to_canonical_json(&doc).unwrap();
    let back = FunctorDocument::parse(&text).unwrap().to_functor(&no_files).unwrap();
    assert_eq!(back.obj_map(), f.obj_map());
    assert_eq!(back.mor_map(), f.mor_map());
    assert!(validate_functor(&back).pass());

    let mut bad = doc.clone();
    bad.obj_map.remove("0");
    assert!(matches!(bad.to_functor(&no_files), Err(Error::Document(_))));

    let by_path = FunctorDocument {
        dom: CategoryRef::Path("x.json".into()),
        ..doc
    };
    let load = |p: &str| {
        assert_eq!(p, "x.json");
        Ok(CategoryDocument::from_cat(&disc(&["0", "1"]).unwrap()))
    };
    assert!(by_path.to_functor(&load).is_ok());
}

#[test]
fn cover_and_fatten_documents() {
    let text = r#"{"format": "thma-cover/1", "base": ["1", "2"],
                   "pieces": {"b": ["2"], "a": ["1", "2"]}}"#;
    let cover = CoverDocument::parse(text).unwrap().to_cover();
    assert_eq!(cover.pieces[0].0, "a");
    cover.check().unwrap();
    let again = CoverDocument::from_cover(&cover);
    assert_eq!(again.to_cover(), cover);

    let f = FattenDocument {
        format: FATTEN_FORMAT.into(),
        category: CategoryRef::Inline(CategoryDocument::from_cat(&interval())),
        map: [("0", "0"), ("0'", "0"), ("1", "1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    let text = to_canonical_json(&f).unwrap();
    let (y, p) = FattenDocument::parse(&text).unwrap().resolve(&no_files).unwrap();
    assert_eq!(y.object_count(), 2);
    assert_eq!(p.len(), 3);
}

#[test]
fn simplicial_round_trip() {
    let x = nerve(&cyclic_group(2), 3).unwrap();
    let doc = SimplicialDocument::from_set(&x);
    let text = to_canonical_json(&doc).unwrap();
    let back = SimplicialDocument::parse(&text).unwrap().to_set().unwrap();
    assert_eq!(back, x);

    let mut broken = doc.clone();
    broken.levels[2].faces[0].swap(0, 1);
    assert!(broken.to_set().is_err());
}

#[test]
fn dot_examples() {
    let two = to_dot(&interval());
    assert_eq!(two.matches(" -> ").count(), 1);
    assert!(two.contains("\"0\" -> \"1\" [label=\"u\"]"));
    let d = to_dot(&disc(&["a", "b", "c"]).unwrap());
    assert_eq!(d.matches(" -> ").count(), 0);
    assert_eq!(d.lines().count(), 5);
    let cd = to_dot(&codisc(&["a", "b"]).unwrap());
    assert_eq!(cd.matches(" -> ").count(), 2);
}
