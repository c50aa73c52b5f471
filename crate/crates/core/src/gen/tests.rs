use super::*;
use crate::cat::{validate_category, validate_functor, validate_nat_trans};

#[test]
fn generated_categories_validate() {
    let mut r = rng(7);
    for _ in 0..200 {
        let c = random_category(&mut r, 4);
        assert!(c.object_count() <= 4);
        assert!(validate_category(&c).pass());
    }
}

#[test]
fn generators_are_deterministic() {
    let a = random_functor_pair(&mut rng(11), 4);
    let b = random_functor_pair(&mut rng(11), 4);
    assert!(a.dom().same_tables(b.dom()) && a.cod().same_tables(b.cod()));
    assert_eq!(a.mor_map(), b.mor_map());
}

#[test]
fn generated_functors_and_transformations_validate() {
    let mut r = rng(3);
    for _ in 0..100 {
        let f = random_functor_pair(&mut r, 4);
        assert!(validate_functor(&f).pass());
        let alpha = random_nat_trans(&mut r, f.dom(), f.cod());
        assert!(validate_nat_trans(&alpha).pass());
    }
}

#[test]
fn exhaustive_family_small_counts() {
    // one object, at most two morphisms: the trivial monoid, and the two
    // monoids of order two (Z/2 and {1, e} with e·e = e)
    assert_eq!(exhaustive_family(1, 2, 2).len(), 3);
    // two objects, hom-sets of size at most one: disc, 2 and its relabelling
    assert_eq!(exhaustive_family(2, 3, 1).len(), 1 + 1 + 2);
    for c in exhaustive_family(3, 8, 2) {
        assert!(validate_category(&c).pass());
    }
}

#[test]
fn covers_cover() {
    let mut r = rng(5);
    for _ in 0..100 {
        let u = random_cover(&mut r, 6, 4);
        u.check().unwrap();
        assert!(u.base.len() <= 6 && u.pieces.len() <= 4);
    }
}

#[test]
fn surjections_hit_every_object() {
    let mut r = rng(9);
    for k in 0..20 {
        let y = fatten_base(&mut r, k);
        let p = random_surjection(&mut r, &y, 2);
        for o in y.objects() {
            assert!(p.iter().any(|(_, t)| *t == o));
        }
    }
}
