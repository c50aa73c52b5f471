use std::sync::Arc;

use super::*;
use crate::cat::fixtures::{cyclic_group, idempotent_monoid, interval};
use crate::cat::{codisc, disc, terminal, CatFunctor, FinCat, Mor, NatTrans, Obj};
use crate::constructions::{t_category, twisted_arrow};

fn two() -> Arc<FinCat> {
    Arc::new(interval())
}

fn select(y: &Arc<FinCat>, o: Obj) -> CatFunctor {
    CatFunctor::constant(Arc::new(terminal()), y.clone(), o).unwrap()
}

/// Counts composable strings of length `n` by brute force over all tuples.
fn count_strings(c: &FinCat, n: usize) -> usize {
    if n == 0 {
        return c.object_count();
    }
    let mut count = 0;
    let m = c.morphism_count();
    let mut idx = vec![0usize; n];
    loop {
        if (1..n).all(|j| c.src(Mor(idx[j] as u32)) == c.tgt(Mor(idx[j - 1] as u32))) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn nerve_sizes() {
    let n2 = nerve(&interval(), 2).unwrap();
    assert_eq!(n2.sizes(), vec![2, 3, 4]);
    assert_eq!(
        n2.sizes(),
        (0..=2).map(|n| count_strings(&interval(), n)).collect::<Vec<_>>()
    );
    let z2 = cyclic_group(2);
    let nz = nerve(&z2, 3).unwrap();
    assert_eq!(nz.sizes(), vec![1, 2, 4, 8]);
    for c in [idempotent_monoid(), codisc(&["a", "b", "c"]).unwrap()] {
        let x = nerve(&c, 3).unwrap();
        let oracle: Vec<usize> = (0..=3).map(|n| count_strings(&c, n)).collect();
        assert_eq!(x.sizes(), oracle);
    }
}

#[test]
fn nerve_of_discrete_is_constant() {
    let d = disc(&["a", "b", "c"]).unwrap();
    let x = nerve(&d, 3).unwrap();
    assert_eq!(x.sizes(), vec![3, 3, 3, 3]);
    for n in 1..=3 {
        assert_eq!(x.nondegenerate_count(n), 0);
    }
}

#[test]
fn simplicial_identities_hold() {
    for c in [
        interval(),
        cyclic_group(3),
        idempotent_monoid(),
        codisc(&["a", "b"]).unwrap(),
    ] {
        let x = nerve(&c, 4).unwrap();
        x.check_identities().unwrap();
        // level 1 is the morphisms, level 0 the objects
        assert_eq!(x.len(0), c.object_count());
        assert_eq!(x.len(1), c.morphism_count());
        assert_eq!(x.nondegenerate_count(1), c.morphism_count() - c.object_count());
    }
}

#[test]
fn vertices_of_strings() {
    let c = interval();
    let x = nerve(&c, 3).unwrap();
    let s = x.lookup(3, &[0, 2, 1]).unwrap();
    let vs: Vec<u32> = (0..=3).map(|j| x.vertex(3, s, j)).collect();
    assert_eq!(vs, vec![0, 0, 1, 1]);
}

#[test]
fn nerve_maps() {
    let y = two();
    let id = CatFunctor::identity(y.clone());
    let m = nerve_map(&id, 3).unwrap();
    assert_eq!(m, SimplicialMap::identity(m.source.clone()));
    m.check().unwrap();

    let t = Arc::new(terminal());
    let f = CatFunctor::constant(t.clone(), y.clone(), Obj(1)).unwrap();
    let g = CatFunctor::constant(y.clone(), t.clone(), Obj(0)).unwrap();
    let nt = Arc::new(nerve(&t, 3).unwrap());
    let ny = Arc::new(nerve(&y, 3).unwrap());
    let nf = nerve_map_between(&f, &nt, &ny).unwrap();
    let ng = nerve_map_between(&g, &ny, &nt).unwrap();
    nf.check().unwrap();
    ng.check().unwrap();
    let gf = g.after(&f).unwrap();
    assert_eq!(ng.after(&nf).unwrap(), nerve_map_between(&gf, &nt, &nt).unwrap());
    let fg = f.after(&g).unwrap();
    let nfg = nerve_map_between(&fg, &ny, &ny).unwrap();
    assert_eq!(nf.after(&ng).unwrap(), nfg);
    // the constant map hits one simplex per level
    for l in &nfg.levels {
        assert!(l.iter().all(|&s| s == l[0]));
    }
}

/// Counts `(κ, η, ν)` with `κ: a → y0`, `η: y0 → f x0`, `ν: x0 → x1`.
fn count_triples(f: &CatFunctor) -> usize {
    let (x, y) = (f.dom(), f.cod());
    let mut n = 0;
    for k in y.morphisms() {
        for e in y.morphisms() {
            for v in x.morphisms() {
                if y.tgt(k) == y.src(e) && y.tgt(e) == f.obj(x.src(v)) {
                    n += 1;
                }
            }
        }
    }
    n
}

#[test]
fn d_of_identity_on_interval() {
    let y = two();
    let id = CatFunctor::identity(y.clone());
    let d = bisimplicial_d(&id, 3).unwrap();
    assert_eq!(d.len(0, 0), 3);
    assert_eq!(count_triples(&id), 5);
    assert_eq!(d.len(1, 1), 5);
    d.check_identities().unwrap();
    let diag = diagonal(&d).unwrap();
    assert_eq!(diag.len(1), 5);
    diag.check_identities().unwrap();
}

#[test]
fn degeneracies_keep_eta() {
    let fs = [
        CatFunctor::identity(two()),
        select(&two(), Obj(1)),
        CatFunctor::identity(Arc::new(cyclic_group(2))),
    ];
    for f in fs {
        let d = bisimplicial_d(&f, 3).unwrap();
        d.check_identities().unwrap();
        for p in 0..3 {
            for q in 0..3 {
                for x in 0..d.len(p, q) as u32 {
                    let eta = d.key(p, q, x)[p];
                    for i in 0..=q {
                        assert_eq!(d.key(p, q + 1, d.sh(p, q, i, x))[p], eta);
                    }
                    for i in 0..=p {
                        assert_eq!(d.key(p + 1, q, d.sv(p, q, i, x))[p + 1], eta);
                    }
                }
            }
        }
    }
}

#[test]
fn diagonal_of_constant_is_the_column() {
    let x = nerve(&cyclic_group(2), 3).unwrap();
    let t = constant_in_q(&x).unwrap();
    t.check_identities().unwrap();
    assert_eq!(diagonal(&t).unwrap(), x);
}

#[test]
fn external_product_identities() {
    let x = nerve(&interval(), 3).unwrap();
    let y = nerve(&cyclic_group(2), 3).unwrap();
    let t = external_product(&x, &y, 3.into()).unwrap();
    t.check_identities().unwrap();
    let d = diagonal(&t).unwrap();
    d.check_identities().unwrap();
    assert_eq!(d.sizes(), product(&x, &y, 3.into()).unwrap().sizes());
}

#[test]
fn diagonal_is_nerve_of_s() {
    let y = two();
    let iso = check_diag_equals_nerve_s(&CatFunctor::identity(y.clone()), 3).unwrap();
    let tw = nerve(&twisted_arrow(&y).unwrap().cat, 3).unwrap();
    assert_eq!(iso.diagonal.sizes(), tw.sizes());
    assert_eq!(&iso.diagonal.sizes()[..2], &[3, 5]);
    check_diag_equals_nerve_s(&select(&y, Obj(1)), 3).unwrap();
    let z = Arc::new(cyclic_group(3));
    let to_point = CatFunctor::constant(z, Arc::new(terminal()), Obj(0)).unwrap();
    check_diag_equals_nerve_s(&to_point, 3).unwrap();
}

#[test]
fn beta_matches_p_f() {
    for f in [CatFunctor::identity(two()), select(&two(), Obj(1))] {
        let bounds = Bounds::from(3);
        let iso = check_diag_equals_nerve_s(&f, bounds).unwrap();
        let y_op = crate::cat::opposite(f.cod()).unwrap();
        let nyop = Arc::new(nerve(&y_op, bounds).unwrap());
        let target = Arc::new(constant_in_q(&nyop).unwrap());
        let beta = projection_beta_between(&f, &iso.d, &target).unwrap();
        beta.check().unwrap();
        let d_beta = beta.diagonal_between(&iso.diagonal, &nyop).unwrap();
        d_beta.check().unwrap();
        let p_f = nerve_map_between(&iso.span.p_f, &iso.nerve_s, &nyop).unwrap();
        assert_eq!(p_f.after(&iso.map).unwrap(), d_beta);
        // on D(f)_{p,0} beta forgets eta and x_0
        for p in 1..=3 {
            for x in 0..iso.d.len(p, 0) as u32 {
                let key = iso.d.key(p, 0, x);
                assert_eq!(target.key(p, 0, beta.apply(p, 0, x)), &key[..p]);
            }
        }
    }
    assert!(projection_beta(&CatFunctor::identity(two()), 2).is_ok());
}

#[test]
fn identity_transformation_gives_degenerate_homotopy() {
    let y = two();
    let f = CatFunctor::identity(y.clone());
    let h = nat_trans_to_homotopy(&NatTrans::identity(f), 3).unwrap();
    h.map.check().unwrap();
    let (h0, h1) = (h.endpoint(0).unwrap(), h.endpoint(1).unwrap());
    assert_eq!(h0, h1);
    assert_eq!(h0, SimplicialMap::identity(h.base.clone()));
}

#[test]
fn sigma_homotopy_endpoints() {
    let t = t_category(&two()).unwrap();
    let eta = &t.sigma.eta;
    let h = nat_trans_to_homotopy(eta, 3).unwrap();
    h.map.check().unwrap();
    let sp = t.sigma.retraction().unwrap();
    assert_eq!(
        h.endpoint(0).unwrap(),
        nerve_map_between(&sp, &h.base, h.target()).unwrap()
    );
    assert_eq!(h.endpoint(1).unwrap(), SimplicialMap::identity(h.base.clone()));
}

#[test]
fn unnatural_transformation_is_refused() {
    let t = t_category(&two()).unwrap();
    let u = t.cat.object_by_name("u").unwrap();
    let bad = t.sigma.eta.with_component(u, t.cat.ident(u)).unwrap();
    assert!(nat_trans_to_homotopy(&bad, 2).is_err());
}

#[test]
fn budget_is_enforced() {
    let c = codisc(&["a", "b", "c", "d"]).unwrap();
    let err = nerve(&c, Bounds::new(4, 100)).unwrap_err();
    assert!(matches!(err, crate::Error::BudgetExceeded { .. }));
    assert!(nerve(&c, 0).is_err());
}
