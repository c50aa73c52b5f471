//! Seeded generators for test inputs: posets, small monoids and groups,
//! mixed categories, an exhaustive family of tiny categories, random
//! functors, natural transformations, covers and fattening data.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cat::fixtures::{cyclic_group, idempotent_monoid, interval};
use crate::cat::{
    codisc, disc, disjoint_union, opposite, product, terminal, Assembler, CatFunctor, FinCat,
    Mor, MorphismData, NatTrans, Obj,
};
use crate::constructions::CoverData;
use crate::simplicial::transformation_functor;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The poset on `0..n` generated by the given strict relations.
pub fn poset(n: usize, less: &[(usize, usize)]) -> FinCat {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in less {
        le[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut asm = Assembler::<usize, (usize, usize)>::new();
    let objs: Vec<Obj> = (0..n).map(|i| asm.object(i, format!("p{i}"))).collect();
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                let name = if i == j { format!("id_p{i}") } else { format!("p{i}<p{j}") };
                asm.morphism((i, j), name, objs[i], objs[j]);
            }
        }
    }
    asm.finish(|&i| (i, i), |&(_, k), &(i, _)| (i, k))
        .expect("poset")
}

/// A random poset on `n` points, each pair `i < j` related with probability
/// `p` before closing.
pub fn random_poset(rng: &mut Rng8, n: usize, p: f64) -> FinCat {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut less = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                less.push((order[a], order[b]));
            }
        }
    }
    poset(n, &less)
}

/// A random small category with at most `max_objects` objects, drawn from
/// posets, groups, monoids, codiscrete and discrete categories, and their
/// sums, products and opposites.
pub fn random_category(rng: &mut Rng8, max_objects: usize) -> FinCat {
    let max_objects = max_objects.max(1);
    loop {
        let c = match rng.gen_range(0..9) {
            0 | 1 => {
                let n = rng.gen_range(1..=max_objects.min(4));
                random_poset(rng, n, 0.5)
            }
            2 => cyclic_group(rng.gen_range(1..=3)),
            3 => idempotent_monoid(),
            4 => {
                let n = rng.gen_range(1..=max_objects.min(3));
                let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
                codisc(&names).expect("codisc")
            }
            5 => {
                let n = rng.gen_range(1..=max_objects.min(3));
                let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
                disc(&names).expect("disc")
            }
            6 => {
                let a = random_category(rng, max_objects / 2);
                let b = random_category(rng, max_objects - a.object_count().min(max_objects - 1));
                disjoint_union(&a, &b).expect("disjoint union")
            }
            7 => {
                let g = cyclic_group(rng.gen_range(2..=3));
                product(&interval(), &g).expect("product")
            }
            _ => {
                let a = random_category(rng, max_objects);
                opposite(&a).expect("opposite")
            }
        };
        if c.object_count() <= max_objects {
            return c;
        }
    }
}

/// Extends an object map to a functor, trying morphism images in random
/// order. Returns `None` when no extension exists.
pub fn extend_functor(
    rng: &mut Rng8,
    x: &Arc<FinCat>,
    y: &Arc<FinCat>,
    obj_map: &[Obj],
) -> Option<CatFunctor> {
    let mut mor_map: Vec<Option<Mor>> = vec![None; x.morphism_count()];
    for o in x.objects() {
        mor_map[x.ident(o).idx()] = Some(y.ident(obj_map[o.idx()]));
    }
    let free: Vec<Mor> = x.morphisms().filter(|&m| !x.is_identity(m)).collect();
    let triples = x.composition_triples();
    let consistent = |mm: &[Option<Mor>]| {
        triples.iter().all(|&(g, f, gf)| match (mm[g.idx()], mm[f.idx()], mm[gf.idx()]) {
            (Some(a), Some(b), Some(c)) => y.comp(a, b) == Some(c),
            _ => true,
        })
    };
    fn go(
        k: usize,
        free: &[Mor],
        rng: &mut Rng8,
        x: &FinCat,
        y: &FinCat,
        obj_map: &[Obj],
        mm: &mut Vec<Option<Mor>>,
        consistent: &dyn Fn(&[Option<Mor>]) -> bool,
        budget: &mut usize,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if k == free.len() {
            return true;
        }
        let m = free[k];
        let mut options: Vec<Mor> = y
            .hom(obj_map[x.src(m).idx()], obj_map[x.tgt(m).idx()])
            .collect();
        options.shuffle(rng);
        for g in options {
            mm[m.idx()] = Some(g);
            if consistent(mm) && go(k + 1, free, rng, x, y, obj_map, mm, consistent, budget) {
                return true;
            }
        }
        mm[m.idx()] = None;
        false
    }
    let mut budget = 20_000;
    if !go(0, &free, rng, x, y, obj_map, &mut mor_map, &consistent, &mut budget) {
        return None;
    }
    let mor_map = mor_map.into_iter().map(|m| m.expect("assigned")).collect();
    let f = CatFunctor::new(x.clone(), y.clone(), obj_map.to_vec(), mor_map).ok()?;
    f.validate().pass().then_some(f)
}

/// A random functor `x → y`; falls back to a constant functor.
pub fn random_functor(rng: &mut Rng8, x: &Arc<FinCat>, y: &Arc<FinCat>) -> CatFunctor {
    for _ in 0..20 {
        let obj_map: Vec<Obj> = x
            .objects()
            .map(|_| Obj(rng.gen_range(0..y.object_count()) as u32))
            .collect();
        if let Some(f) = extend_functor(rng, x, y, &obj_map) {
            return f;
        }
    }
    let o = Obj(rng.gen_range(0..y.object_count()) as u32);
    CatFunctor::constant(x.clone(), y.clone(), o).expect("constant functor")
}

/// A random functor between random categories with at most `max_objects`
/// objects each.
pub fn random_functor_pair(rng: &mut Rng8, max_objects: usize) -> CatFunctor {
    let x = Arc::new(random_category(rng, max_objects));
    let y = Arc::new(random_category(rng, max_objects));
    random_functor(rng, &x, &y)
}

/// A random natural transformation `F ⇒ G: x → y`, read off a random
/// functor `x × 2 → y`. Prefers transformations with some non-identity
/// component.
pub fn random_nat_trans(rng: &mut Rng8, x: &Arc<FinCat>, y: &Arc<FinCat>) -> NatTrans {
    let x2 = Arc::new(product(x, &interval()).expect("product"));
    let mut alpha = nat_trans_from(x, y, &random_functor(rng, &x2, y));
    for _ in 0..10 {
        if !alpha.is_identity() {
            break;
        }
        alpha = nat_trans_from(x, y, &random_functor(rng, &x2, y));
    }
    debug_assert!(transformation_functor(&alpha).is_ok());
    alpha
}

fn nat_trans_from(x: &Arc<FinCat>, y: &Arc<FinCat>, h: &CatFunctor) -> NatTrans {
    // product indexing: objects o*2 + b, morphisms m*3 + t with t = id_0, id_1, u
    let side = |b: u32| {
        CatFunctor::new(
            x.clone(),
            y.clone(),
            x.objects().map(|o| h.obj(Obj(o.0 * 2 + b))).collect(),
            x.morphisms().map(|m| h.mor(Mor(m.0 * 3 + b))).collect(),
        )
        .expect("restriction")
    };
    let components = x
        .objects()
        .map(|o| h.mor(Mor(x.ident(o).0 * 3 + 2)))
        .collect();
    NatTrans::new(side(0), side(1), components).expect("natural transformation")
}

/// A random cover of `{m0, ..}` with `|M| ≤ max_base` and at most
/// `max_pieces` pieces.
pub fn random_cover(rng: &mut Rng8, max_base: usize, max_pieces: usize) -> CoverData {
    let n = rng.gen_range(1..=max_base);
    let k = rng.gen_range(1..=max_pieces);
    let base: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
    let mut pieces: Vec<Vec<bool>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    // every point lands somewhere
    for i in 0..n {
        if !pieces.iter().any(|p| p[i]) {
            let j = rng.gen_range(0..k);
            pieces[j][i] = true;
        }
    }
    CoverData::new(
        base.clone(),
        pieces
            .iter()
            .enumerate()
            .map(|(j, p)| {
                let members = (0..n).filter(|&i| p[i]).map(|i| base[i].clone()).collect();
                (format!("U{j}"), members)
            })
            .collect(),
    )
}

/// A random surjection onto the objects of `y`, as `(point, object)` pairs;
/// up to `extra` additional points.
pub fn random_surjection(rng: &mut Rng8, y: &FinCat, extra: usize) -> Vec<(String, Obj)> {
    let mut targets: Vec<Obj> = y.objects().collect();
    let more = rng.gen_range(0..=extra);
    for _ in 0..more {
        targets.push(Obj(rng.gen_range(0..y.object_count()) as u32));
    }
    targets.shuffle(rng);
    targets
        .into_iter()
        .enumerate()
        .map(|(i, o)| (format!("s{i}"), o))
        .collect()
}

/// Bases used for fattening: posets, `Z/2`, `Z/3`, and mixed categories.
pub fn fatten_base(rng: &mut Rng8, kind: usize) -> FinCat {
    match kind % 4 {
        0 => {
            let n = rng.gen_range(1..=3);
            random_poset(rng, n, 0.6)
        }
        1 => cyclic_group(2),
        2 => cyclic_group(3),
        _ => match rng.gen_range(0..3) {
            0 => product(&interval(), &cyclic_group(2)).expect("product"),
            1 => disjoint_union(&cyclic_group(2), &interval()).expect("sum"),
            _ => disjoint_union(&idempotent_monoid(), &terminal()).expect("sum"),
        },
    }
}

/// Every category (up to relabelling, with repetitions) whose hom-sets have
/// at most `max_hom` elements, with at most `max_objects` objects and
/// `max_morphisms` morphisms in total.
pub fn exhaustive_family(max_objects: usize, max_morphisms: usize, max_hom: usize) -> Vec<FinCat> {
    let mut out = Vec::new();
    for n in 1..=max_objects {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let mut sizes = vec![0usize; pairs.len()];
        hom_sizes(n, &pairs, 0, &mut sizes, max_morphisms, max_hom, &mut out);
    }
    out
}

fn hom_sizes(
    n: usize,
    pairs: &[(usize, usize)],
    k: usize,
    sizes: &mut Vec<usize>,
    max_morphisms: usize,
    max_hom: usize,
    out: &mut Vec<FinCat>,
) {
    let used: usize = sizes[..k].iter().sum();
    if k == pairs.len() {
        tables(n, pairs, sizes, out);
        return;
    }
    let (i, j) = pairs[k];
    let lo = usize::from(i == j);
    for s in lo..=max_hom {
        // reserve one identity for each diagonal pair still to come
        let pending = pairs[k + 1..].iter().filter(|(a, b)| a == b).count();
        if used + s + pending > max_morphisms {
            break;
        }
        sizes[k] = s;
        hom_sizes(n, pairs, k + 1, sizes, max_morphisms, max_hom, out);
    }
    sizes[k] = 0;
}

/// All associative, unital composition tables for the given hom sizes.
fn tables(n: usize, pairs: &[(usize, usize)], sizes: &[usize], out: &mut Vec<FinCat>) {
    let mut mors = Vec::new();
    let mut identities = vec![Mor(0); n];
    let mut hom: HashMap<(usize, usize), Vec<Mor>> = HashMap::new();
    for (&(i, j), &s) in pairs.iter().zip(sizes) {
        for t in 0..s {
            let m = Mor(mors.len() as u32);
            let name = if i == j && t == 0 {
                identities[i] = m;
                format!("id{i}")
            } else {
                format!("f{i}{j}_{t}")
            };
            mors.push(MorphismData {
                name,
                src: Obj(i as u32),
                tgt: Obj(j as u32),
            });
            hom.entry((i, j)).or_default().push(m);
        }
    }
    let is_id = |m: Mor| identities.contains(&m);
    // composable pairs of non-identities, (g, f) with tgt f = src g
    let mut slots: Vec<(Mor, Mor)> = Vec::new();
    for (fi, f) in mors.iter().enumerate() {
        for (gi, g) in mors.iter().enumerate() {
            let (fm, gm) = (Mor(fi as u32), Mor(gi as u32));
            if g.src == f.tgt && !is_id(fm) && !is_id(gm) {
                slots.push((gm, fm));
            }
        }
    }
    let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
    for (mi, m) in mors.iter().enumerate() {
        let m_id = Mor(mi as u32);
        table.insert((identities[m.tgt.idx()], m_id), m_id);
        table.insert((m_id, identities[m.src.idx()]), m_id);
    }
    let mors_ref = &mors;
    let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    fill(0, &slots, &mut table, &hom, mors_ref, &mut |table| {
        let triples: Vec<(Mor, Mor, Mor)> = table.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        let mut triples = triples;
        triples.sort();
        if let Ok(c) = FinCat::from_parts(names.clone(), mors_ref.clone(), identities.clone(), triples) {
            out.push(c);
        }
    });
}

fn fill(
    k: usize,
    slots: &[(Mor, Mor)],
    table: &mut HashMap<(Mor, Mor), Mor>,
    hom: &HashMap<(usize, usize), Vec<Mor>>,
    mors: &[MorphismData],
    emit: &mut dyn FnMut(&HashMap<(Mor, Mor), Mor>),
) {
    if k == slots.len() {
        emit(table);
        return;
    }
    let (g, f) = slots[k];
    let key = (mors[f.idx()].src.idx(), mors[g.idx()].tgt.idx());
    let options = hom.get(&key).cloned().unwrap_or_default();
    for gf in options {
        table.insert((g, f), gf);
        if associative_so_far(table, mors, g, f) {
            fill(k + 1, slots, table, hom, mors, emit);
        }
    }
    table.remove(&(g, f));
}

/// Checks `(h∘g)∘f = h∘(g∘f)` for every triple whose composites are all
/// known so far.
fn associative_so_far(
    table: &HashMap<(Mor, Mor), Mor>,
    mors: &[MorphismData],
    _g: Mor,
    _f: Mor,
) -> bool {
    let n = mors.len() as u32;
    for f in (0..n).map(Mor) {
        for g in (0..n).map(Mor) {
            let Some(&gf) = table.get(&(g, f)) else { continue };
            for h in (0..n).map(Mor) {
                let Some(&hg) = table.get(&(h, g)) else { continue };
                if let (Some(a), Some(b)) = (table.get(&(hg, f)), table.get(&(h, gf))) {
                    if a != b {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests;
