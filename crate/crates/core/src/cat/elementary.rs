//! Elementary constructors: discrete and codiscrete categories, opposites,
//! products, arrow categories, strict pullbacks and invertible parts.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{tuple_name, Assembler, FinCat, Mor, MorphismData, Obj};
use super::functor::{same_cat, CatFunctor};
use crate::error::{Error, Result};

fn identity_name(o: &str) -> String {
    format!("id_{o}")
}

/// The discrete category on `objects`: identities only.
pub fn disc<S: AsRef<str>>(objects: &[S]) -> Result<FinCat> {
    let names: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
    let morphisms = names
        .iter()
        .enumerate()
        .map(|(i, n)| MorphismData {
            name: identity_name(n),
            src: Obj(i as u32),
            tgt: Obj(i as u32),
        })
        .collect();
    let identities: Vec<Mor> = (0..names.len() as u32).map(Mor).collect();
    let triples: Vec<_> = identities.iter().map(|&e| (e, e, e)).collect();
    FinCat::from_parts(names, morphisms, identities, triples)
}

/// The codiscrete category on `objects`: exactly one morphism per ordered pair.
pub fn codisc<S: AsRef<str>>(objects: &[S]) -> Result<FinCat> {
    let names: Vec<&str> = objects.iter().map(|s| s.as_ref()).collect();
    let mut asm = Assembler::<usize, (usize, usize)>::new();
    for (i, n) in names.iter().enumerate() {
        asm.object(i, n.to_string());
    }
    for a in 0..names.len() {
        for b in 0..names.len() {
            let name = if a == b {
                identity_name(names[a])
            } else {
                format!("{}->{}", names[a], names[b])
            };
            asm.morphism((a, b), name, Obj(a as u32), Obj(b as u32));
        }
    }
    asm.finish(|&a| (a, a), |&(_, c), &(a, _)| (a, c))
}

/// One object `*` with its identity.
pub fn terminal() -> FinCat {
    codisc(&["*"]).expect("terminal category")
}

/// Same elements, endpoints swapped, composition reversed.
pub fn opposite(c: &FinCat) -> Result<FinCat> {
    let morphisms = c
        .morphism_data()
        .iter()
        .map(|m| MorphismData {
            name: m.name.clone(),
            src: m.tgt,
            tgt: m.src,
        })
        .collect();
    let identities = c.objects().map(|o| c.ident(o)).collect();
    let triples = c
        .composition_triples()
        .into_iter()
        .map(|(g, f, gf)| (f, g, gf));
    FinCat::from_parts(c.object_names().to_vec(), morphisms, identities, triples)
}

/// Product category with componentwise composition; elements are named
/// `(l=..,r=..)`.
pub fn product(c: &FinCat, d: &FinCat) -> Result<FinCat> {
    let mut asm = Assembler::<(Obj, Obj), (Mor, Mor)>::new();
    let mut ids = HashMap::new();
    for a in c.objects() {
        for b in d.objects() {
            let o = asm.object(
                (a, b),
                tuple_name(&[("l", c.object_name(a)), ("r", d.object_name(b))]),
            );
            ids.insert((a, b), o);
        }
    }
    for m in c.morphisms() {
        for n in d.morphisms() {
            asm.morphism(
                (m, n),
                tuple_name(&[("l", c.morphism_name(m)), ("r", d.morphism_name(n))]),
                ids[&(c.src(m), d.src(n))],
                ids[&(c.tgt(m), d.tgt(n))],
            );
        }
    }
    asm.finish(
        |&(a, b)| (c.ident(a), d.ident(b)),
        |&(g1, g2), &(f1, f2)| (c.compose(g1, f1), d.compose(g2, f2)),
    )
}

/// Disjoint union; elements are named `(l=..)` and `(r=..)`.
pub fn disjoint_union(c: &FinCat, d: &FinCat) -> Result<FinCat> {
    let mut asm = Assembler::<(bool, Obj), (bool, Mor)>::new();
    for (side, cat) in [(false, c), (true, d)] {
        let tag = if side { "r" } else { "l" };
        let base = asm.object_keys().len() as u32;
        for o in cat.objects() {
            asm.object((side, o), tuple_name(&[(tag, cat.object_name(o))]));
        }
        for m in cat.morphisms() {
            asm.morphism(
                (side, m),
                tuple_name(&[(tag, cat.morphism_name(m))]),
                Obj(base + cat.src(m).0),
                Obj(base + cat.tgt(m).0),
            );
        }
    }
    asm.finish(
        |&(side, o)| (side, if side { d.ident(o) } else { c.ident(o) }),
        |&(side, g), &(_, f)| (side, if side { d.compose(g, f) } else { c.compose(g, f) }),
    )
}

/// The arrow category `C^2` with its two leg functors.
pub struct ArrowCategory {
    pub cat: Arc<FinCat>,
    /// Sends `g` to `src g` and a square to its left leg.
    pub dom: CatFunctor,
    /// Sends `g` to `tgt g` and a square to its right leg.
    pub cod: CatFunctor,
}

/// Objects are the morphisms of `c`; a morphism `g → g'` is a commuting
/// square `(k, h)` with `g' ∘ k = h ∘ g`.
pub fn arrow_category(c: &Arc<FinCat>) -> Result<ArrowCategory> {
    // key: (from, to, k, h)
    let mut asm = Assembler::<Mor, (Mor, Mor, Mor, Mor)>::new();
    for g in c.morphisms() {
        asm.object(g, c.morphism_name(g).to_string());
    }
    let mut legs = Vec::new();
    for g in c.morphisms() {
        for &k in c.outgoing(c.src(g)) {
            for &g2 in c.outgoing(c.tgt(k)) {
                for h in c.hom(c.tgt(g), c.tgt(g2)) {
                    if c.compose(g2, k) == c.compose(h, g) {
                        asm.morphism(
                            (g, g2, k, h),
                            tuple_name(&[
                                ("from", c.morphism_name(g)),
                                ("to", c.morphism_name(g2)),
                                ("k", c.morphism_name(k)),
                                ("h", c.morphism_name(h)),
                            ]),
                            Obj(g.0),
                            Obj(g2.0),
                        );
                        legs.push((k, h));
                    }
                }
            }
        }
    }
    let cat = Arc::new(asm.finish(
        |&g| (g, g, c.ident(c.src(g)), c.ident(c.tgt(g))),
        |&(_, g3, k2, h2), &(g1, _, k1, h1)| (g1, g3, c.compose(k2, k1), c.compose(h2, h1)),
    )?);
    let dom = CatFunctor::new(
        cat.clone(),
        c.clone(),
        cat.objects().map(|o| c.src(Mor(o.0))).collect(),
        legs.iter().map(|&(k, _)| k).collect(),
    )?;
    let cod = CatFunctor::new(
        cat.clone(),
        c.clone(),
        cat.objects().map(|o| c.tgt(Mor(o.0))).collect(),
        legs.iter().map(|&(_, h)| h).collect(),
    )?;
    Ok(ArrowCategory { cat, dom, cod })
}

/// A strict pullback `A ×_E B` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: Arc<FinCat>,
    pub left: CatFunctor,
    pub right: CatFunctor,
    pub(crate) f: CatFunctor,
    pub(crate) g: CatFunctor,
}

/// Pullback of `f: A → E` and `g: B → E` with elements named `(l=a,r=b)`.
pub fn strict_pullback(f: &CatFunctor, g: &CatFunctor) -> Result<Pullback> {
    strict_pullback_keyed(f, g, ("l", "r"))
}

/// As [`strict_pullback`], with custom component labels in element names.
/// Objects and morphisms are enumerated left-major.
pub fn strict_pullback_keyed(
    f: &CatFunctor,
    g: &CatFunctor,
    keys: (&str, &str),
) -> Result<Pullback> {
    if !same_cat(f.cod(), g.cod()) {
        return Err(Error::FunctorMismatch(
            "pullback legs must share a codomain".into(),
        ));
    }
    let (a, b) = (f.dom(), g.dom());
    let mut b_over_obj: HashMap<Obj, Vec<Obj>> = HashMap::new();
    for o in b.objects() {
        b_over_obj.entry(g.obj(o)).or_default().push(o);
    }
    let mut b_over_mor: HashMap<Mor, Vec<Mor>> = HashMap::new();
    for m in b.morphisms() {
        b_over_mor.entry(g.mor(m)).or_default().push(m);
    }
    let mut asm = Assembler::<(Obj, Obj), (Mor, Mor)>::new();
    let mut obj_pairs = Vec::new();
    for x in a.objects() {
        for &y in b_over_obj.get(&f.obj(x)).map(Vec::as_slice).unwrap_or(&[]) {
            asm.object(
                (x, y),
                tuple_name(&[(keys.0, a.object_name(x)), (keys.1, b.object_name(y))]),
            );
            obj_pairs.push((x, y));
        }
    }
    let mut mor_pairs = Vec::new();
    for m in a.morphisms() {
        for &n in b_over_mor.get(&f.mor(m)).map(Vec::as_slice).unwrap_or(&[]) {
            let src = asm.obj(&(a.src(m), b.src(n)));
            let tgt = asm.obj(&(a.tgt(m), b.tgt(n)));
            let (Some(src), Some(tgt)) = (src, tgt) else {
                return Err(Error::Construction(
                    "pullback legs are not functors".into(),
                ));
            };
            asm.morphism(
                (m, n),
                tuple_name(&[(keys.0, a.morphism_name(m)), (keys.1, b.morphism_name(n))]),
                src,
                tgt,
            );
            mor_pairs.push((m, n));
        }
    }
    let apex = Arc::new(asm.finish(
        |&(x, y)| (a.ident(x), b.ident(y)),
        |&(g1, g2), &(f1, f2)| (a.compose(g1, f1), b.compose(g2, f2)),
    )?);
    let left = CatFunctor::new(
        apex.clone(),
        a.clone(),
        obj_pairs.iter().map(|p| p.0).collect(),
        mor_pairs.iter().map(|p| p.0).collect(),
    )?;
    let right = CatFunctor::new(
        apex.clone(),
        b.clone(),
        obj_pairs.iter().map(|p| p.1).collect(),
        mor_pairs.iter().map(|p| p.1).collect(),
    )?;
    Ok(Pullback {
        apex,
        left,
        right,
        f: f.clone(),
        g: g.clone(),
    })
}

impl Pullback {
    /// True when `f ∘ left = g ∘ right` on objects and morphisms.
    pub fn square_commutes(&self) -> bool {
        let l = self.f.after(&self.left);
        let r = self.g.after(&self.right);
        matches!((l, r), (Ok(l), Ok(r)) if l == r)
    }

    /// The mediating functor for a test cone `p: T → A`, `q: T → B`.
    ///
    /// Fails if the cone does not commute; otherwise returns the unique functor
    /// `u` with `left ∘ u = p` and `right ∘ u = q`, after checking both.
    pub fn mediate(&self, p: &CatFunctor, q: &CatFunctor) -> Result<CatFunctor> {
        if !same_cat(p.dom(), q.dom())
            || !same_cat(p.cod(), self.left.cod())
            || !same_cat(q.cod(), self.right.cod())
        {
            return Err(Error::FunctorMismatch("cone has the wrong shape".into()));
        }
        if self.f.after(p)? != self.g.after(q)? {
            return Err(Error::FunctorMismatch("cone does not commute".into()));
        }
        let objs: HashMap<(Obj, Obj), Obj> = self
            .apex
            .objects()
            .map(|o| ((self.left.obj(o), self.right.obj(o)), o))
            .collect();
        let mors: HashMap<(Mor, Mor), Mor> = self
            .apex
            .morphisms()
            .map(|m| ((self.left.mor(m), self.right.mor(m)), m))
            .collect();
        let t = p.dom();
        let mut obj_map = Vec::with_capacity(t.object_count());
        for o in t.objects() {
            obj_map.push(*objs.get(&(p.obj(o), q.obj(o))).ok_or_else(|| {
                Error::Construction("cone object missing from the pullback".into())
            })?);
        }
        let mut mor_map = Vec::with_capacity(t.morphism_count());
        for m in t.morphisms() {
            mor_map.push(*mors.get(&(p.mor(m), q.mor(m))).ok_or_else(|| {
                Error::Construction("cone morphism missing from the pullback".into())
            })?);
        }
        let u = CatFunctor::new(t.clone(), self.apex.clone(), obj_map, mor_map)?;
        if !u.validate().pass() || self.left.after(&u)? != *p || self.right.after(&u)? != *q {
            return Err(Error::Construction("mediating functor is not valid".into()));
        }
        Ok(u)
    }
}

/// The full subcategory on `keep` (in the given order) and its inclusion.
pub fn full_subcategory(c: &Arc<FinCat>, keep: &[Obj]) -> Result<(Arc<FinCat>, CatFunctor)> {
    let mut pos = vec![None; c.object_count()];
    for (i, o) in keep.iter().enumerate() {
        pos[o.idx()] = Some(i as u32);
    }
    let mut asm = Assembler::<Obj, Mor>::new();
    for &o in keep {
        asm.object(o, c.object_name(o).to_string());
    }
    let mut kept = Vec::new();
    for m in c.morphisms() {
        if let (Some(s), Some(t)) = (pos[c.src(m).idx()], pos[c.tgt(m).idx()]) {
            asm.morphism(m, c.morphism_name(m).to_string(), Obj(s), Obj(t));
            kept.push(m);
        }
    }
    let sub = Arc::new(asm.finish(|&o| c.ident(o), |&g, &f| c.compose(g, f))?);
    let incl = CatFunctor::new(sub.clone(), c.clone(), keep.to_vec(), kept)?;
    Ok((sub, incl))
}

/// The wide subcategory of invertible morphisms and its inclusion.
pub fn iso_part(c: &Arc<FinCat>) -> Result<(Arc<FinCat>, CatFunctor)> {
    let invertible: Vec<Mor> = c.morphisms().filter(|&g| inverse(c, g).is_some()).collect();
    let mut asm = Assembler::<Obj, Mor>::new();
    for o in c.objects() {
        asm.object(o, c.object_name(o).to_string());
    }
    for &g in &invertible {
        asm.morphism(g, c.morphism_name(g).to_string(), c.src(g), c.tgt(g));
    }
    let sub = Arc::new(asm.finish(|&o| c.ident(o), |&g, &f| c.compose(g, f))?);
    let incl = CatFunctor::new(sub.clone(), c.clone(), c.objects().collect(), invertible)?;
    Ok((sub, incl))
}

/// Some two-sided inverse of `g`, if one exists.
pub fn inverse(c: &FinCat, g: Mor) -> Option<Mor> {
    let (a, b) = (c.src(g), c.tgt(g));
    c.hom(b, a)
        .find(|&h| c.comp(h, g) == Some(c.ident(a)) && c.comp(g, h) == Some(c.ident(b)))
}

/// The object inclusion `disc(C₀) → C`.
pub fn object_inclusion(c: &Arc<FinCat>) -> Result<CatFunctor> {
    let d = Arc::new(disc(c.object_names())?);
    CatFunctor::from_fn(d, c.clone(), |o| o, |m| c.ident(Obj(m.0)))
}

/// The canonical functor `C → codisc(C₀)`.
pub fn to_codisc(c: &Arc<FinCat>) -> Result<CatFunctor> {
    to_given_codisc(c, Arc::new(codisc(c.object_names())?))
}

/// As [`to_codisc`], reusing an already built `codisc(C₀)`.
pub fn to_given_codisc(c: &Arc<FinCat>, cd: Arc<FinCat>) -> Result<CatFunctor> {
    let n = c.object_count() as u32;
    if cd.object_count() as u32 != n {
        return Err(Error::FunctorMismatch("codiscrete target has the wrong size".into()));
    }
    CatFunctor::from_fn(
        c.clone(),
        cd,
        |o| o,
        |m| Mor(c.src(m).0 * n + c.tgt(m).0),
    )
}

/// `codisc(p): codisc(S) → codisc(T)` for a map of object sets, both given
/// as codiscrete categories built by [`codisc`].
pub fn codisc_map(source: &Arc<FinCat>, target: &Arc<FinCat>, p: &[Obj]) -> Result<CatFunctor> {
    let n = source.object_count() as u32;
    let t = target.object_count() as u32;
    if p.len() != n as usize || source.morphism_count() as u32 != n * n {
        return Err(Error::FunctorMismatch("codisc map has the wrong shape".into()));
    }
    CatFunctor::from_fn(
        source.clone(),
        target.clone(),
        |o| p[o.idx()],
        |m| {
            let (a, b) = (m.0 / n, m.0 % n);
            Mor(p[a as usize].0 * t + p[b as usize].0)
        },
    )
}
