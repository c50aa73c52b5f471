//! Derived categories built from a category `Y` or a functor `f: X → Y`:
//! the path category `TY`, its dual `T°Y`, the twisted arrow category `♮Y`,
//! the comma category `Y₀↓f`, the span category `S(f)`, the Čech category of
//! a cover, and the codiscrete fattening used for Morita examples.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::cat::{
    codisc, codisc_map, disc, full_subcategory, opposite, strict_pullback_keyed,
    to_given_codisc, tuple_name, Assembler, CatFunctor, FinCat, Mor, NatTrans, Obj, Pullback,
};
use crate::error::{Error, Result};

/// Which side the section sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `s ⊣ p`; `eta: s∘p ⇒ id_E` (the counit).
    Left,
    /// `p ⊣ s`; `eta: id_E ⇒ s∘p` (the unit).
    Right,
}

/// A projection `p: E → B` together with a section `s` and the
/// transformation relating `s∘p` to the identity of `E`.
#[derive(Clone, Debug)]
pub struct AdjointSectionWitness {
    pub projection: CatFunctor,
    pub section: CatFunctor,
    pub direction: Direction,
    pub eta: NatTrans,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub section_is_right_inverse: bool,
    pub eta_valid: bool,
    pub eta_oriented: bool,
    pub whiskered_identity: bool,
}

impl WitnessReport {
    pub fn pass(&self) -> bool {
        self.section_is_right_inverse
            && self.eta_valid
            && self.eta_oriented
            && self.whiskered_identity
    }
}

impl AdjointSectionWitness {
    /// `s ∘ p`.
    pub fn retraction(&self) -> Result<CatFunctor> {
        self.section.after(&self.projection)
    }

    pub fn validate(&self) -> WitnessReport {
        let ps = self.projection.after(&self.section);
        let section_is_right_inverse = matches!(&ps, Ok(f) if f.is_identity());
        let eta_valid = self.eta.validate().pass();
        let eta_oriented = match self.retraction() {
            Ok(sp) => {
                let id = CatFunctor::identity(self.projection.dom().clone());
                match self.direction {
                    Direction::Left => *self.eta.source() == sp && *self.eta.target() == id,
                    Direction::Right => *self.eta.source() == id && *self.eta.target() == sp,
                }
            }
            Err(_) => false,
        };
        let whiskered_identity = matches!(
            self.eta.whisker_left(&self.projection),
            Ok(w) if w.is_identity()
        );
        WitnessReport {
            section_is_right_inverse,
            eta_valid,
            eta_oriented,
            whiskered_identity,
        }
    }
}

/// `TY` and its structure functors.
#[derive(Clone, Debug)]
pub struct TCategory {
    pub cat: Arc<FinCat>,
    pub base: Arc<FinCat>,
    pub disc: Arc<FinCat>,
    /// `g ↦ src g`, into `disc(Y₀)`.
    pub dom_t: CatFunctor,
    /// `g ↦ tgt g`, a triangle to its vertical leg.
    pub cod_t: CatFunctor,
    /// `a ↦ id_a`, a left adjoint section of `dom_t`.
    pub sigma: AdjointSectionWitness,
}

/// Objects of `TY` are the morphisms of `Y` (same index and name); a morphism
/// `g → h∘g` is named `(g=..,h=..)`.
pub fn t_category(y: &Arc<FinCat>) -> Result<TCategory> {
    let mut asm = Assembler::<Mor, (Mor, Mor)>::new();
    for g in y.morphisms() {
        asm.object(g, y.morphism_name(g).to_string());
    }
    let mut keys = Vec::new();
    for g in y.morphisms() {
        for &h in y.outgoing(y.tgt(g)) {
            let hg = y.compose(h, g);
            asm.morphism(
                (g, h),
                tuple_name(&[("g", y.morphism_name(g)), ("h", y.morphism_name(h))]),
                Obj(g.0),
                Obj(hg.0),
            );
            keys.push((g, h));
        }
    }
    let index: HashMap<(Mor, Mor), Mor> = keys
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, Mor(i as u32)))
        .collect();
    let cat = Arc::new(asm.finish(
        |&g| (g, y.ident(y.tgt(g))),
        |&(_, h2), &(g, h)| (g, y.compose(h2, h)),
    )?);
    let disc_y = Arc::new(disc(y.object_names())?);

    let dom_t = CatFunctor::new(
        cat.clone(),
        disc_y.clone(),
        y.morphisms().map(|g| y.src(g)).collect(),
        keys.iter().map(|&(g, _)| Mor(y.src(g).0)).collect(),
    )?;
    let cod_t = CatFunctor::new(
        cat.clone(),
        y.clone(),
        y.morphisms().map(|g| y.tgt(g)).collect(),
        keys.iter().map(|&(_, h)| h).collect(),
    )?;
    let section = CatFunctor::from_fn(
        disc_y.clone(),
        cat.clone(),
        |a| Obj(y.ident(a).0),
        |e| cat.ident(Obj(y.ident(Obj(e.0)).0)),
    )?;
    let sp = section.after(&dom_t)?;
    let components = y
        .morphisms()
        .map(|g| index[&(y.ident(y.src(g)), g)])
        .collect();
    let eta = NatTrans::new(sp, CatFunctor::identity(cat.clone()), components)?;
    Ok(TCategory {
        cat,
        base: y.clone(),
        disc: disc_y,
        dom_t: dom_t.clone(),
        cod_t,
        sigma: AdjointSectionWitness {
            projection: dom_t,
            section,
            direction: Direction::Left,
            eta,
        },
    })
}

/// `♮Y` with its two legs and the inclusion of `TY`.
#[derive(Clone, Debug)]
pub struct TwistedArrow {
    pub cat: Arc<FinCat>,
    pub base: Arc<FinCat>,
    pub base_op: Arc<FinCat>,
    /// `g ↦ tgt g`, `(h, k) ↦ h`.
    pub cod_nat: CatFunctor,
    /// `g ↦ src g`, `(h, k) ↦ k`, into `Y^op`.
    pub dom_nat: CatFunctor,
    pub t: TCategory,
    /// `TY ↪ ♮Y`, a triangle `h` to the square `(h, id)`.
    pub incl_t: CatFunctor,
}

/// Objects are the morphisms of `Y`; a morphism `g → h∘g∘k` is named
/// `(g=..,h=..,k=..)`. Composition pastes squares.
pub fn twisted_arrow(y: &Arc<FinCat>) -> Result<TwistedArrow> {
    let mut asm = Assembler::<Mor, (Mor, Mor, Mor)>::new();
    for g in y.morphisms() {
        asm.object(g, y.morphism_name(g).to_string());
    }
    let mut keys = Vec::new();
    for g in y.morphisms() {
        for &k in y.incoming(y.src(g)) {
            let gk = y.compose(g, k);
            for &h in y.outgoing(y.tgt(g)) {
                let hgk = y.compose(h, gk);
                asm.morphism(
                    (g, h, k),
                    tuple_name(&[
                        ("g", y.morphism_name(g)),
                        ("h", y.morphism_name(h)),
                        ("k", y.morphism_name(k)),
                    ]),
                    Obj(g.0),
                    Obj(hgk.0),
                );
                keys.push((g, h, k));
            }
        }
    }
    let index: HashMap<(Mor, Mor, Mor), Mor> = keys
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, Mor(i as u32)))
        .collect();
    let cat = Arc::new(asm.finish(
        |&g| (g, y.ident(y.tgt(g)), y.ident(y.src(g))),
        |&(_, h2, k2), &(g, h, k)| (g, y.compose(h2, h), y.compose(k, k2)),
    )?);
    let base_op = Arc::new(opposite(y)?);
    let cod_nat = CatFunctor::new(
        cat.clone(),
        y.clone(),
        y.morphisms().map(|g| y.tgt(g)).collect(),
        keys.iter().map(|&(_, h, _)| h).collect(),
    )?;
    let dom_nat = CatFunctor::new(
        cat.clone(),
        base_op.clone(),
        y.morphisms().map(|g| y.src(g)).collect(),
        keys.iter().map(|&(_, _, k)| k).collect(),
    )?;
    let t = t_category(y)?;
    let mut incl_mors = Vec::with_capacity(t.cat.morphism_count());
    for g in y.morphisms() {
        for &h in y.outgoing(y.tgt(g)) {
            incl_mors.push(index[&(g, h, y.ident(y.src(g)))]);
        }
    }
    let incl_t = CatFunctor::new(
        t.cat.clone(),
        cat.clone(),
        t.cat.objects().collect(),
        incl_mors,
    )?;
    Ok(TwistedArrow {
        cat,
        base: y.clone(),
        base_op,
        cod_nat,
        dom_nat,
        t,
        incl_t,
    })
}

/// `T°Y`, built as `T(Y^op)` and embedded in `♮Y`.
#[derive(Clone, Debug)]
pub struct TOpCategory {
    pub cat: Arc<FinCat>,
    /// `g ↦ tgt g` (in `Y`), into `disc(Y₀)`.
    pub cod_to: CatFunctor,
    /// `b ↦ id_b`; see [`Direction`] for the orientation of its transformation.
    pub tau: AdjointSectionWitness,
    /// `T°Y ↪ ♮Y`, a triangle `k` to the square `(id, k)`.
    pub incl: CatFunctor,
    pub twisted: TwistedArrow,
}

pub fn t_op_category(y: &Arc<FinCat>) -> Result<TOpCategory> {
    let y_op = Arc::new(opposite(y)?);
    let t = t_category(&y_op)?;
    let twisted = twisted_arrow(y)?;
    let index: HashMap<(Mor, Mor, Mor), Mor> = twisted
        .cat
        .morphisms()
        .map(|m| {
            let g = Mor(twisted.cat.src(m).0);
            (
                (g, twisted.cod_nat.mor(m), twisted.dom_nat.mor(m)),
                m,
            )
        })
        .collect();
    // T(Y^op) morphisms are enumerated as (g, k) with k leaving src_op g = tgt g
    // in Y^op, i.e. k entering src g in Y.
    let mut mors = Vec::with_capacity(t.cat.morphism_count());
    for g in y_op.morphisms() {
        for &k in y_op.outgoing(y_op.tgt(g)) {
            let key = (g, y.ident(y.tgt(g)), k);
            mors.push(*index.get(&key).ok_or_else(|| {
                Error::Construction("T(Y^op) morphism has no square in ♮Y".into())
            })?);
        }
    }
    let incl = CatFunctor::new(
        t.cat.clone(),
        twisted.cat.clone(),
        t.cat.objects().collect(),
        mors,
    )?;
    if !incl.validate().pass() || !incl.is_injective_on_morphisms() {
        return Err(Error::Construction(
            "T(Y^op) does not embed in ♮Y as a wide subcategory".into(),
        ));
    }
    Ok(TOpCategory {
        cat: t.cat.clone(),
        cod_to: t.dom_t.clone(),
        tau: t.sigma.clone(),
        incl,
        twisted,
    })
}

/// `Y₀↓f` as the pullback of `cod_T` against `f`.
#[derive(Clone, Debug)]
pub struct CommaSlice {
    pub cat: Arc<FinCat>,
    /// `(η, b) ↦ src η`, into `disc(Y₀)`.
    pub rho: CatFunctor,
    /// `(η, b) ↦ b`.
    pub proj_x: CatFunctor,
    /// `(η, b) ↦ η`.
    pub proj_t: CatFunctor,
    pub t: TCategory,
    pub functor: CatFunctor,
}

/// Elements are named `(eta=..,b=..)`.
pub fn comma_slice(f: &CatFunctor) -> Result<CommaSlice> {
    let t = t_category(f.cod())?;
    let pb = strict_pullback_keyed(&t.cod_t, f, ("eta", "b"))?;
    let rho = t.dom_t.after(&pb.left)?;
    Ok(CommaSlice {
        cat: pb.apex.clone(),
        rho,
        proj_x: pb.right,
        proj_t: pb.left,
        t,
        functor: f.clone(),
    })
}

impl CommaSlice {
    /// The fiber `y↓f` of `rho` over `y`, as a full subcategory.
    pub fn fiber(&self, y: Obj) -> Result<(Arc<FinCat>, CatFunctor)> {
        let base = self.functor.cod();
        if y.idx() >= base.object_count() {
            return Err(Error::UnknownId(format!("object #{}", y.0)));
        }
        let keep: Vec<Obj> = self.cat.objects().filter(|&o| self.rho.obj(o) == y).collect();
        full_subcategory(&self.cat, &keep)
    }
}

/// `y↓f`: objects `(η: y → f b, b)`.
pub fn comma_fiber(y: Obj, f: &CatFunctor) -> Result<Arc<FinCat>> {
    Ok(comma_slice(f)?.fiber(y)?.0)
}

/// The span `X ← S(f) → Y^op` over `Y ← ♮Y → Y^op`.
#[derive(Clone, Debug)]
pub struct SpanDiagram {
    pub f: CatFunctor,
    pub s: Arc<FinCat>,
    pub twisted: TwistedArrow,
    pub q_f: CatFunctor,
    pub f_hat: CatFunctor,
    pub p_f: CatFunctor,
}

impl SpanDiagram {
    pub fn cod_nat(&self) -> &CatFunctor {
        &self.twisted.cod_nat
    }

    pub fn dom_nat(&self) -> &CatFunctor {
        &self.twisted.dom_nat
    }

    /// Both squares, checked on tables.
    pub fn squares_commute(&self) -> Result<bool> {
        let left = self.f.after(&self.q_f)? == self.twisted.cod_nat.after(&self.f_hat)?;
        let right = self.p_f == self.twisted.dom_nat.after(&self.f_hat)?;
        Ok(left && right)
    }
}

/// `S(f)` as the pullback of `cod^♮` against `f`; elements are named
/// `(sq=..,x=..)`.
pub fn s_category(f: &CatFunctor) -> Result<SpanDiagram> {
    let twisted = twisted_arrow(f.cod())?;
    let pb = strict_pullback_keyed(&twisted.cod_nat, f, ("sq", "x"))?;
    let p_f = twisted.dom_nat.after(&pb.left)?;
    let span = SpanDiagram {
        f: f.clone(),
        s: pb.apex.clone(),
        twisted,
        q_f: pb.right,
        f_hat: pb.left,
        p_f,
    };
    if !span.squares_commute()? {
        return Err(Error::Construction("span diagram does not commute".into()));
    }
    Ok(span)
}

/// A finite family of subsets of a finite base set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverData {
    pub base: Vec<String>,
    pub pieces: Vec<(String, Vec<String>)>,
}

impl CoverData {
    pub fn new(base: Vec<String>, pieces: Vec<(String, Vec<String>)>) -> Self {
        CoverData { base, pieces }
    }

    /// Checks that every piece lies in the base and that the pieces cover it.
    pub fn check(&self) -> Result<()> {
        let base: BTreeSet<&str> = self.base.iter().map(String::as_str).collect();
        if base.len() != self.base.len() {
            return Err(Error::DuplicateId("repeated base point".into()));
        }
        let mut names = BTreeSet::new();
        let mut covered = BTreeSet::new();
        for (name, piece) in &self.pieces {
            if !names.insert(name.as_str()) {
                return Err(Error::DuplicateId(name.clone()));
            }
            for m in piece {
                if !base.contains(m.as_str()) {
                    return Err(Error::PieceOutsideBase {
                        piece: name.clone(),
                        point: m.clone(),
                    });
                }
                covered.insert(m.as_str());
            }
        }
        let missed: Vec<String> = self
            .base
            .iter()
            .filter(|m| !covered.contains(m.as_str()))
            .cloned()
            .collect();
        if missed.is_empty() {
            Ok(())
        } else {
            Err(Error::NotACover(missed))
        }
    }

    fn contains(&self, piece: usize, m: &str) -> bool {
        self.pieces[piece].1.iter().any(|x| x == m)
    }
}

/// `U^[2]` with its projection to the base.
#[derive(Clone, Debug)]
pub struct CechCategory {
    pub cat: Arc<FinCat>,
    pub base: Arc<FinCat>,
    /// `(i, m) ↦ m`, into `disc(M)`.
    pub pi: CatFunctor,
}

/// Objects `(i=..,m=..)` for `m ∈ U_i`, piece-major; one morphism
/// `(i=..,j=..,m=..)` from `(i, m)` to `(j, m)` whenever `m ∈ U_i ∩ U_j`.
pub fn cech_category(cover: &CoverData) -> Result<CechCategory> {
    cover.check()?;
    let mut asm = Assembler::<(usize, usize), (usize, usize, usize)>::new();
    let mut over = Vec::new();
    for (i, (name, _)) in cover.pieces.iter().enumerate() {
        for (mi, m) in cover.base.iter().enumerate() {
            if cover.contains(i, m) {
                asm.object((i, mi), tuple_name(&[("i", name), ("m", m)]));
                over.push(Obj(mi as u32));
            }
        }
    }
    let objects: Vec<(usize, usize)> = asm.object_keys().to_vec();
    let mut mor_base = Vec::new();
    for &(i, mi) in &objects {
        for j in 0..cover.pieces.len() {
            if let Some(tgt) = asm.obj(&(j, mi)) {
                let src = asm.obj(&(i, mi)).expect("registered object");
                asm.morphism(
                    (i, j, mi),
                    tuple_name(&[
                        ("i", &cover.pieces[i].0),
                        ("j", &cover.pieces[j].0),
                        ("m", &cover.base[mi]),
                    ]),
                    src,
                    tgt,
                );
                mor_base.push(Mor(mi as u32));
            }
        }
    }
    let cat = Arc::new(asm.finish(|&(i, m)| (i, i, m), |&(_, k, m), &(i, _, _)| (i, k, m))?);
    let base = Arc::new(disc(&cover.base)?);
    let pi = CatFunctor::new(cat.clone(), base.clone(), over, mor_base)?;
    Ok(CechCategory { cat, base, pi })
}

impl CechCategory {
    /// The fiber of `pi` over `m`.
    pub fn fiber(&self, m: Obj) -> Result<(Arc<FinCat>, CatFunctor)> {
        let keep: Vec<Obj> = self.cat.objects().filter(|&o| self.pi.obj(o) == m).collect();
        full_subcategory(&self.cat, &keep)
    }
}

/// `X = codisc(S) ×_{codisc(Y₀)} Y` and its projection `f: X → Y`.
#[derive(Clone, Debug)]
pub struct Fattening {
    pub x: Arc<FinCat>,
    pub f: CatFunctor,
    pub pullback: Pullback,
}

/// Fattens `Y` along a surjection `p: S → Y₀`, given as `(name, p(name))`
/// pairs. Objects of `X` are named `(s=..,y=..)`.
pub fn fatten(y: &Arc<FinCat>, p: &[(String, Obj)]) -> Result<Fattening> {
    let mut hit = vec![false; y.object_count()];
    for (_, o) in p {
        if o.idx() >= y.object_count() {
            return Err(Error::IndexOutOfRange {
                what: "objects",
                index: o.idx(),
                len: y.object_count(),
            });
        }
        hit[o.idx()] = true;
    }
    let missed: Vec<String> = y
        .objects()
        .filter(|o| !hit[o.idx()])
        .map(|o| y.object_name(o).to_string())
        .collect();
    if !missed.is_empty() {
        return Err(Error::NotSurjective(missed));
    }
    let names: Vec<&str> = p.iter().map(|(n, _)| n.as_str()).collect();
    let cs = Arc::new(codisc(&names)?);
    let cy = Arc::new(codisc(y.object_names())?);
    let objs: Vec<Obj> = p.iter().map(|&(_, o)| o).collect();
    let cp = codisc_map(&cs, &cy, &objs)?;
    let can = to_given_codisc(y, cy)?;
    let pullback = strict_pullback_keyed(&cp, &can, ("s", "y"))?;
    Ok(Fattening {
        x: pullback.apex.clone(),
        f: pullback.right.clone(),
        pullback,
    })
}

/// Outcome of comparing a category with a codiscrete pullback decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub comparison_valid: bool,
    pub objects_bijective: bool,
    pub morphisms_bijective: bool,
}

impl DecompositionCheck {
    pub fn pass(&self) -> bool {
        self.comparison_valid && self.objects_bijective && self.morphisms_bijective
    }

    fn of(u: &CatFunctor) -> Self {
        let objects_bijective = u.dom().object_count() == u.cod().object_count() && {
            let mut seen = vec![false; u.cod().object_count()];
            u.obj_map()
                .iter()
                .all(|o| !std::mem::replace(&mut seen[o.idx()], true))
        };
        DecompositionCheck {
            comparison_valid: u.validate().pass(),
            objects_bijective,
            morphisms_bijective: u.dom().morphism_count() == u.cod().morphism_count()
                && u.is_injective_on_morphisms(),
        }
    }
}

struct CodiscFrame {
    cx: Arc<FinCat>,
    cmap: CatFunctor,
    cy: Arc<FinCat>,
}

fn codisc_frame(f: &CatFunctor) -> Result<CodiscFrame> {
    let cx = Arc::new(codisc(f.dom().object_names())?);
    let cy = Arc::new(codisc(f.cod().object_names())?);
    let cmap = codisc_map(&cx, &cy, f.obj_map())?;
    Ok(CodiscFrame { cx, cmap, cy })
}

/// Compares `X` with `codisc(X₀) ×_{codisc(Y₀)} Y` through the canonical
/// functor; passes exactly when that functor is an isomorphism.
pub fn codisc_decomposition_check(f: &CatFunctor) -> Result<DecompositionCheck> {
    let frame = codisc_frame(f)?;
    let can_y = to_given_codisc(f.cod(), frame.cy.clone())?;
    let pb = strict_pullback_keyed(&frame.cmap, &can_y, ("s", "y"))?;
    let p = to_given_codisc(f.dom(), frame.cx.clone())?;
    let u = pb.mediate(&p, f)?;
    Ok(DecompositionCheck::of(&u))
}

/// Compares `Y₀↓f` with `codisc(X₀) ×_{codisc(Y₀)} TY` through the canonical
/// functor.
pub fn slice_decomposition_check(f: &CatFunctor) -> Result<DecompositionCheck> {
    let frame = codisc_frame(f)?;
    let slice = comma_slice(f)?;
    let can_y = to_given_codisc(f.cod(), frame.cy.clone())?;
    let ty_to_cy = can_y.after(&slice.t.cod_t)?;
    let pb = strict_pullback_keyed(&frame.cmap, &ty_to_cy, ("s", "eta"))?;
    let p = to_given_codisc(f.dom(), frame.cx.clone())?.after(&slice.proj_x)?;
    let u = pb.mediate(&p, &slice.proj_t)?;
    Ok(DecompositionCheck::of(&u))
}
