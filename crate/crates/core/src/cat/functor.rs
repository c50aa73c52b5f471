use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::validate::{validate_functor, validate_nat_trans, ValidationReport};
use crate::error::{Error, Result};

/// A functor between finite categories, given by its object and morphism maps.
#[derive(Clone, Debug)]
pub struct CatFunctor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl PartialEq for CatFunctor {
    fn eq(&self, other: &Self) -> bool {
        same_cat(&self.dom, &other.dom)
            && same_cat(&self.cod, &other.cod)
            && self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
    }
}

pub(crate) fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CatFunctor {
    /// Checks only that the maps are total and land in range; functoriality is
    /// checked by [`CatFunctor::validate`].
    pub fn new(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self> {
        if obj_map.len() != dom.object_count() || mor_map.len() != dom.morphism_count() {
            return Err(Error::FunctorMismatch(
                "maps must be total on the domain".into(),
            ));
        }
        if let Some(o) = obj_map.iter().find(|o| o.idx() >= cod.object_count()) {
            return Err(Error::IndexOutOfRange {
                what: "objects",
                index: o.idx(),
                len: cod.object_count(),
            });
        }
        if let Some(m) = mor_map.iter().find(|m| m.idx() >= cod.morphism_count()) {
            return Err(Error::IndexOutOfRange {
                what: "morphisms",
                index: m.idx(),
                len: cod.morphism_count(),
            });
        }
        Ok(CatFunctor {
            dom,
            cod,
            obj_map,
            mor_map,
        })
    }

    pub fn from_fn(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        on_obj: impl Fn(Obj) -> Obj,
        on_mor: impl Fn(Mor) -> Mor,
    ) -> Result<Self> {
        let obj_map = dom.objects().map(&on_obj).collect();
        let mor_map = dom.morphisms().map(&on_mor).collect();
        CatFunctor::new(dom, cod, obj_map, mor_map)
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        CatFunctor {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
            dom: c.clone(),
            cod: c,
        }
    }

    /// The functor sending everything to `o` and its identity.
    pub fn constant(dom: Arc<FinCat>, cod: Arc<FinCat>, o: Obj) -> Result<Self> {
        let e = cod.ident(o);
        CatFunctor::from_fn(dom, cod, |_| o, |_| e)
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.obj_map[o.idx()]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m.idx()]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    pub fn validate(&self) -> ValidationReport {
        validate_functor(self)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CatFunctor) -> Result<CatFunctor> {
        compose_functors(self, first)
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut seen = vec![false; self.cod.morphism_count()];
        self.mor_map
            .iter()
            .all(|m| !std::mem::replace(&mut seen[m.idx()], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.object_count() == self.cod.object_count()
            && self.dom.morphism_count() == self.cod.morphism_count()
            && self.is_injective_on_morphisms()
            && {
                let mut seen = vec![false; self.cod.object_count()];
                self.obj_map
                    .iter()
                    .all(|o| !std::mem::replace(&mut seen[o.idx()], true))
            }
    }

    /// True when this is the identity functor of its domain, as tables.
    pub fn is_identity(&self) -> bool {
        same_cat(&self.dom, &self.cod)
            && self.obj_map.iter().enumerate().all(|(i, o)| o.idx() == i)
            && self.mor_map.iter().enumerate().all(|(i, m)| m.idx() == i)
    }
}

/// `g ∘ f`; faults when the codomain of `f` is not the domain of `g`.
pub fn compose_functors(g: &CatFunctor, f: &CatFunctor) -> Result<CatFunctor> {
    if !same_cat(f.cod(), g.dom()) {
        return Err(Error::FunctorMismatch(
            "codomain of the first functor is not the domain of the second".into(),
        ));
    }
    Ok(CatFunctor {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        obj_map: f.obj_map.iter().map(|&o| g.obj(o)).collect(),
        mor_map: f.mor_map.iter().map(|&m| g.mor(m)).collect(),
    })
}

pub fn identity_functor(c: Arc<FinCat>) -> CatFunctor {
    CatFunctor::identity(c)
}

/// A natural transformation `source ⇒ target`.
#[derive(Clone, Debug, PartialEq)]
pub struct NatTrans {
    source: CatFunctor,
    target: CatFunctor,
    components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(source: CatFunctor, target: CatFunctor, components: Vec<Mor>) -> Result<Self> {
        if !same_cat(source.dom(), target.dom()) || !same_cat(source.cod(), target.cod()) {
            return Err(Error::FunctorMismatch(
                "source and target functors must share domain and codomain".into(),
            ));
        }
        if components.len() != source.dom().object_count() {
            return Err(Error::FunctorMismatch(
                "one component per object is required".into(),
            ));
        }
        if let Some(m) = components
            .iter()
            .find(|m| m.idx() >= source.cod().morphism_count())
        {
            return Err(Error::IndexOutOfRange {
                what: "morphisms",
                index: m.idx(),
                len: source.cod().morphism_count(),
            });
        }
        Ok(NatTrans {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: CatFunctor) -> Self {
        let components = f.dom().objects().map(|o| f.cod().ident(f.obj(o))).collect();
        NatTrans {
            target: f.clone(),
            source: f,
            components,
        }
    }

    pub fn source(&self) -> &CatFunctor {
        &self.source
    }

    pub fn target(&self) -> &CatFunctor {
        &self.target
    }

    pub fn component(&self, o: Obj) -> Mor {
        self.components[o.idx()]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn validate(&self) -> ValidationReport {
        validate_nat_trans(self)
    }

    /// `p ∘ self`, whiskering on the codomain side.
    pub fn whisker_left(&self, p: &CatFunctor) -> Result<NatTrans> {
        let source = compose_functors(p, &self.source)?;
        let target = compose_functors(p, &self.target)?;
        let components = self.components.iter().map(|&m| p.mor(m)).collect();
        NatTrans::new(source, target, components)
    }

    /// True if every component is an identity.
    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .components
                .iter()
                .all(|&m| self.source.cod().is_identity(m))
    }

    /// A copy with one component replaced; used to build negative controls.
    pub fn with_component(&self, o: Obj, m: Mor) -> Result<NatTrans> {
        let mut components = self.components.clone();
        *components
            .get_mut(o.idx())
            .ok_or(Error::IndexOutOfRange {
                what: "objects",
                index: o.idx(),
                len: self.components.len(),
            })? = m;
        NatTrans::new(self.source.clone(), self.target.clone(), components)
    }
}
