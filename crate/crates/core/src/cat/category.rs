use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an object inside a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Obj(pub u32);

/// Index of a morphism inside a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mor(pub u32);

impl Obj {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category stored as explicit tables.
///
/// Composition is kept per composable pair: for a morphism `f`, `after[f][k]`
/// holds `g ∘ f` where `g` is the `k`-th morphism leaving `tgt f`. Entries may
/// be missing (a document can omit a triple); [`validate_category`](super::validate_category) reports
/// those. Composites recorded for pairs that are not composable are kept in
/// `stray` so that validation can name them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: Vec<Mor>,
    outgoing: Vec<Vec<Mor>>,
    incoming: Vec<Vec<Mor>>,
    out_pos: Vec<u32>,
    after: Vec<Vec<Option<Mor>>>,
    stray: Vec<(Mor, Mor, Mor)>,
    obj_lookup: HashMap<String, Obj>,
    mor_lookup: HashMap<String, Mor>,
}

impl FinCat {
    /// Assembles a category from index-level parts.
    ///
    /// Only structural consistency is checked here (unique names, indices in
    /// range, no two different composites for one pair). Category axioms are
    /// left to [`validate_category`](super::validate_category).
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<MorphismData>,
        identities: Vec<Mor>,
        compositions: impl IntoIterator<Item = (Mor, Mor, Mor)>,
    ) -> Result<Self> {
        let mut obj_lookup = HashMap::with_capacity(objects.len());
        for (i, name) in objects.iter().enumerate() {
            if obj_lookup.insert(name.clone(), Obj(i as u32)).is_some() {
                return Err(Error::DuplicateId(name.clone()));
            }
        }
        let mut mor_lookup = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if mor_lookup.insert(m.name.clone(), Mor(i as u32)).is_some() {
                return Err(Error::DuplicateId(m.name.clone()));
            }
            for o in [m.src, m.tgt] {
                if o.idx() >= objects.len() {
                    return Err(Error::IndexOutOfRange {
                        what: "objects",
                        index: o.idx(),
                        len: objects.len(),
                    });
                }
            }
        }
        if identities.len() != objects.len() {
            return Err(Error::Shape(format!(
                "{} identities for {} objects",
                identities.len(),
                objects.len()
            )));
        }
        for &e in &identities {
            if e.idx() >= morphisms.len() {
                return Err(Error::IndexOutOfRange {
                    what: "morphisms",
                    index: e.idx(),
                    len: morphisms.len(),
                });
            }
        }

        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        let mut out_pos = vec![0u32; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            out_pos[i] = outgoing[m.src.idx()].len() as u32;
            outgoing[m.src.idx()].push(Mor(i as u32));
            incoming[m.tgt.idx()].push(Mor(i as u32));
        }
        let after: Vec<Vec<Option<Mor>>> = morphisms
            .iter()
            .map(|m| vec![None; outgoing[m.tgt.idx()].len()])
            .collect();

        let mut cat = FinCat {
            objects,
            morphisms,
            identities,
            outgoing,
            incoming,
            out_pos,
            after,
            stray: Vec::new(),
            obj_lookup,
            mor_lookup,
        };
        for (g, f, gf) in compositions {
            cat.record(g, f, gf)?;
        }
        Ok(cat)
    }

    fn record(&mut self, g: Mor, f: Mor, gf: Mor) -> Result<()> {
        let n = self.morphisms.len();
        for m in [g, f, gf] {
            if m.idx() >= n {
                return Err(Error::IndexOutOfRange {
                    what: "morphisms",
                    index: m.idx(),
                    len: n,
                });
            }
        }
        let conflict = || Error::ConflictingComposition {
            g: self.morphisms[g.idx()].name.clone(),
            f: self.morphisms[f.idx()].name.clone(),
        };
        if self.src(g) == self.tgt(f) {
            let slot = &mut self.after[f.idx()][self.out_pos[g.idx()] as usize];
            match slot {
                Some(existing) if *existing != gf => return Err(conflict()),
                _ => *slot = Some(gf),
            }
        } else {
            match self.stray.iter().find(|(g2, f2, _)| *g2 == g && *f2 == f) {
                Some((_, _, existing)) if *existing != gf => return Err(conflict()),
                Some(_) => {}
                None => self.stray.push((g, f, gf)),
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + DoubleEndedIterator + '_ {
        (0..self.objects.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + DoubleEndedIterator + '_ {
        (0..self.morphisms.len() as u32).map(Mor)
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o.idx()]
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.morphisms[m.idx()].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_data(&self) -> &[MorphismData] {
        &self.morphisms
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.obj_lookup.get(name).copied()
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<Mor> {
        self.mor_lookup.get(name).copied()
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m.idx()].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m.idx()].tgt
    }

    pub fn ident(&self, o: Obj) -> Mor {
        self.identities[o.idx()]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        let s = self.src(m);
        s == self.tgt(m) && self.ident(s) == m
    }

    /// Morphisms with source `o`.
    pub fn outgoing(&self, o: Obj) -> &[Mor] {
        &self.outgoing[o.idx()]
    }

    /// Morphisms with target `o`.
    pub fn incoming(&self, o: Obj) -> &[Mor] {
        &self.incoming[o.idx()]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.outgoing[a.idx()]
            .iter()
            .copied()
            .filter(move |&m| self.tgt(m) == b)
    }

    /// `g ∘ f`, if the pair is composable and the table has an entry.
    pub fn comp(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.src(g) == self.tgt(f) {
            self.after[f.idx()][self.out_pos[g.idx()] as usize]
        } else {
            None
        }
    }

    /// Composition for tables already known to be valid.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.comp(g, f).unwrap_or_else(|| {
            panic!(
                "no composite for ({}, {})",
                self.morphism_name(g),
                self.morphism_name(f)
            )
        })
    }

    /// Every recorded composition triple `(g, f, g∘f)`, composable ones first.
    pub fn composition_triples(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for f in self.morphisms() {
            for (k, &g) in self.outgoing[self.tgt(f).idx()].iter().enumerate() {
                if let Some(gf) = self.after[f.idx()][k] {
                    out.push((g, f, gf));
                }
            }
        }
        out.extend(self.stray.iter().copied());
        out
    }

    pub(crate) fn stray_compositions(&self) -> &[(Mor, Mor, Mor)] {
        &self.stray
    }

    /// Index-level equality: same sizes, endpoints, identities and
    /// composition, ignoring element names.
    pub fn same_tables(&self, other: &FinCat) -> bool {
        self.objects.len() == other.objects.len()
            && self.morphisms.len() == other.morphisms.len()
            && self
                .morphisms
                .iter()
                .zip(&other.morphisms)
                .all(|(a, b)| a.src == b.src && a.tgt == b.tgt)
            && self.identities == other.identities
            && self.after == other.after
            && self.stray == other.stray
    }

    /// A copy with objects and morphisms renumbered by the given orders
    /// (`new position -> old index`). Names are kept.
    pub fn reindexed(&self, obj_order: &[Obj], mor_order: &[Mor]) -> Result<FinCat> {
        let mut obj_new = vec![u32::MAX; self.objects.len()];
        for (new, old) in obj_order.iter().enumerate() {
            obj_new[old.idx()] = new as u32;
        }
        let mut mor_new = vec![u32::MAX; self.morphisms.len()];
        for (new, old) in mor_order.iter().enumerate() {
            mor_new[old.idx()] = new as u32;
        }
        if obj_order.len() != self.objects.len()
            || mor_order.len() != self.morphisms.len()
            || obj_new.contains(&u32::MAX)
            || mor_new.contains(&u32::MAX)
        {
            return Err(Error::Shape("reindexing is not a permutation".into()));
        }
        let objects = obj_order
            .iter()
            .map(|o| self.objects[o.idx()].clone())
            .collect();
        let morphisms = mor_order
            .iter()
            .map(|m| {
                let d = &self.morphisms[m.idx()];
                MorphismData {
                    name: d.name.clone(),
                    src: Obj(obj_new[d.src.idx()]),
                    tgt: Obj(obj_new[d.tgt.idx()]),
                }
            })
            .collect();
        let identities = obj_order
            .iter()
            .map(|o| Mor(mor_new[self.ident(*o).idx()]))
            .collect();
        let m = |x: Mor| Mor(mor_new[x.idx()]);
        let triples = self
            .composition_triples()
            .into_iter()
            .map(|(g, f, gf)| (m(g), m(f), m(gf)));
        FinCat::from_parts(objects, morphisms, identities, triples)
    }
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCat({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

/// Canonical rendering of a labelled tuple, e.g. `(eta=u,b=x0)`.
pub fn tuple_name(parts: &[(&str, &str)]) -> String {
    let mut s = String::from("(");
    for (i, (k, v)) in parts.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(k);
        s.push('=');
        s.push_str(v);
    }
    s.push(')');
    s
}

/// Builds a [`FinCat`] from structured keys.
///
/// Constructions register objects and morphisms under keys describing them
/// (pairs, squares, ...), then supply the identity and composition rules on
/// keys. `finish` resolves those rules into the index tables.
pub(crate) struct Assembler<O, M> {
    objects: Vec<String>,
    obj_keys: Vec<O>,
    obj_index: HashMap<O, Obj>,
    morphisms: Vec<MorphismData>,
    mor_keys: Vec<M>,
    mor_index: HashMap<M, Mor>,
}

impl<O: Hash + Eq + Clone, M: Hash + Eq + Clone> Assembler<O, M> {
    pub fn new() -> Self {
        Assembler {
            objects: Vec::new(),
            obj_keys: Vec::new(),
            obj_index: HashMap::new(),
            morphisms: Vec::new(),
            mor_keys: Vec::new(),
            mor_index: HashMap::new(),
        }
    }

    pub fn object(&mut self, key: O, name: String) -> Obj {
        let id = Obj(self.objects.len() as u32);
        self.objects.push(name);
        self.obj_keys.push(key.clone());
        self.obj_index.insert(key, id);
        id
    }

    pub fn morphism(&mut self, key: M, name: String, src: Obj, tgt: Obj) -> Mor {
        let id = Mor(self.morphisms.len() as u32);
        self.morphisms.push(MorphismData { name, src, tgt });
        self.mor_keys.push(key.clone());
        self.mor_index.insert(key, id);
        id
    }

    pub fn obj(&self, key: &O) -> Option<Obj> {
        self.obj_index.get(key).copied()
    }

    pub fn mor(&self, key: &M) -> Option<Mor> {
        self.mor_index.get(key).copied()
    }

    pub fn object_keys(&self) -> &[O] {
        &self.obj_keys
    }

    /// `compose(g, f)` must return the key of `g ∘ f`.
    pub fn finish(
        self,
        identity: impl Fn(&O) -> M,
        compose: impl Fn(&M, &M) -> M,
    ) -> Result<FinCat> {
        let missing = |what: &str| Error::Construction(format!("no element for {what}"));
        let mut identities = Vec::with_capacity(self.objects.len());
        for (i, k) in self.obj_keys.iter().enumerate() {
            let e = self
                .mor(&identity(k))
                .ok_or_else(|| missing(&format!("identity of {}", self.objects[i])))?;
            identities.push(e);
        }
        let mut outgoing = vec![Vec::new(); self.objects.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            outgoing[m.src.idx()].push(i);
        }
        let mut triples = Vec::new();
        for (fi, fd) in self.morphisms.iter().enumerate() {
            for &gi in &outgoing[fd.tgt.idx()] {
                let key = compose(&self.mor_keys[gi], &self.mor_keys[fi]);
                let gf = self.mor(&key).ok_or_else(|| {
                    missing(&format!(
                        "{} ∘ {}",
                        self.morphisms[gi].name, self.morphisms[fi].name
                    ))
                })?;
                let gd = &self.morphisms[gf.idx()];
                if gd.src != fd.src || gd.tgt != self.morphisms[gi].tgt {
                    return Err(Error::Construction(format!(
                        "composite {} has wrong endpoints",
                        gd.name
                    )));
                }
                triples.push((Mor(gi as u32), Mor(fi as u32), gf));
            }
        }
        FinCat::from_parts(self.objects, self.morphisms, identities, triples)
    }
}
