//! JSON documents for categories, functors, covers, fattening inputs and
//! simplicial sets, plus DOT export and a composition-closure helper.
//!
//! Serialization is canonical: object keys are sorted and output is
//! pretty-printed with a trailing newline, so equal values give equal bytes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{CatFunctor, FinCat, Mor, MorphismData, Obj};
use crate::constructions::CoverData;
use crate::error::{Error, Result};
use crate::simplicial::{BiSimplicialSet, SimplicialSet};

pub const CATEGORY_FORMAT: &str = "thma-category/1";
pub const FUNCTOR_FORMAT: &str = "thma-functor/1";
pub const COVER_FORMAT: &str = "thma-cover/1";
pub const FATTEN_FORMAT: &str = "thma-fatten/1";
pub const SIMPLICIAL_FORMAT: &str = "thma-simplicial/1";
pub const BISIMPLICIAL_FORMAT: &str = "thma-bisimplicial/1";

/// Canonical JSON text: sorted keys, two-space indent, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Document(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Document(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Document(format!("line {}, column {}: {e}", e.line(), e.column()))
    })
}

/// The `format` field of any document, if present.
pub fn format_of(text: &str) -> Result<String> {
    let v: serde_json::Value = parse_json(text)?;
    v.get("format")
        .and_then(|f| f.as_str())
        .map(str::to_string)
        .ok_or_else(|| Error::Document("missing `format` field".into()))
}

fn expect_format(found: &str, want: &str) -> Result<()> {
    if found == want {
        Ok(())
    } else {
        Err(Error::Document(format!("expected format `{want}`, found `{found}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    pub format: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, g∘f]`.
    pub composition: Vec<[String; 3]>,
}

impl CategoryDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: CategoryDocument = parse_json(text)?;
        expect_format(&doc.format, CATEGORY_FORMAT)?;
        Ok(doc)
    }

    pub fn from_cat(c: &FinCat) -> Self {
        let name = |m: Mor| c.morphism_name(m).to_string();
        CategoryDocument {
            format: CATEGORY_FORMAT.into(),
            objects: c.object_names().to_vec(),
            morphisms: c
                .morphisms()
                .map(|m| MorphismEntry {
                    id: name(m),
                    src: c.object_name(c.src(m)).to_string(),
                    tgt: c.object_name(c.tgt(m)).to_string(),
                })
                .collect(),
            identities: c
                .objects()
                .map(|o| (c.object_name(o).to_string(), name(c.ident(o))))
                .collect(),
            composition: c
                .composition_triples()
                .into_iter()
                .map(|(g, f, gf)| [name(g), name(f), name(gf)])
                .collect(),
        }
    }

    /// Builds the category; unknown identifiers are document errors, while
    /// axiom violations (including missing triples) are left to validation.
    pub fn to_cat(&self) -> Result<FinCat> {
        let objects: HashMap<&str, Obj> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.as_str(), Obj(i as u32)))
            .collect();
        let obj = |n: &str| {
            objects
                .get(n)
                .copied()
                .ok_or_else(|| Error::Document(format!("unknown object `{n}`")))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| {
                Ok(MorphismData {
                    name: m.id.clone(),
                    src: obj(&m.src)?,
                    tgt: obj(&m.tgt)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mors: HashMap<&str, Mor> = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.as_str(), Mor(i as u32)))
            .collect();
        let mor = |n: &str| {
            mors.get(n)
                .copied()
                .ok_or_else(|| Error::Document(format!("unknown morphism `{n}`")))
        };
        for k in self.identities.keys() {
            obj(k)?;
        }
        let identities = self
            .objects
            .iter()
            .map(|o| {
                let id = self
                    .identities
                    .get(o)
                    .ok_or_else(|| Error::MissingIdentity(o.clone()))?;
                mor(id)
            })
            .collect::<Result<Vec<_>>>()?;
        let triples = self
            .composition
            .iter()
            .map(|[g, f, gf]| Ok((mor(g)?, mor(f)?, mor(gf)?)))
            .collect::<Result<Vec<_>>>()?;
        FinCat::from_parts(self.objects.clone(), morphisms, identities, triples)
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }
}

/// Fills in a partial composition table. Unit laws are added, then missing
/// composites are inferred from hom-sets with a single element and from
/// associativity until nothing changes. Conflicting inferences or pairs left
/// undetermined are errors.
pub fn close_composition(doc: &CategoryDocument) -> Result<CategoryDocument> {
    let c = doc.to_cat()?;
    let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
    let set = |table: &mut HashMap<(Mor, Mor), Mor>, g: Mor, f: Mor, gf: Mor| -> Result<bool> {
        if c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g) {
            return Err(Error::Closure(format!(
                "{} ∘ {} cannot be {}",
                c.morphism_name(g),
                c.morphism_name(f),
                c.morphism_name(gf)
            )));
        }
        match table.get(&(g, f)) {
            Some(&old) if old != gf => Err(Error::Closure(format!(
                "{} ∘ {} is ambiguous: {} or {}",
                c.morphism_name(g),
                c.morphism_name(f),
                c.morphism_name(old),
                c.morphism_name(gf)
            ))),
            Some(_) => Ok(false),
            None => {
                table.insert((g, f), gf);
                Ok(true)
            }
        }
    };
    for (g, f, gf) in c.composition_triples() {
        set(&mut table, g, f, gf)?;
    }
    for m in c.morphisms() {
        set(&mut table, c.ident(c.tgt(m)), m, m)?;
        set(&mut table, m, c.ident(c.src(m)), m)?;
    }
    let pairs: Vec<(Mor, Mor)> = c
        .morphisms()
        .flat_map(|f| c.outgoing(c.tgt(f)).iter().map(move |&g| (g, f)))
        .collect();
    loop {
        let mut changed = false;
        for &(g, f) in &pairs {
            let hom: Vec<Mor> = c.hom(c.src(f), c.tgt(g)).collect();
            if hom.len() == 1 {
                changed |= set(&mut table, g, f, hom[0])?;
            }
        }
        // (h∘g)∘f = h∘(g∘f) whenever h∘g and g∘f are known
        let mut known: Vec<((Mor, Mor), Mor)> = table.iter().map(|(&k, &v)| (k, v)).collect();
        known.sort();
        for &((g, f), gf) in &known {
            for &h in c.outgoing(c.tgt(g)) {
                let Some(&hg) = table.get(&(h, g)) else { continue };
                let left = table.get(&(hg, f)).copied();
                let right = table.get(&(h, gf)).copied();
                if let Some(v) = left {
                    changed |= set(&mut table, h, gf, v)?;
                }
                if let Some(v) = right {
                    changed |= set(&mut table, hg, f, v)?;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let missing: Vec<String> = pairs
        .iter()
        .filter(|p| !table.contains_key(p))
        .map(|&(g, f)| format!("({}, {})", c.morphism_name(g), c.morphism_name(f)))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Closure(format!("undetermined composites {}", missing.join(", "))));
    }
    let mut out = doc.clone();
    out.composition = pairs
        .iter()
        .map(|&(g, f)| {
            let gf = table[&(g, f)];
            [c.morphism_name(g), c.morphism_name(f), c.morphism_name(gf)].map(str::to_string)
        })
        .collect();
    Ok(out)
}

/// Either a path to a category document or the document itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(CategoryDocument),
}

impl CategoryRef {
    pub fn resolve(&self, load: &dyn Fn(&str) -> Result<CategoryDocument>) -> Result<FinCat> {
        match self {
            CategoryRef::Path(p) => load(p)?.to_cat(),
            CategoryRef::Inline(d) => d.to_cat(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDocument {
    pub format: String,
    pub dom: CategoryRef,
    pub cod: CategoryRef,
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
}

impl FunctorDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: FunctorDocument = parse_json(text)?;
        expect_format(&doc.format, FUNCTOR_FORMAT)?;
        Ok(doc)
    }

    pub fn from_functor(f: &CatFunctor) -> Self {
        let (x, y) = (f.dom(), f.cod());
        FunctorDocument {
            format: FUNCTOR_FORMAT.into(),
            dom: CategoryRef::Inline(CategoryDocument::from_cat(x)),
            cod: CategoryRef::Inline(CategoryDocument::from_cat(y)),
            obj_map: x
                .objects()
                .map(|o| (x.object_name(o).to_string(), y.object_name(f.obj(o)).to_string()))
                .collect(),
            mor_map: x
                .morphisms()
                .map(|m| (x.morphism_name(m).to_string(), y.morphism_name(f.mor(m)).to_string()))
                .collect(),
        }
    }

    /// Builds the functor, without checking functoriality.
    pub fn to_functor(&self, load: &dyn Fn(&str) -> Result<CategoryDocument>) -> Result<CatFunctor> {
        let x = Arc::new(self.dom.resolve(load)?);
        let y = Arc::new(self.cod.resolve(load)?);
        let unknown = |what: &str, n: &str| Error::Document(format!("unknown {what} `{n}`"));
        for k in self.obj_map.keys() {
            x.object_by_name(k).ok_or_else(|| unknown("object", k))?;
        }
        for k in self.mor_map.keys() {
            x.morphism_by_name(k).ok_or_else(|| unknown("morphism", k))?;
        }
        let obj_map = x
            .object_names()
            .iter()
            .map(|o| {
                let t = self
                    .obj_map
                    .get(o)
                    .ok_or_else(|| Error::Document(format!("object `{o}` is not mapped")))?;
                y.object_by_name(t).ok_or_else(|| unknown("object", t))
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = x
            .morphisms()
            .map(|m| {
                let name = x.morphism_name(m);
                let t = self
                    .mor_map
                    .get(name)
                    .ok_or_else(|| Error::Document(format!("morphism `{name}` is not mapped")))?;
                y.morphism_by_name(t).ok_or_else(|| unknown("morphism", t))
            })
            .collect::<Result<Vec<_>>>()?;
        CatFunctor::new(x, y, obj_map, mor_map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDocument {
    pub format: String,
    pub base: Vec<String>,
    pub pieces: BTreeMap<String, Vec<String>>,
}

impl CoverDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: CoverDocument = parse_json(text)?;
        expect_format(&doc.format, COVER_FORMAT)?;
        Ok(doc)
    }

    pub fn from_cover(c: &CoverData) -> Self {
        CoverDocument {
            format: COVER_FORMAT.into(),
            base: c.base.clone(),
            pieces: c.pieces.iter().cloned().collect(),
        }
    }

    /// Pieces come out in name order.
    pub fn to_cover(&self) -> CoverData {
        CoverData::new(
            self.base.clone(),
            self.pieces.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        )
    }
}

/// A category and a surjection `S → Y₀` given as `point ↦ object`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FattenDocument {
    pub format: String,
    pub category: CategoryRef,
    pub map: BTreeMap<String, String>,
}

impl FattenDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: FattenDocument = parse_json(text)?;
        expect_format(&doc.format, FATTEN_FORMAT)?;
        Ok(doc)
    }

    pub fn resolve(
        &self,
        load: &dyn Fn(&str) -> Result<CategoryDocument>,
    ) -> Result<(Arc<FinCat>, Vec<(String, Obj)>)> {
        let y = Arc::new(self.category.resolve(load)?);
        let p = self
            .map
            .iter()
            .map(|(s, o)| {
                let o = y
                    .object_by_name(o)
                    .ok_or_else(|| Error::Document(format!("unknown object `{o}`")))?;
                Ok((s.clone(), o))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((y, p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDocument {
    /// Construction-specific integer keys, one per simplex.
    pub keys: Vec<Vec<u32>>,
    /// `faces[i][x] = d_i x`.
    pub faces: Vec<Vec<u32>>,
    /// `degeneracies[i][x] = s_i x`.
    pub degeneracies: Vec<Vec<u32>>,
    pub nondegenerate: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDocument {
    pub format: String,
    pub truncation: usize,
    pub levels: Vec<LevelDocument>,
}

impl SimplicialDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: SimplicialDocument = parse_json(text)?;
        expect_format(&doc.format, SIMPLICIAL_FORMAT)?;
        Ok(doc)
    }

    pub fn from_set(x: &SimplicialSet) -> Self {
        let top = x.truncation();
        let levels = (0..=top)
            .map(|n| {
                let len = x.len(n) as u32;
                LevelDocument {
                    keys: (0..len).map(|s| x.key(n, s).to_vec()).collect(),
                    faces: if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n).map(|i| (0..len).map(|s| x.face(n, i, s)).collect()).collect()
                    },
                    degeneracies: if n == top {
                        Vec::new()
                    } else {
                        (0..=n).map(|i| (0..len).map(|s| x.degen(n, i, s)).collect()).collect()
                    },
                    nondegenerate: x.nondegenerate_count(n),
                }
            })
            .collect();
        SimplicialDocument {
            format: SIMPLICIAL_FORMAT.into(),
            truncation: top,
            levels,
        }
    }

    pub fn to_set(&self) -> Result<SimplicialSet> {
        if self.levels.len() != self.truncation + 1 {
            return Err(Error::Document("one level per degree up to the truncation".into()));
        }
        let x = SimplicialSet::from_tables(
            self.levels.iter().map(|l| l.keys.clone()).collect(),
            self.levels.iter().map(|l| l.faces.clone()).collect(),
            self.levels.iter().map(|l| l.degeneracies.clone()).collect(),
        )?;
        for (n, l) in self.levels.iter().enumerate() {
            if x.nondegenerate_count(n) != l.nondegenerate {
                return Err(Error::Document(format!(
                    "level {n} declares {} nondegenerate simplices, tables give {}",
                    l.nondegenerate,
                    x.nondegenerate_count(n)
                )));
            }
        }
        Ok(x)
    }
}

/// Sizes of a bisimplicial set, cell by cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiSimplicialDocument {
    pub format: String,
    pub truncation: usize,
    /// `sizes[p][q] = |T_{pq}|`.
    pub sizes: Vec<Vec<usize>>,
    /// Cells nondegenerate in both directions.
    pub nondegenerate: Vec<Vec<usize>>,
}

impl BiSimplicialDocument {
    pub fn from_set(t: &BiSimplicialSet) -> Self {
        let top = t.truncation();
        BiSimplicialDocument {
            format: BISIMPLICIAL_FORMAT.into(),
            truncation: top,
            sizes: (0..=top).map(|p| (0..=top).map(|q| t.len(p, q)).collect()).collect(),
            nondegenerate: (0..=top)
                .map(|p| (0..=top).map(|q| t.nondegenerate(p, q).count()).collect())
                .collect(),
        }
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Objects as nodes, non-identity morphisms as labeled edges.
pub fn to_dot(c: &FinCat) -> String {
    let mut out = String::from("digraph C {\n");
    for o in c.objects() {
        out.push_str(&format!("  {};\n", dot_id(c.object_name(o))));
    }
    for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            dot_id(c.object_name(c.src(m))),
            dot_id(c.object_name(c.tgt(m))),
            dot_id(c.morphism_name(m))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests;
