use std::sync::Arc;

use super::set::{product, Bounds, SimplicialMap, SimplicialSet};
use crate::cat::fixtures::interval;
use crate::cat::{product as cat_product, CatFunctor, FinCat, Mor, NatTrans, Obj};
use crate::error::{Error, Result};

/// Composable strings `x_0 → x_1 → ... → x_n`, as morphism indices; level 0
/// holds `[object]`.
pub(crate) fn strings(c: &FinCat, bounds: Bounds) -> Result<Vec<Vec<Vec<u32>>>> {
    let mut levels: Vec<Vec<Vec<u32>>> = Vec::with_capacity(bounds.truncation + 1);
    bounds.admit("0", c.object_count())?;
    levels.push(c.objects().map(|o| vec![o.0]).collect());
    if bounds.truncation >= 1 {
        bounds.admit("1", c.morphism_count())?;
        levels.push(c.morphisms().map(|m| vec![m.0]).collect());
    }
    for n in 2..=bounds.truncation {
        let prev = &levels[n - 1];
        let size: usize = prev
            .iter()
            .map(|s| c.outgoing(c.tgt(Mor(*s.last().unwrap()))).len())
            .sum();
        bounds.admit(n.to_string(), size)?;
        let mut next = Vec::with_capacity(size);
        for s in prev {
            for &m in c.outgoing(c.tgt(Mor(*s.last().unwrap()))) {
                let mut t = s.clone();
                t.push(m.0);
                next.push(t);
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// The `j`-th object of a string key at level `n`.
pub(crate) fn string_vertex(c: &FinCat, n: usize, key: &[u32], j: usize) -> Obj {
    if n == 0 {
        Obj(key[0])
    } else if j == 0 {
        c.src(Mor(key[0]))
    } else {
        c.tgt(Mor(key[j - 1]))
    }
}

pub(crate) fn string_face(c: &FinCat, n: usize, i: usize, key: &[u32]) -> Vec<u32> {
    if n == 1 {
        return vec![string_vertex(c, 1, key, 1 - i).0];
    }
    let mut k = key.to_vec();
    if i == 0 {
        k.remove(0);
    } else if i == n {
        k.pop();
    } else {
        let g = c.compose(Mor(k[i]), Mor(k[i - 1]));
        k[i - 1] = g.0;
        k.remove(i);
    }
    k
}

pub(crate) fn string_degen(c: &FinCat, n: usize, i: usize, key: &[u32]) -> Vec<u32> {
    let e = c.ident(string_vertex(c, n, key, i)).0;
    if n == 0 {
        return vec![e];
    }
    let mut k = key.to_vec();
    k.insert(i, e);
    k
}

/// The nerve truncated at `bounds.truncation`.
pub fn nerve(c: &FinCat, bounds: impl Into<Bounds>) -> Result<SimplicialSet> {
    let bounds = bounds.into();
    if bounds.truncation < 1 {
        return Err(Error::TruncationTooSmall {
            truncation: bounds.truncation,
            reason: "nerves need at least level 1".into(),
        });
    }
    SimplicialSet::from_keys(
        strings(c, bounds)?,
        |n, i, k| string_face(c, n, i, k),
        |n, i, k| string_degen(c, n, i, k),
    )
}

fn map_string(f: &CatFunctor, n: usize, key: &[u32]) -> Vec<u32> {
    if n == 0 {
        vec![f.obj(Obj(key[0])).0]
    } else {
        key.iter().map(|&m| f.mor(Mor(m)).0).collect()
    }
}

/// `N(F)` between given nerves of its domain and codomain.
pub fn nerve_map_between(
    f: &CatFunctor,
    source: &Arc<SimplicialSet>,
    target: &Arc<SimplicialSet>,
) -> Result<SimplicialMap> {
    let levels = (0..=source.truncation())
        .map(|n| {
            (0..source.len(n) as u32)
                .map(|x| {
                    let key = map_string(f, n, source.key(n, x));
                    target.lookup(n, &key).ok_or_else(|| {
                        Error::Shape("target is not the nerve of the codomain".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source.clone(), target.clone(), levels)
}

/// `N(F)`, building both nerves.
pub fn nerve_map(f: &CatFunctor, bounds: impl Into<Bounds>) -> Result<SimplicialMap> {
    let bounds = bounds.into();
    let source = Arc::new(nerve(f.dom(), bounds)?);
    let target = Arc::new(nerve(f.cod(), bounds)?);
    nerve_map_between(f, &source, &target)
}

/// A map `H: X × Δ¹ → Y`.
#[derive(Clone, Debug)]
pub struct SimplicialHomotopy {
    pub base: Arc<SimplicialSet>,
    pub interval: Arc<SimplicialSet>,
    pub map: SimplicialMap,
}

impl SimplicialHomotopy {
    pub fn new(
        base: Arc<SimplicialSet>,
        interval: Arc<SimplicialSet>,
        map: SimplicialMap,
    ) -> Result<Self> {
        let src = &map.source;
        let shaped = src.truncation() == base.truncation()
            && (0..=base.truncation()).all(|n| src.len(n) == base.len(n) * interval.len(n));
        if !shaped {
            return Err(Error::Shape("homotopy source is not X × Δ¹".into()));
        }
        Ok(SimplicialHomotopy {
            base,
            interval,
            map,
        })
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.map.target
    }

    pub fn truncation(&self) -> usize {
        self.base.truncation()
    }

    /// The index of the `n`-simplex of `Δ¹` with `zeros` leading vertices at
    /// 0 and the rest at 1.
    pub fn interval_simplex(&self, n: usize, zeros: usize) -> u32 {
        let key: Vec<u32> = if n == 0 {
            vec![if zeros > 0 { 0 } else { 1 }]
        } else {
            (0..n)
                .map(|j| match (j + 1 < zeros, j < zeros) {
                    (true, _) => 0,
                    (false, true) => 2,
                    _ => 1,
                })
                .collect()
        };
        self.interval.lookup(n, &key).expect("interval simplex")
    }

    /// `H(x, t)` for `x ∈ X_n` and `t ∈ Δ¹_n`.
    pub fn at(&self, n: usize, x: u32, t: u32) -> u32 {
        let cell = x * self.interval.len(n) as u32 + t;
        self.map.apply(n, cell)
    }

    /// Restriction to the vertex `e ∈ {0, 1}`.
    pub fn endpoint(&self, e: usize) -> Result<SimplicialMap> {
        let levels = (0..=self.truncation())
            .map(|n| {
                let t = self.interval_simplex(n, if e == 0 { n + 1 } else { 0 });
                (0..self.base.len(n) as u32).map(|x| self.at(n, x, t)).collect()
            })
            .collect();
        SimplicialMap::new(self.base.clone(), self.target().clone(), levels)
    }
}

/// The functor `C × 2 → D` encoding `α: F ⇒ G`.
pub fn transformation_functor(alpha: &NatTrans) -> Result<CatFunctor> {
    let (f, g) = (alpha.source(), alpha.target());
    let c = f.dom();
    let d = f.cod();
    let two = interval();
    let c2 = Arc::new(cat_product(c, &two)?);
    // product enumerates pairs with the left factor major
    let obj_map = c
        .objects()
        .flat_map(|o| [f.obj(o), g.obj(o)])
        .collect();
    let mut mor_map = Vec::with_capacity(c2.morphism_count());
    for m in c.morphisms() {
        let diag = d
            .comp(g.mor(m), alpha.component(c.src(m)))
            .ok_or_else(|| Error::FunctorMismatch("component has the wrong type".into()))?;
        mor_map.extend([f.mor(m), g.mor(m), diag]);
    }
    let h = CatFunctor::new(c2, d.clone(), obj_map, mor_map)?;
    if !h.validate().pass() {
        return Err(Error::FunctorMismatch(
            "transformation is not natural".into(),
        ));
    }
    Ok(h)
}

/// Realizes `α` as `N(C) × Δ¹ ≅ N(C × 2) → N(D)`.
pub fn nat_trans_to_homotopy(
    alpha: &NatTrans,
    bounds: impl Into<Bounds>,
) -> Result<SimplicialHomotopy> {
    let bounds = bounds.into();
    let h = transformation_functor(alpha)?;
    let base = Arc::new(nerve(alpha.source().dom(), bounds)?);
    let interval_set = Arc::new(nerve(&interval(), bounds)?);
    let target = Arc::new(nerve(alpha.source().cod(), bounds)?);
    nat_trans_homotopy_between(&h, &base, &interval_set, &target, bounds)
}

/// As [`nat_trans_to_homotopy`], reusing nerves already built.
pub fn nat_trans_homotopy_between(
    h: &CatFunctor,
    base: &Arc<SimplicialSet>,
    interval_set: &Arc<SimplicialSet>,
    target: &Arc<SimplicialSet>,
    bounds: Bounds,
) -> Result<SimplicialHomotopy> {
    let prod = Arc::new(product(base, interval_set, bounds)?);
    // (m, t) ↦ index of (m, t) in C × 2
    let pair = |m: u32, t: u32| Mor(m * 3 + t);
    let levels = (0..=prod.truncation())
        .map(|n| {
            (0..prod.len(n) as u32)
                .map(|cell| {
                    let k = prod.key(n, cell);
                    let (ck, tk) = (base.key(n, k[0]), interval_set.key(n, k[1]));
                    let key: Vec<u32> = if n == 0 {
                        vec![h.obj(Obj(ck[0] * 2 + tk[0])).0]
                    } else {
                        ck.iter()
                            .zip(tk)
                            .map(|(&m, &t)| h.mor(pair(m, t)).0)
                            .collect()
                    };
                    target
                        .lookup(n, &key)
                        .ok_or_else(|| Error::Shape("target is not the nerve of D".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SimplicialMap::new(prod, target.clone(), levels)?;
    SimplicialHomotopy::new(base.clone(), interval_set.clone(), map)
}
