use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default per-level size limit.
pub const DEFAULT_BUDGET: usize = 200_000;
/// Default truncation.
pub const DEFAULT_TRUNCATION: usize = 4;

/// Truncation and per-level size limit for a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub truncation: usize,
    pub budget: usize,
}

impl Bounds {
    pub fn new(truncation: usize, budget: usize) -> Self {
        Bounds { truncation, budget }
    }

    pub(crate) fn admit(&self, level: impl Into<String>, size: usize) -> Result<()> {
        if size > self.budget {
            return Err(Error::BudgetExceeded {
                level: level.into(),
                size,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

impl From<usize> for Bounds {
    fn from(truncation: usize) -> Self {
        Bounds {
            truncation,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        DEFAULT_TRUNCATION.into()
    }
}

/// One level `X_n`: simplices are identified by integer keys whose meaning
/// depends on the construction (strings of morphism indices for nerves).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    pub keys: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, u32>,
    /// `faces[i][x] = d_i x`.
    pub faces: Vec<Vec<u32>>,
    /// `degens[i][x] = s_i x`; empty at the top level.
    pub degens: Vec<Vec<u32>>,
    pub degenerate: Vec<bool>,
}

impl Level {
    pub fn new(keys: Vec<Vec<u32>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(keys.len());
        for (i, k) in keys.iter().enumerate() {
            if index.insert(k.clone(), i as u32).is_some() {
                return Err(Error::Construction(format!("repeated simplex key {k:?}")));
            }
        }
        Ok(Level {
            degenerate: vec![false; keys.len()],
            keys,
            index,
            faces: Vec::new(),
            degens: Vec::new(),
        })
    }

    pub fn lookup(&self, key: &[u32], what: &str) -> Result<u32> {
        self.index
            .get(key)
            .copied()
            .ok_or_else(|| Error::Construction(format!("{what} lands outside the level: {key:?}")))
    }
}

/// A simplicial set truncated at level `N`, with degenerate simplices kept
/// and flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    truncation: usize,
    pub(crate) levels: Vec<Level>,
}

impl SimplicialSet {
    /// Resolves keyed face and degeneracy rules into tables.
    ///
    /// `face(n, i, key)` is the key of `d_i` of an `n`-simplex;
    /// `degen(n, i, key)` the key of `s_i`.
    pub(crate) fn from_keys(
        keys: Vec<Vec<Vec<u32>>>,
        face: impl Fn(usize, usize, &[u32]) -> Vec<u32>,
        degen: impl Fn(usize, usize, &[u32]) -> Vec<u32>,
    ) -> Result<Self> {
        if keys.is_empty() {
            return Err(Error::Shape("a simplicial set needs level 0".into()));
        }
        let truncation = keys.len() - 1;
        let mut levels = keys
            .into_iter()
            .map(Level::new)
            .collect::<Result<Vec<_>>>()?;
        for n in 1..=truncation {
            let (lower, upper) = levels.split_at_mut(n);
            let (below, here) = (&lower[n - 1], &mut upper[0]);
            here.faces = (0..=n)
                .map(|i| {
                    here.keys
                        .iter()
                        .map(|k| below.lookup(&face(n, i, k), "face"))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
        }
        for n in 0..truncation {
            let (lower, upper) = levels.split_at_mut(n + 1);
            let (here, above) = (&mut lower[n], &mut upper[0]);
            here.degens = (0..=n)
                .map(|i| {
                    here.keys
                        .iter()
                        .map(|k| above.lookup(&degen(n, i, k), "degeneracy"))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            for row in &here.degens {
                for &y in row {
                    above.degenerate[y as usize] = true;
                }
            }
        }
        Ok(SimplicialSet { truncation, levels })
    }

    /// Builds from explicit tables, `faces[n][i][x] = d_i x` (empty at level
    /// 0) and `degens[n][i][x] = s_i x` (empty at the top), then checks the
    /// simplicial identities.
    pub fn from_tables(
        keys: Vec<Vec<Vec<u32>>>,
        faces: Vec<Vec<Vec<u32>>>,
        degens: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let truncation = keys
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Shape("a simplicial set needs level 0".into()))?;
        if faces.len() != keys.len() || degens.len() != keys.len() {
            return Err(Error::Shape("one face and degeneracy table per level".into()));
        }
        let mut levels = keys
            .into_iter()
            .map(Level::new)
            .collect::<Result<Vec<_>>>()?;
        let sizes: Vec<usize> = levels.iter().map(|l| l.keys.len()).collect();
        let table_ok = |t: &[Vec<u32>], count: usize, len: usize, into: usize| {
            t.len() == count && t.iter().all(|row| row.len() == len && row.iter().all(|&y| (y as usize) < into))
        };
        for (n, (f, s)) in faces.into_iter().zip(degens).enumerate() {
            let face_count = if n == 0 { 0 } else { n + 1 };
            let degen_count = if n == truncation { 0 } else { n + 1 };
            if !table_ok(&f, face_count, sizes[n], if n == 0 { 0 } else { sizes[n - 1] })
                || !table_ok(&s, degen_count, sizes[n], sizes.get(n + 1).copied().unwrap_or(0))
            {
                return Err(Error::Shape(format!("structure tables at level {n} are malformed")));
            }
            levels[n].faces = f;
            levels[n].degens = s;
        }
        for n in 0..truncation {
            let hits: Vec<u32> = levels[n].degens.iter().flatten().copied().collect();
            for y in hits {
                levels[n + 1].degenerate[y as usize] = true;
            }
        }
        let x = SimplicialSet { truncation, levels };
        x.check_identities()?;
        Ok(x)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self, n: usize) -> usize {
        self.levels[n].keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].keys.is_empty()
    }

    /// Level sizes `|X_0|, ..., |X_N|`.
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.keys.len()).collect()
    }

    pub fn key(&self, n: usize, x: u32) -> &[u32] {
        &self.levels[n].keys[x as usize]
    }

    pub fn lookup(&self, n: usize, key: &[u32]) -> Option<u32> {
        self.levels[n].index.get(key).copied()
    }

    pub fn face(&self, n: usize, i: usize, x: u32) -> u32 {
        self.levels[n].faces[i][x as usize]
    }

    /// `s_i x` for `x` in level `n < N`.
    pub fn degen(&self, n: usize, i: usize, x: u32) -> u32 {
        self.levels[n].degens[i][x as usize]
    }

    pub fn is_degenerate(&self, n: usize, x: u32) -> bool {
        self.levels[n].degenerate[x as usize]
    }

    pub fn nondegenerate(&self, n: usize) -> impl Iterator<Item = u32> + '_ {
        let l = &self.levels[n];
        (0..l.keys.len() as u32).filter(move |&x| !l.degenerate[x as usize])
    }

    pub fn nondegenerate_count(&self, n: usize) -> usize {
        self.levels[n].degenerate.iter().filter(|d| !**d).count()
    }

    /// The `j`-th vertex of an `n`-simplex.
    pub fn vertex(&self, n: usize, x: u32, j: usize) -> u32 {
        let mut x = x;
        let mut m = n;
        while m > j {
            x = self.face(m, m, x);
            m -= 1;
        }
        while m > 0 {
            x = self.face(m, 0, x);
            m -= 1;
        }
        x
    }

    /// Checks every simplicial identity inside the truncation window.
    pub fn check_identities(&self) -> Result<()> {
        check_simplicial(
            self.truncation,
            |n| self.len(n),
            |n, i, x| self.face(n, i, x),
            |n, i, x| self.degen(n, i, x),
            "",
        )
    }

    /// A copy truncated at a lower level.
    pub fn truncated(&self, truncation: usize) -> Result<SimplicialSet> {
        if truncation > self.truncation {
            return Err(Error::TruncationTooSmall {
                truncation: self.truncation,
                reason: format!("cannot extend to level {truncation}"),
            });
        }
        let mut levels = self.levels[..=truncation].to_vec();
        levels[truncation].degens.clear();
        Ok(SimplicialSet { truncation, levels })
    }
}

/// Exhaustive check of the simplicial identities for structure maps given as
/// closures. `label` prefixes error messages.
pub(crate) fn check_simplicial(
    top: usize,
    len: impl Fn(usize) -> usize,
    face: impl Fn(usize, usize, u32) -> u32,
    degen: impl Fn(usize, usize, u32) -> u32,
    label: &str,
) -> Result<()> {
    let fail = |what: String| Err(Error::SimplicialIdentity(format!("{label}{what}")));
    // d_i d_j = d_{j-1} d_i for i < j
    for n in 2..=top {
        for x in 0..len(n) as u32 {
            for j in 1..=n {
                for i in 0..j {
                    if face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x)) {
                        return fail(format!("d{i} d{j} at level {n}, simplex {x}"));
                    }
                }
            }
        }
    }
    for n in 0..top {
        for x in 0..len(n) as u32 {
            for j in 0..=n {
                let sx = degen(n, j, x);
                for i in 0..=n + 1 {
                    let lhs = face(n + 1, i, sx);
                    let ok = if i == j || i == j + 1 {
                        lhs == x
                    } else if i < j {
                        lhs == degen(n - 1, j - 1, face(n, i, x))
                    } else {
                        lhs == degen(n - 1, j, face(n, i - 1, x))
                    };
                    if !ok {
                        return fail(format!("d{i} s{j} at level {n}, simplex {x}"));
                    }
                }
                // s_i s_j = s_{j+1} s_i for i <= j
                if n + 1 < top {
                    for i in 0..=j {
                        if degen(n + 1, i, sx) != degen(n + 1, j + 1, degen(n, i, x)) {
                            return fail(format!("s{i} s{j} at level {n}, simplex {x}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Levelwise maps commuting with faces and degeneracies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    pub levels: Vec<Vec<u32>>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        levels: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if source.truncation() != target.truncation() {
            return Err(Error::Shape(
                "simplicial maps need equal truncations".into(),
            ));
        }
        if levels.len() != source.truncation() + 1
            || levels.iter().enumerate().any(|(n, l)| l.len() != source.len(n))
        {
            return Err(Error::Shape("map is not total on the source".into()));
        }
        for (n, l) in levels.iter().enumerate() {
            if let Some(&y) = l.iter().find(|&&y| y as usize >= target.len(n)) {
                return Err(Error::IndexOutOfRange {
                    what: "simplices",
                    index: y as usize,
                    len: target.len(n),
                });
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            levels,
        })
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let levels = (0..=x.truncation())
            .map(|n| (0..x.len(n) as u32).collect())
            .collect();
        SimplicialMap {
            source: x.clone(),
            target: x,
            levels,
        }
    }

    pub fn apply(&self, n: usize, x: u32) -> u32 {
        self.levels[n][x as usize]
    }

    /// Checks commutation with every face and degeneracy.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for n in 0..=s.truncation() {
            for x in 0..s.len(n) as u32 {
                let fx = self.apply(n, x);
                if n > 0 {
                    for i in 0..=n {
                        if t.face(n, i, fx) != self.apply(n - 1, s.face(n, i, x)) {
                            return Err(Error::SimplicialIdentity(format!(
                                "map does not commute with d{i} at level {n}"
                            )));
                        }
                    }
                }
                if n < s.truncation() {
                    for i in 0..=n {
                        if t.degen(n, i, fx) != self.apply(n + 1, s.degen(n, i, x)) {
                            return Err(Error::SimplicialIdentity(format!(
                                "map does not commute with s{i} at level {n}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if *first.target != *self.source {
            return Err(Error::Shape("maps are not composable".into()));
        }
        let levels = first
            .levels
            .iter()
            .enumerate()
            .map(|(n, l)| l.iter().map(|&x| self.apply(n, x)).collect())
            .collect();
        Ok(SimplicialMap {
            source: first.source.clone(),
            target: self.target.clone(),
            levels,
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.levels.iter().enumerate().all(|(n, l)| {
            l.len() == self.target.len(n) && {
                let mut seen = vec![false; l.len()];
                l.iter()
                    .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
            }
        })
    }
}

/// Levelwise product; an `n`-simplex has key `[x, y]` with `x ∈ X_n`,
/// `y ∈ Y_n` given by index.
pub fn product(x: &SimplicialSet, y: &SimplicialSet, bounds: Bounds) -> Result<SimplicialSet> {
    let top = x.truncation().min(y.truncation()).min(bounds.truncation);
    let mut keys = Vec::with_capacity(top + 1);
    for n in 0..=top {
        bounds.admit(n.to_string(), x.len(n).saturating_mul(y.len(n)))?;
        let mut level = Vec::with_capacity(x.len(n) * y.len(n));
        for a in 0..x.len(n) as u32 {
            for b in 0..y.len(n) as u32 {
                level.push(vec![a, b]);
            }
        }
        keys.push(level);
    }
    SimplicialSet::from_keys(
        keys,
        |n, i, k| vec![x.face(n, i, k[0]), y.face(n, i, k[1])],
        |n, i, k| vec![x.degen(n, i, k[0]), y.degen(n, i, k[1])],
    )
}
