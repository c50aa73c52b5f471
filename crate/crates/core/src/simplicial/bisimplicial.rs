use std::sync::Arc;

use super::nerve::{nerve, strings};
use super::set::{check_simplicial, Bounds, Level, SimplicialMap, SimplicialSet};
use crate::cat::{opposite, CatFunctor, Mor, Obj};
use crate::constructions::{s_category, SpanDiagram};
use crate::error::{Error, Result};

/// One cell `T_{pq}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cell {
    pub level: Level,
    /// `dh[i][x]`, into `T_{p,q-1}`.
    pub dh: Vec<Vec<u32>>,
    /// `dv[i][x]`, into `T_{p-1,q}`.
    pub dv: Vec<Vec<u32>>,
    /// `sh[i][x]`, into `T_{p,q+1}`.
    pub sh: Vec<Vec<u32>>,
    /// `sv[i][x]`, into `T_{p+1,q}`.
    pub sv: Vec<Vec<u32>>,
    pub h_degenerate: Vec<bool>,
    pub v_degenerate: Vec<bool>,
}

/// A bisimplicial set on the grid `0 ≤ p, q ≤ N`. Horizontal maps act on
/// `q`, vertical maps on `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSimplicialSet {
    truncation: usize,
    cells: Vec<Vec<Cell>>,
}

/// Keyed structure rules for [`BiSimplicialSet::from_keys`]; each closure
/// receives `(p, q, i, key)`.
pub(crate) struct BiRules<DH, DV, SH, SV> {
    pub dh: DH,
    pub dv: DV,
    pub sh: SH,
    pub sv: SV,
}

type Rule<'a> = &'a dyn Fn(usize, usize, usize, &[u32]) -> Vec<u32>;

impl BiSimplicialSet {
    pub(crate) fn from_keys<DH, DV, SH, SV>(
        keys: Vec<Vec<Vec<Vec<u32>>>>,
        rules: BiRules<DH, DV, SH, SV>,
    ) -> Result<Self>
    where
        DH: Fn(usize, usize, usize, &[u32]) -> Vec<u32>,
        DV: Fn(usize, usize, usize, &[u32]) -> Vec<u32>,
        SH: Fn(usize, usize, usize, &[u32]) -> Vec<u32>,
        SV: Fn(usize, usize, usize, &[u32]) -> Vec<u32>,
    {
        let top = keys.len().checked_sub(1).ok_or_else(|| {
            Error::Shape("a bisimplicial set needs cell (0, 0)".into())
        })?;
        if keys.iter().any(|row| row.len() != top + 1) {
            return Err(Error::Shape("bisimplicial grid must be square".into()));
        }
        let mut cells: Vec<Vec<Cell>> = keys
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|k| {
                        let level = Level::new(k)?;
                        let n = level.keys.len();
                        Ok(Cell {
                            level,
                            dh: Vec::new(),
                            dv: Vec::new(),
                            sh: Vec::new(),
                            sv: Vec::new(),
                            h_degenerate: vec![false; n],
                            v_degenerate: vec![false; n],
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let resolve = |cells: &Vec<Vec<Cell>>,
                       p: usize,
                       q: usize,
                       (tp, tq): (usize, usize),
                       count: usize,
                       rule: Rule<'_>,
                       what: &str|
         -> Result<Vec<Vec<u32>>> {
            let here = &cells[p][q].level;
            let there = &cells[tp][tq].level;
            (0..count)
                .map(|i| {
                    here.keys
                        .iter()
                        .map(|k| there.lookup(&rule(p, q, i, k), what))
                        .collect::<Result<Vec<_>>>()
                })
                .collect()
        };
        for p in 0..=top {
            for q in 0..=top {
                let dh = if q > 0 {
                    resolve(&cells, p, q, (p, q - 1), q + 1, &rules.dh, "horizontal face")?
                } else {
                    Vec::new()
                };
                let dv = if p > 0 {
                    resolve(&cells, p, q, (p - 1, q), p + 1, &rules.dv, "vertical face")?
                } else {
                    Vec::new()
                };
                let sh = if q < top {
                    resolve(&cells, p, q, (p, q + 1), q + 1, &rules.sh, "horizontal degeneracy")?
                } else {
                    Vec::new()
                };
                let sv = if p < top {
                    resolve(&cells, p, q, (p + 1, q), p + 1, &rules.sv, "vertical degeneracy")?
                } else {
                    Vec::new()
                };
                let cell = &mut cells[p][q];
                cell.dh = dh;
                cell.dv = dv;
                cell.sh = sh;
                cell.sv = sv;
            }
        }
        for p in 0..=top {
            for q in 0..=top {
                let hits: Vec<u32> = cells[p][q].sh.iter().flatten().copied().collect();
                for y in hits {
                    cells[p][q + 1].h_degenerate[y as usize] = true;
                }
                let hits: Vec<u32> = cells[p][q].sv.iter().flatten().copied().collect();
                for y in hits {
                    cells[p + 1][q].v_degenerate[y as usize] = true;
                }
            }
        }
        Ok(BiSimplicialSet {
            truncation: top,
            cells,
        })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self, p: usize, q: usize) -> usize {
        self.cells[p][q].level.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len(0, 0) == 0
    }

    pub fn key(&self, p: usize, q: usize, x: u32) -> &[u32] {
        &self.cells[p][q].level.keys[x as usize]
    }

    pub fn lookup(&self, p: usize, q: usize, key: &[u32]) -> Option<u32> {
        self.cells[p][q].level.index.get(key).copied()
    }

    pub fn dh(&self, p: usize, q: usize, i: usize, x: u32) -> u32 {
        self.cells[p][q].dh[i][x as usize]
    }

    pub fn dv(&self, p: usize, q: usize, i: usize, x: u32) -> u32 {
        self.cells[p][q].dv[i][x as usize]
    }

    pub fn sh(&self, p: usize, q: usize, i: usize, x: u32) -> u32 {
        self.cells[p][q].sh[i][x as usize]
    }

    pub fn sv(&self, p: usize, q: usize, i: usize, x: u32) -> u32 {
        self.cells[p][q].sv[i][x as usize]
    }

    pub fn is_h_degenerate(&self, p: usize, q: usize, x: u32) -> bool {
        self.cells[p][q].h_degenerate[x as usize]
    }

    pub fn is_v_degenerate(&self, p: usize, q: usize, x: u32) -> bool {
        self.cells[p][q].v_degenerate[x as usize]
    }

    /// Cells nondegenerate in both directions.
    pub fn nondegenerate(&self, p: usize, q: usize) -> impl Iterator<Item = u32> + '_ {
        let c = &self.cells[p][q];
        (0..c.level.keys.len() as u32)
            .filter(move |&x| !c.h_degenerate[x as usize] && !c.v_degenerate[x as usize])
    }

    /// Checks both families of simplicial identities and all mixed
    /// commutations inside the grid.
    pub fn check_identities(&self) -> Result<()> {
        let top = self.truncation;
        for p in 0..=top {
            check_simplicial(
                top,
                |q| self.len(p, q),
                |q, i, x| self.dh(p, q, i, x),
                |q, i, x| self.sh(p, q, i, x),
                &format!("horizontal row p={p}: "),
            )?;
        }
        for q in 0..=top {
            check_simplicial(
                top,
                |p| self.len(p, q),
                |p, i, x| self.dv(p, q, i, x),
                |p, i, x| self.sv(p, q, i, x),
                &format!("vertical column q={q}: "),
            )?;
        }
        let fail = |what: String| Err(Error::SimplicialIdentity(what));
        for p in 0..=top {
            for q in 0..=top {
                for x in 0..self.len(p, q) as u32 {
                    for i in 0..=q {
                        for j in 0..=p {
                            if q > 0 && p > 0 {
                                let a = self.dv(p, q - 1, j, self.dh(p, q, i, x));
                                let b = self.dh(p - 1, q, i, self.dv(p, q, j, x));
                                if a != b {
                                    return fail(format!("dh{i} dv{j} at ({p},{q})"));
                                }
                            }
                            if q > 0 && p < top {
                                let a = self.sv(p, q - 1, j, self.dh(p, q, i, x));
                                let b = self.dh(p + 1, q, i, self.sv(p, q, j, x));
                                if a != b {
                                    return fail(format!("dh{i} sv{j} at ({p},{q})"));
                                }
                            }
                            if q < top && p > 0 {
                                let a = self.dv(p, q + 1, j, self.sh(p, q, i, x));
                                let b = self.sh(p - 1, q, i, self.dv(p, q, j, x));
                                if a != b {
                                    return fail(format!("sh{i} dv{j} at ({p},{q})"));
                                }
                            }
                            if q < top && p < top {
                                let a = self.sv(p, q + 1, j, self.sh(p, q, i, x));
                                let b = self.sh(p + 1, q, i, self.sv(p, q, j, x));
                                if a != b {
                                    return fail(format!("sh{i} sv{j} at ({p},{q})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `n ↦ T_{nn}` with `d_i = d_i^h d_i^v` and `s_i = s_i^h s_i^v`.
pub fn diagonal(t: &BiSimplicialSet) -> Result<SimplicialSet> {
    let top = t.truncation();
    let keys = (0..=top)
        .map(|n| t.cells[n][n].level.keys.clone())
        .collect();
    SimplicialSet::from_keys(
        keys,
        |n, i, k| {
            let x = t.lookup(n, n, k).expect("diagonal key");
            let y = t.dh(n - 1, n, i, t.dv(n, n, i, x));
            t.key(n - 1, n - 1, y).to_vec()
        },
        |n, i, k| {
            let x = t.lookup(n, n, k).expect("diagonal key");
            let y = t.sh(n + 1, n, i, t.sv(n, n, i, x));
            t.key(n + 1, n + 1, y).to_vec()
        },
    )
}

/// `T_{pq} = X_p`, horizontal maps the identity.
pub fn constant_in_q(x: &SimplicialSet) -> Result<BiSimplicialSet> {
    let top = x.truncation();
    let keys = (0..=top)
        .map(|p| (0..=top).map(|_| x.levels[p].keys.clone()).collect())
        .collect();
    let idx = |p: usize, k: &[u32]| x.lookup(p, k).expect("constant key");
    BiSimplicialSet::from_keys(
        keys,
        BiRules {
            dh: |_, _, _, k: &[u32]| k.to_vec(),
            sh: |_, _, _, k: &[u32]| k.to_vec(),
            dv: |p, _, i, k: &[u32]| x.key(p - 1, x.face(p, i, idx(p, k))).to_vec(),
            sv: |p, _, i, k: &[u32]| x.key(p + 1, x.degen(p, i, idx(p, k))).to_vec(),
        },
    )
}

/// `T_{pq} = X_p × Y_q`; keys are `[x, y]` by index.
pub fn external_product(x: &SimplicialSet, y: &SimplicialSet, bounds: Bounds) -> Result<BiSimplicialSet> {
    let top = x.truncation().min(y.truncation()).min(bounds.truncation);
    let mut keys = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let mut row = Vec::with_capacity(top + 1);
        for q in 0..=top {
            bounds.admit(format!("{p},{q}"), x.len(p).saturating_mul(y.len(q)))?;
            let mut cell = Vec::with_capacity(x.len(p) * y.len(q));
            for a in 0..x.len(p) as u32 {
                for b in 0..y.len(q) as u32 {
                    cell.push(vec![a, b]);
                }
            }
            row.push(cell);
        }
        keys.push(row);
    }
    BiSimplicialSet::from_keys(
        keys,
        BiRules {
            dh: |_, q, i, k: &[u32]| vec![k[0], y.face(q, i, k[1])],
            sh: |_, q, i, k: &[u32]| vec![k[0], y.degen(q, i, k[1])],
            dv: |p, _, i, k: &[u32]| vec![x.face(p, i, k[0]), k[1]],
            sv: |p, _, i, k: &[u32]| vec![x.degen(p, i, k[0]), k[1]],
        },
    )
}

/// Splits a `D(f)` key into the `Y`-chain `κ`, `η`, `x_0` and the `X`-string
/// `ν`.
fn split(p: usize, key: &[u32]) -> (&[u32], u32, u32, &[u32]) {
    (&key[..p], key[p], key[p + 1], &key[p + 2..])
}

fn join(kappa: &[u32], eta: u32, x0: u32, nu: &[u32]) -> Vec<u32> {
    let mut k = Vec::with_capacity(kappa.len() + nu.len() + 2);
    k.extend_from_slice(kappa);
    k.push(eta);
    k.push(x0);
    k.extend_from_slice(nu);
    k
}

/// `D(f)_{pq}`: a chain `y_p → ... → y_0` in `Y` (stored as `κ_1 .. κ_p`
/// with `κ_j: y_j → y_{j-1}`), an arrow `η: y_0 → f(x_0)`, and a string
/// `x_0 → ... → x_q` in `X`. Keys are `[κ.., η, x_0, ν..]`.
pub fn bisimplicial_d(f: &CatFunctor, bounds: impl Into<Bounds>) -> Result<BiSimplicialSet> {
    let bounds = bounds.into();
    let (x, y) = (f.dom(), f.cod());
    let top = bounds.truncation;
    let y_op = opposite(y)?;
    let ychains = strings(&y_op, bounds)?;
    let xstrings = strings(x, bounds)?;
    // chains grouped by y_0, strings grouped by x_0
    let chain_start = |p: usize, k: &[u32]| -> Obj {
        if p == 0 {
            Obj(k[0])
        } else {
            y.tgt(Mor(k[0]))
        }
    };
    let string_start = |q: usize, k: &[u32]| -> Obj {
        if q == 0 {
            Obj(k[0])
        } else {
            x.src(Mor(k[0]))
        }
    };
    let mut keys = Vec::with_capacity(top + 1);
    for (p, chains) in ychains.iter().enumerate() {
        let mut by_start: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); y.object_count()];
        for k in chains {
            by_start[chain_start(p, k).idx()].push(k);
        }
        let mut row = Vec::with_capacity(top + 1);
        for (q, xs) in xstrings.iter().enumerate() {
            let mut over: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); y.object_count()];
            for k in xs {
                over[f.obj(string_start(q, k)).idx()].push(k);
            }
            let size: usize = y
                .morphisms()
                .map(|eta| by_start[y.src(eta).idx()].len() * over[y.tgt(eta).idx()].len())
                .sum();
            bounds.admit(format!("{p},{q}"), size)?;
            let mut cell = Vec::with_capacity(size);
            for chain in chains {
                let y0 = chain_start(p, chain);
                let kappa: &[u32] = if p == 0 { &[] } else { chain };
                for &eta in y.outgoing(y0) {
                    for s in &over[y.tgt(eta).idx()] {
                        let x0 = string_start(q, s);
                        let nu: &[u32] = if q == 0 { &[] } else { s };
                        cell.push(join(kappa, eta.0, x0.0, nu));
                    }
                }
            }
            row.push(cell);
        }
        keys.push(row);
    }
    let y_vertex = |p: usize, key: &[u32], i: usize| -> Obj {
        let (kappa, eta, _, _) = split(p, key);
        if i == 0 {
            y.src(Mor(eta))
        } else {
            y.src(Mor(kappa[i - 1]))
        }
    };
    let x_vertex = |p: usize, key: &[u32], i: usize| -> Obj {
        let (_, _, x0, nu) = split(p, key);
        if i == 0 {
            Obj(x0)
        } else {
            x.tgt(Mor(nu[i - 1]))
        }
    };
    BiSimplicialSet::from_keys(
        keys,
        BiRules {
            dh: |p, q, i, key: &[u32]| {
                let (kappa, eta, x0, nu) = split(p, key);
                let mut nu = nu.to_vec();
                let (mut eta, mut x0) = (eta, x0);
                if i == 0 {
                    let first = Mor(nu.remove(0));
                    eta = y.compose(f.mor(first), Mor(eta)).0;
                    x0 = x.tgt(first).0;
                } else if i == q {
                    nu.pop();
                } else {
                    nu[i - 1] = x.compose(Mor(nu[i]), Mor(nu[i - 1])).0;
                    nu.remove(i);
                }
                join(kappa, eta, x0, &nu)
            },
            dv: |p, _, i, key: &[u32]| {
                let (kappa, eta, x0, nu) = split(p, key);
                let mut kappa = kappa.to_vec();
                let mut eta = eta;
                if i == 0 {
                    let first = Mor(kappa.remove(0));
                    eta = y.compose(Mor(eta), first).0;
                } else if i == p {
                    kappa.pop();
                } else {
                    kappa[i - 1] = y.compose(Mor(kappa[i - 1]), Mor(kappa[i])).0;
                    kappa.remove(i);
                }
                join(&kappa, eta, x0, nu)
            },
            sh: |p, _, i, key: &[u32]| {
                let e = x.ident(x_vertex(p, key, i)).0;
                let (kappa, eta, x0, nu) = split(p, key);
                let mut nu = nu.to_vec();
                nu.insert(i, e);
                join(kappa, eta, x0, &nu)
            },
            sv: |p, _, i, key: &[u32]| {
                let e = y.ident(y_vertex(p, key, i)).0;
                let (kappa, eta, x0, nu) = split(p, key);
                let mut kappa = kappa.to_vec();
                kappa.insert(i, e);
                join(&kappa, eta, x0, nu)
            },
        },
    )
}

/// Maps between bisimplicial sets, cell by cell.
#[derive(Clone, Debug)]
pub struct BiSimplicialMap {
    pub source: Arc<BiSimplicialSet>,
    pub target: Arc<BiSimplicialSet>,
    pub cells: Vec<Vec<Vec<u32>>>,
}

impl BiSimplicialMap {
    pub fn apply(&self, p: usize, q: usize, x: u32) -> u32 {
        self.cells[p][q][x as usize]
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let top = s.truncation();
        let fail = |what: String| Err(Error::SimplicialIdentity(what));
        for p in 0..=top {
            for q in 0..=top {
                for x in 0..s.len(p, q) as u32 {
                    let fx = self.apply(p, q, x);
                    for i in 0..=q {
                        if q > 0 && t.dh(p, q, i, fx) != self.apply(p, q - 1, s.dh(p, q, i, x)) {
                            return fail(format!("map and dh{i} at ({p},{q})"));
                        }
                        if q < top && t.sh(p, q, i, fx) != self.apply(p, q + 1, s.sh(p, q, i, x)) {
                            return fail(format!("map and sh{i} at ({p},{q})"));
                        }
                    }
                    for i in 0..=p {
                        if p > 0 && t.dv(p, q, i, fx) != self.apply(p - 1, q, s.dv(p, q, i, x)) {
                            return fail(format!("map and dv{i} at ({p},{q})"));
                        }
                        if p < top && t.sv(p, q, i, fx) != self.apply(p + 1, q, s.sv(p, q, i, x)) {
                            return fail(format!("map and sv{i} at ({p},{q})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The induced map of diagonals, between the given diagonals.
    pub fn diagonal_between(
        &self,
        source: &Arc<SimplicialSet>,
        target: &Arc<SimplicialSet>,
    ) -> Result<SimplicialMap> {
        let levels = (0..=self.source.truncation())
            .map(|n| self.cells[n][n].clone())
            .collect();
        SimplicialMap::new(source.clone(), target.clone(), levels)
    }
}

/// The projection `β: D(f) → NY^op` (constant in `q`), forgetting `η` and
/// the `X`-string.
pub fn projection_beta(f: &CatFunctor, bounds: impl Into<Bounds>) -> Result<BiSimplicialMap> {
    let bounds = bounds.into();
    let d = Arc::new(bisimplicial_d(f, bounds)?);
    let y_op = opposite(f.cod())?;
    let target = Arc::new(constant_in_q(&nerve(&y_op, bounds)?)?);
    projection_beta_between(f, &d, &target)
}

/// As [`projection_beta`], into a given `constant_in_q(N(Y^op))`.
pub fn projection_beta_between(
    f: &CatFunctor,
    d: &Arc<BiSimplicialSet>,
    target: &Arc<BiSimplicialSet>,
) -> Result<BiSimplicialMap> {
    let y = f.cod();
    let top = d.truncation();
    let mut cells = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let mut row = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let cell = (0..d.len(p, q) as u32)
                .map(|x| {
                    let (kappa, eta, _, _) = split(p, d.key(p, q, x));
                    let key = if p == 0 {
                        vec![y.src(Mor(eta)).0]
                    } else {
                        kappa.to_vec()
                    };
                    target
                        .lookup(p, q, &key)
                        .ok_or_else(|| Error::Shape("target is not N(Y^op)".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            row.push(cell);
        }
        cells.push(row);
    }
    let map = BiSimplicialMap {
        source: d.clone(),
        target: target.clone(),
        cells,
    };
    map.check()?;
    Ok(map)
}

/// The levelwise bijection `dD(f) ≅ N(S(f))`.
#[derive(Clone, Debug)]
pub struct DiagonalIso {
    pub span: SpanDiagram,
    pub d: Arc<BiSimplicialSet>,
    pub diagonal: Arc<SimplicialSet>,
    pub nerve_s: Arc<SimplicialSet>,
    pub map: SimplicialMap,
}

/// Builds `dD(f)` and `N(S(f))`, sends `(κ, η, ν)` to the string of `S(f)`
/// starting at `(η, x_0)` with steps `((f ν_j, κ_j), ν_j)`, and checks the
/// result is a bijective simplicial map.
pub fn check_diag_equals_nerve_s(
    f: &CatFunctor,
    bounds: impl Into<Bounds>,
) -> Result<DiagonalIso> {
    let bounds = bounds.into();
    let span = s_category(f)?;
    let d = Arc::new(bisimplicial_d(f, bounds)?);
    let diagonal = Arc::new(self::diagonal(&d)?);
    let nerve_s = Arc::new(nerve(&span.s, bounds)?);
    let map = diagonal_to_nerve_s(f, &span, &diagonal, &nerve_s)?;
    map.check()?;
    if !map.is_bijective() {
        let sizes = (diagonal.sizes(), nerve_s.sizes());
        return Err(Error::Construction(format!(
            "diagonal and N(S(f)) do not biject: {sizes:?}"
        )));
    }
    Ok(DiagonalIso {
        span,
        d,
        diagonal,
        nerve_s,
        map,
    })
}

fn diagonal_to_nerve_s(
    f: &CatFunctor,
    span: &SpanDiagram,
    diagonal: &Arc<SimplicialSet>,
    nerve_s: &Arc<SimplicialSet>,
) -> Result<SimplicialMap> {
    let y = f.cod();
    let tw = &span.twisted;
    let s = &span.s;
    let mut squares = std::collections::HashMap::new();
    for m in tw.cat.morphisms() {
        let g = Mor(tw.cat.src(m).0);
        squares.insert((g, tw.cod_nat.mor(m), tw.dom_nat.mor(m)), m);
    }
    let mut s_objs = std::collections::HashMap::new();
    for o in s.objects() {
        s_objs.insert((span.f_hat.obj(o), span.q_f.obj(o)), o);
    }
    let mut s_mors = std::collections::HashMap::new();
    for m in s.morphisms() {
        s_mors.insert((span.f_hat.mor(m), span.q_f.mor(m)), m);
    }
    let missing = || Error::Construction("diagonal simplex has no image in N(S(f))".into());
    let levels = (0..=diagonal.truncation())
        .map(|n| {
            (0..diagonal.len(n) as u32)
                .map(|x| {
                    let (kappa, eta, x0, nu) = split(n, diagonal.key(n, x));
                    let key: Vec<u32> = if n == 0 {
                        let o = s_objs.get(&(Obj(eta), Obj(x0))).ok_or_else(missing)?;
                        vec![o.0]
                    } else {
                        let mut g = Mor(eta);
                        let mut out = Vec::with_capacity(n);
                        for j in 0..n {
                            let (k, v) = (Mor(kappa[j]), Mor(nu[j]));
                            let h = f.mor(v);
                            let sq = squares.get(&(g, h, k)).ok_or_else(missing)?;
                            let m = s_mors.get(&(*sq, v)).ok_or_else(missing)?;
                            out.push(m.0);
                            g = y.compose(h, y.compose(g, k));
                        }
                        out
                    };
                    nerve_s.lookup(n, &key).ok_or_else(missing)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(diagonal.clone(), nerve_s.clone(), levels)
}
