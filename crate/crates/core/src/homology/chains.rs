use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use crate::error::{Error, Result};
use crate::simplicial::{BiSimplicialSet, SimplicialHomotopy, SimplicialMap, SimplicialSet};

/// A bounded chain complex of free abelian groups in degrees `0..=top`.
///
/// `d[n]: C_n → C_{n-1}`; `d[0]` is the zero map to the zero group.
/// `basis[n][k]` labels the `k`-th generator in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    top: usize,
    d: Vec<IntMatrix>,
    basis: Vec<Vec<u64>>,
}

impl ChainComplex {
    /// Checks shapes and `∂∂ = 0`.
    pub fn new(d: Vec<IntMatrix>, basis: Vec<Vec<u64>>) -> Result<Self> {
        let top = d
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Shape("a chain complex needs degree 0".into()))?;
        if basis.len() != d.len() {
            return Err(Error::Shape("one basis per degree".into()));
        }
        for n in 0..=top {
            let below = if n == 0 { 0 } else { basis[n - 1].len() };
            if d[n].cols() != basis[n].len() || d[n].rows() != below {
                return Err(Error::Shape(format!("boundary in degree {n} has the wrong shape")));
            }
        }
        let c = ChainComplex { top, d, basis };
        c.check_nilpotent()?;
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank(&self, n: usize) -> usize {
        self.basis[n].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.d[n]
    }

    pub fn basis(&self, n: usize) -> &[u64] {
        &self.basis[n]
    }

    fn check_nilpotent(&self) -> Result<()> {
        for n in 2..=self.top {
            if !self.d[n - 1].mul(&self.d[n])?.is_zero() {
                return Err(Error::BoundaryNotNilpotent(n));
            }
        }
        Ok(())
    }

    /// The same complex with every basis reordered by a seeded shuffle.
    pub fn permuted(&self, seed: u64) -> ChainComplex {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<usize>> = self
            .basis
            .iter()
            .map(|b| {
                let mut p: Vec<usize> = (0..b.len()).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let d = (0..=self.top)
            .map(|n| {
                let rows: &[usize] = if n == 0 { &[] } else { &perms[n - 1] };
                self.d[n].permuted(rows, &perms[n])
            })
            .collect();
        let basis = self
            .basis
            .iter()
            .zip(&perms)
            .map(|(b, p)| {
                let mut out = vec![0; b.len()];
                for (old, &new) in p.iter().enumerate() {
                    out[new] = b[old];
                }
                out
            })
            .collect();
        ChainComplex {
            top: self.top,
            d,
            basis,
        }
    }

    /// Position of each basis label, per degree.
    pub fn positions(&self) -> Vec<HashMap<u64, usize>> {
        self.basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &l)| (l, i)).collect())
            .collect()
    }
}

fn sign(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Normalized chains: nondegenerate simplices, `∂ = Σ (−1)^i d_i`, faces that
/// land on degenerate simplices dropped. Basis labels are simplex indices.
pub fn normalized_chains(x: &SimplicialSet) -> Result<ChainComplex> {
    let top = x.truncation();
    let basis: Vec<Vec<u64>> = (0..=top)
        .map(|n| x.nondegenerate(n).map(u64::from).collect())
        .collect();
    let pos: Vec<HashMap<u32, u32>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, &s)| (s as u32, i as u32)).collect())
        .collect();
    let mut d = vec![IntMatrix::zeros(0, basis[0].len())];
    for n in 1..=top {
        let cols = basis[n]
            .iter()
            .map(|&s| {
                (0..=n)
                    .filter_map(|i| {
                        let f = x.face(n, i, s as u32);
                        pos[n - 1].get(&f).map(|&r| (r, sign(i)))
                    })
                    .collect()
            })
            .collect();
        d.push(IntMatrix::from_columns(basis[n - 1].len(), cols));
    }
    ChainComplex::new(d, basis)
}

/// Torsion coefficients render as decimal strings so that arbitrarily large
/// values survive serialization.
fn big_list<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

/// Homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "big_list")]
    pub torsion: Vec<BigInt>,
    /// False in the top degree, where boundaries from above are missing.
    pub certified: bool,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// `Z^b ⊕ Z/t₁ ⊕ ...`, or `0`.
    pub fn group(&self) -> String {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub truncation: usize,
    /// Highest degree whose value is exact.
    pub certified_through: Option<usize>,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn degree(&self, n: usize) -> &DegreeHomology {
        &self.degrees[n]
    }

    /// Groups rendered per degree, certified degrees only.
    pub fn groups(&self) -> Vec<String> {
        self.degrees
            .iter()
            .filter(|d| d.certified)
            .map(DegreeHomology::group)
            .collect()
    }

    /// True when the certified degrees `0..=through` agree.
    pub fn agrees_with(&self, other: &HomologyReport, through: usize) -> bool {
        (0..=through).all(|n| {
            n < self.degrees.len()
                && n < other.degrees.len()
                && self.degrees[n].betti == other.degrees[n].betti
                && self.degrees[n].torsion == other.degrees[n].torsion
        })
    }
}

thread_local! {
    static BASIS_SHUFFLE: std::cell::Cell<Option<u64>> = const { std::cell::Cell::new(None) };
}

/// Makes every later [`homology`] call on this thread reorder the chain
/// bases with the given seed first. Results must not change; this exists to
/// test that they do not.
pub fn set_basis_shuffle(seed: Option<u64>) {
    BASIS_SHUFFLE.with(|s| s.set(seed));
}

/// `H_n = ker ∂_n / im ∂_{n+1}` from invariant factors; degrees below the
/// top are certified.
pub fn homology(c: &ChainComplex) -> HomologyReport {
    if let Some(seed) = BASIS_SHUFFLE.with(|s| s.get()) {
        return homology_in_order(&c.permuted(seed));
    }
    homology_in_order(c)
}

fn homology_in_order(c: &ChainComplex) -> HomologyReport {
    let top = c.top();
    let factors: Vec<Vec<BigInt>> = (0..=top)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                invariant_factors(c.boundary(n))
            }
        })
        .collect();
    let degrees = (0..=top)
        .map(|n| {
            let r_here = factors[n].len();
            let (r_above, torsion) = if n < top {
                let f = &factors[n + 1];
                (f.len(), f.iter().filter(|t| !t.is_one()).cloned().collect())
            } else {
                (0, Vec::new())
            };
            DegreeHomology {
                degree: n,
                betti: c.rank(n) - r_here - r_above,
                torsion,
                certified: n < top,
            }
        })
        .collect();
    HomologyReport {
        truncation: top,
        certified_through: top.checked_sub(1),
        degrees,
    }
}

/// Per-degree matrices `φ_n: C_n → D_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapData {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    pub maps: Vec<IntMatrix>,
}

impl ChainMapData {
    /// Checks shapes and `∂φ = φ∂` in every degree.
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        maps: Vec<IntMatrix>,
    ) -> Result<Self> {
        let top = source.top().min(target.top());
        if maps.len() != top + 1 {
            return Err(Error::Shape("one matrix per degree".into()));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.cols() != source.rank(n) || m.rows() != target.rank(n) {
                return Err(Error::Shape(format!("chain map in degree {n} has the wrong shape")));
            }
        }
        for n in 1..=top {
            let lhs = target.boundary(n).mul(&maps[n])?;
            let rhs = maps[n - 1].mul(source.boundary(n))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap(n));
            }
        }
        Ok(ChainMapData {
            source,
            target,
            maps,
        })
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let maps = (0..=c.top()).map(|n| IntMatrix::identity(c.rank(n))).collect();
        ChainMapData {
            source: c.clone(),
            target: c,
            maps,
        }
    }
}

/// The chain map induced by a simplicial map between the normalized chains
/// of its source and target (built by [`normalized_chains`]).
pub fn chain_map_between(
    f: &SimplicialMap,
    source: &Arc<ChainComplex>,
    target: &Arc<ChainComplex>,
) -> Result<ChainMapData> {
    let tpos = target.positions();
    let maps = (0..=f.source.truncation())
        .map(|n| {
            let cols = source
                .basis(n)
                .iter()
                .map(|&s| {
                    let y = f.apply(n, s as u32) as u64;
                    tpos[n]
                        .get(&y)
                        .map(|&r| vec![(r as u32, BigInt::one())])
                        .unwrap_or_default()
                })
                .collect();
            IntMatrix::from_columns(target.rank(n), cols)
        })
        .collect();
    ChainMapData::new(source.clone(), target.clone(), maps)
}

pub fn chain_map(f: &SimplicialMap) -> Result<ChainMapData> {
    let source = Arc::new(normalized_chains(&f.source)?);
    let target = Arc::new(normalized_chains(&f.target)?);
    chain_map_between(f, &source, &target)
}

/// `cone_n = D_n ⊕ C_{n-1}` with `∂(d, c) = (∂d + φc, −∂c)`.
pub fn mapping_cone(phi: &ChainMapData) -> Result<ChainComplex> {
    let (c, d) = (&phi.source, &phi.target);
    let top = phi.top();
    let mut mats = Vec::with_capacity(top + 1);
    let mut basis = Vec::with_capacity(top + 1);
    // labels: target generators first, then shifted source generators
    let label = |side: u64, i: usize| (side << 62) | i as u64;
    for n in 0..=top {
        let c_below = if n == 0 { 0 } else { c.rank(n - 1) };
        let mut b: Vec<u64> = (0..d.rank(n)).map(|i| label(0, i)).collect();
        b.extend((0..c_below).map(|i| label(1, i)));
        basis.push(b);
        if n == 0 {
            mats.push(IntMatrix::zeros(0, d.rank(0)));
            continue;
        }
        let rows = d.rank(n - 1) + if n >= 2 { c.rank(n - 2) } else { 0 };
        let cols = d.rank(n) + c_below;
        let mut parts = vec![(0, 0, d.boundary(n), 1), (0, d.rank(n), &phi.maps[n - 1], 1)];
        if n >= 2 {
            parts.push((d.rank(n - 1), d.rank(n), c.boundary(n - 1), -1));
        }
        mats.push(IntMatrix::blocks(rows, cols, &parts));
    }
    ChainComplex::new(mats, basis)
}

/// What an acyclic cone through degree `d` certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub holds: bool,
    pub through_degree: usize,
    /// Cone homology in degrees `0..=through_degree`.
    pub cone: Vec<DegreeHomology>,
    pub guarantee: String,
}

/// True iff `H_k(cone) = 0` for `k ≤ d`, i.e. `H_k` is an isomorphism for
/// `k < d` and onto in degree `d`.
pub fn is_homology_equivalence(phi: &ChainMapData, through: usize) -> Result<EquivalenceVerdict> {
    let top = phi.top();
    if through + 1 > top {
        return Err(Error::TruncationTooSmall {
            truncation: top,
            reason: format!("degree {through} is not certified below the top"),
        });
    }
    let cone = homology(&mapping_cone(phi)?);
    let degrees: Vec<DegreeHomology> = cone.degrees[..=through].to_vec();
    let holds = degrees.iter().all(DegreeHomology::is_zero);
    let guarantee = if through == 0 {
        "H_0 is onto".to_string()
    } else {
        format!(
            "H_k is an isomorphism for k <= {} and onto in degree {through}",
            through - 1
        )
    };
    Ok(EquivalenceVerdict {
        holds,
        through_degree: through,
        cone: degrees,
        guarantee,
    })
}

/// As [`is_homology_equivalence`] for a simplicial map.
pub fn simplicial_homology_equivalence(
    f: &SimplicialMap,
    through: usize,
) -> Result<EquivalenceVerdict> {
    is_homology_equivalence(&chain_map(f)?, through)
}

/// Connected components of a simplicial set, as a component index per
/// vertex.
pub fn components(x: &SimplicialSet) -> Vec<usize> {
    let n = x.len(0);
    let mut uf = UnionFind::<usize>::new(n);
    if x.truncation() >= 1 {
        for e in 0..x.len(1) as u32 {
            uf.union(x.face(1, 0, e) as usize, x.face(1, 1, e) as usize);
        }
    }
    let labels = uf.into_labeling();
    let mut renumber = HashMap::new();
    labels
        .into_iter()
        .map(|l| {
            let k = renumber.len();
            *renumber.entry(l).or_insert(k)
        })
        .collect()
}

/// True when `f` induces a bijection on connected components.
pub fn pi0_bijection(f: &SimplicialMap) -> bool {
    let (cs, ct) = (components(&f.source), components(&f.target));
    let ns = cs.iter().max().map_or(0, |m| m + 1);
    let nt = ct.iter().max().map_or(0, |m| m + 1);
    if ns != nt {
        return false;
    }
    let mut image = vec![None; ns];
    let mut hit = vec![false; nt];
    for v in 0..f.source.len(0) {
        let t = ct[f.apply(0, v as u32) as usize];
        match image[cs[v]] {
            None => {
                if hit[t] {
                    return false;
                }
                hit[t] = true;
                image[cs[v]] = Some(t);
            }
            Some(prev) if prev != t => return false,
            Some(_) => {}
        }
    }
    hit.iter().all(|&h| h)
}

/// Total complex on cells nondegenerate in both directions, with
/// `∂ = ∂^v + (−1)^p ∂^h` on bidegree `(p, q)`.
pub fn total_complex(t: &BiSimplicialSet) -> Result<ChainComplex> {
    let top = t.truncation();
    let label = |p: usize, x: u32| ((p as u64) << 32) | u64::from(x);
    let mut basis: Vec<Vec<u64>> = Vec::with_capacity(top + 1);
    let mut pos: Vec<HashMap<u64, u32>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut b = Vec::new();
        for p in 0..=n {
            b.extend(t.nondegenerate(p, n - p).map(|x| label(p, x)));
        }
        pos.push(b.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect());
        basis.push(b);
    }
    let mut d = vec![IntMatrix::zeros(0, basis[0].len())];
    for n in 1..=top {
        let cols = basis[n]
            .iter()
            .map(|&l| {
                let (p, x) = ((l >> 32) as usize, l as u32);
                let q = n - p;
                let mut col = Vec::new();
                if p > 0 {
                    for i in 0..=p {
                        let y = t.dv(p, q, i, x);
                        if let Some(&r) = pos[n - 1].get(&label(p - 1, y)) {
                            col.push((r, sign(i)));
                        }
                    }
                }
                if q > 0 {
                    for i in 0..=q {
                        let y = t.dh(p, q, i, x);
                        if let Some(&r) = pos[n - 1].get(&label(p, y)) {
                            col.push((r, sign(i + p)));
                        }
                    }
                }
                col
            })
            .collect();
        d.push(IntMatrix::from_columns(basis[n - 1].len(), cols));
    }
    ChainComplex::new(d, basis)
}

/// Matrices `h_n: C_n(X) → C_{n+1}(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopyData {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    pub h: Vec<IntMatrix>,
}

impl ChainHomotopyData {
    /// Degrees `n` in which `∂h + h∂` is defined on `C_n`.
    pub fn degrees(&self) -> usize {
        self.h.len()
    }

    /// Checks `∂_{n+1} h_n + h_{n-1} ∂_n = φ_n − ψ_n` for every `n` below
    /// the number of homotopy matrices; returns the first failing degree.
    pub fn check(&self, phi: &ChainMapData, psi: &ChainMapData) -> Result<Option<usize>> {
        for n in 0..self.h.len() {
            let mut lhs = self.target.boundary(n + 1).mul(&self.h[n])?;
            if n > 0 {
                lhs = lhs.add(&self.h[n - 1].mul(self.source.boundary(n))?)?;
            }
            let rhs = phi.maps[n].sub(&psi.maps[n])?;
            if lhs != rhs {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// True when every `h_n` sends generators over each base point to
    /// generators over the same point; `over_src[n][k]` and `over_tgt[n][k]`
    /// give the base point of a generator.
    pub fn respects(&self, over_src: &[Vec<u32>], over_tgt: &[Vec<u32>]) -> bool {
        self.h.iter().enumerate().all(|(n, m)| {
            (0..m.cols()).all(|c| {
                m.column(c)
                    .iter()
                    .all(|(r, _)| over_tgt[n + 1][*r as usize] == over_src[n][c])
            })
        })
    }
}

/// Prism operator: `h(σ) = Σ_j (−1)^j H(s_j σ, τ_j)`, where `τ_j` has its
/// first `j + 1` vertices at 0. Satisfies `∂h + h∂ = H₁ − H₀` on chains
/// of degree below the truncation.
pub fn chain_homotopy_between(
    hom: &SimplicialHomotopy,
    source: &Arc<ChainComplex>,
    target: &Arc<ChainComplex>,
) -> Result<ChainHomotopyData> {
    let top = hom.truncation();
    if top == 0 {
        return Err(Error::TruncationTooSmall {
            truncation: top,
            reason: "a chain homotopy needs level 1".into(),
        });
    }
    let x = &hom.base;
    let tpos = target.positions();
    let mut h = Vec::with_capacity(top);
    for n in 0..top {
        let cols = source
            .basis(n)
            .iter()
            .map(|&s| {
                let mut col = Vec::new();
                for j in 0..=n {
                    let sj = x.degen(n, j, s as u32);
                    let tau = hom.interval_simplex(n + 1, j + 1);
                    let y = hom.at(n + 1, sj, tau) as u64;
                    if let Some(&r) = tpos[n + 1].get(&y) {
                        col.push((r as u32, sign(j)));
                    }
                }
                col
            })
            .collect();
        h.push(IntMatrix::from_columns(target.rank(n + 1), cols));
    }
    Ok(ChainHomotopyData {
        source: source.clone(),
        target: target.clone(),
        h,
    })
}

/// Everything needed to confirm a simplicial homotopy at chain level.
#[derive(Clone, Debug)]
pub struct HomotopyCheck {
    pub h: ChainHomotopyData,
    pub start: ChainMapData,
    pub end: ChainMapData,
    /// First degree where `∂h + h∂ = H₁ − H₀` fails.
    pub failure: Option<usize>,
}

impl HomotopyCheck {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn chain_homotopy_from_simplicial(hom: &SimplicialHomotopy) -> Result<HomotopyCheck> {
    let source = Arc::new(normalized_chains(&hom.base)?);
    let target = Arc::new(normalized_chains(hom.target())?);
    let h = chain_homotopy_between(hom, &source, &target)?;
    let start = chain_map_between(&hom.endpoint(0)?, &source, &target)?;
    let end = chain_map_between(&hom.endpoint(1)?, &source, &target)?;
    let failure = h.check(&end, &start)?;
    Ok(HomotopyCheck {
        h,
        start,
        end,
        failure,
    })
}

/// Betti numbers and torsion compared as groups, degree by degree.
pub fn same_groups(a: &[DegreeHomology], b: &[DegreeHomology]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| x.betti == y.betti && x.torsion == y.torsion)
}
