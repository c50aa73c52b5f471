//! Theorem-level checkers. Hypotheses are certified object by object and the
//! conclusion is confirmed independently by the homology engine, so a
//! verdict carries both halves even when the hypothesis fails.

use std::sync::Arc;

use serde::Serialize;

use crate::cat::{iso_part, CatFunctor, FinCat, Mor, Obj};
use crate::constructions::{
    cech_category, codisc_decomposition_check, comma_slice, slice_decomposition_check,
    AdjointSectionWitness, CoverData, DecompositionCheck, Direction, WitnessReport,
};
use crate::error::{Error, Result};
use crate::homology::{
    chain_homotopy_between, chain_map, chain_map_between, homology, is_homology_equivalence,
    normalized_chains, pi0_bijection, ChainMapData, EquivalenceVerdict, HomologyReport,
};
use crate::simplicial::{
    nat_trans_to_homotopy, nerve, nerve_map, nerve_map_between, Bounds, SimplicialMap,
};

/// Stated in every verdict that relies on homology.
pub const PROXY_NOTE: &str = "weak equivalence is proxied by a homology equivalence \
     (integer coefficients, cone acyclic through N-1) plus a bijection on components; \
     fundamental groups are not checked";

/// Over a discrete base every surjection has a global section and every
/// cover is numerable, so surjectivity of `ρ₀` is the whole condition.
pub const DISCRETE_SECTIONS_NOTE: &str = "the base is discrete: a surjective rho_0 \
     has a global section and every cover is numerable";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomMismatch {
    pub a: String,
    pub b: String,
    pub source_size: usize,
    pub target_size: usize,
    /// Whether the induced map is injective.
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullyFaithfulVerdict {
    pub holds: bool,
    pub mismatches: Vec<HomMismatch>,
    /// The comparison `X₁ → (X₀ × X₀) ×_{Y₀ × Y₀} Y₁` is a bijection.
    pub pullback_agrees: bool,
}

/// Hom-set bijections, checked pair by pair and again through the pullback
/// `(X₀ × X₀) ×_{Y₀ × Y₀} Y₁`.
pub fn is_fully_faithful(f: &CatFunctor) -> FullyFaithfulVerdict {
    let (x, y) = (f.dom(), f.cod());
    let mut mismatches = Vec::new();
    for a in x.objects() {
        for b in x.objects() {
            let mut image: Vec<Mor> = x.hom(a, b).map(|m| f.mor(m)).collect();
            let source_size = image.len();
            image.sort();
            image.dedup();
            let injective = image.len() == source_size;
            let target_size = y.hom(f.obj(a), f.obj(b)).count();
            if !injective || image.len() != target_size {
                mismatches.push(HomMismatch {
                    a: x.object_name(a).to_string(),
                    b: x.object_name(b).to_string(),
                    source_size,
                    target_size,
                    injective,
                });
            }
        }
    }
    // the pullback as a set of triples (a, b, g: fa → fb)
    let mut pullback: Vec<(Obj, Obj, Mor)> = Vec::new();
    for a in x.objects() {
        for b in x.objects() {
            pullback.extend(y.hom(f.obj(a), f.obj(b)).map(|g| (a, b, g)));
        }
    }
    pullback.sort();
    let mut image: Vec<(Obj, Obj, Mor)> = x
        .morphisms()
        .map(|m| (x.src(m), x.tgt(m), f.mor(m)))
        .collect();
    image.sort();
    let pullback_agrees = image == pullback;
    FullyFaithfulVerdict {
        holds: mismatches.is_empty(),
        mismatches,
        pullback_agrees,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialSurjectivityVerdict {
    pub holds: bool,
    /// Objects of `Y` outside the image of `ρ₀`.
    pub missed: Vec<String>,
    /// `|X₀ ×_{Y₀} Y₁^iso|`.
    pub rho0_domain: usize,
    pub justification: String,
}

/// Surjectivity of `ρ₀: X₀ ×_{Y₀} Y₁^iso → Y₀`, `(x, g: f x → y) ↦ y`.
pub fn is_essentially_surjective(f: &CatFunctor) -> Result<EssentialSurjectivityVerdict> {
    let (x, y) = (f.dom(), f.cod());
    let (iso, _) = iso_part(y)?;
    let mut hit = vec![false; y.object_count()];
    let mut rho0_domain = 0;
    for a in x.objects() {
        for &g in iso.outgoing(f.obj(a)) {
            hit[iso.tgt(g).idx()] = true;
            rho0_domain += 1;
        }
    }
    let missed: Vec<String> = y
        .objects()
        .filter(|o| !hit[o.idx()])
        .map(|o| y.object_name(o).to_string())
        .collect();
    Ok(EssentialSurjectivityVerdict {
        holds: missed.is_empty(),
        missed,
        rho0_domain,
        justification: DISCRETE_SECTIONS_NOTE.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Strong,
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateKind {
    InitialObject { witness: String },
    TerminalObject { witness: String },
    AcyclicAndConnected { report: HomologyReport },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractibilityCertificate {
    pub category: String,
    #[serde(flatten)]
    pub kind: CertificateKind,
    pub strength: Strength,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Contractibility {
    Certified(ContractibilityCertificate),
    Refused { category: String, report: HomologyReport },
}

impl Contractibility {
    pub fn certificate(&self) -> Option<&ContractibilityCertificate> {
        match self {
            Contractibility::Certified(c) => Some(c),
            Contractibility::Refused { .. } => None,
        }
    }
}

/// An object with exactly one morphism to every object.
pub fn initial_object(c: &FinCat) -> Option<Obj> {
    c.objects()
        .find(|&i| c.objects().all(|o| c.hom(i, o).count() == 1))
}

/// An object with exactly one morphism from every object.
pub fn terminal_object(c: &FinCat) -> Option<Obj> {
    c.objects()
        .find(|&t| c.objects().all(|o| c.hom(o, t).count() == 1))
}

/// `H₀ = Z` and `H_k = 0` for `1 ≤ k ≤ N−1`.
pub fn homology_proxy(c: &FinCat, bounds: Bounds) -> Result<(HomologyReport, bool)> {
    let report = homology(&normalized_chains(&nerve(c, bounds)?)?);
    let ok = report.degrees.iter().filter(|d| d.certified).all(|d| {
        if d.degree == 0 {
            d.betti == 1 && d.torsion.is_empty()
        } else {
            d.is_zero()
        }
    });
    Ok((report, ok))
}

/// Initial object, then terminal object, then the homology proxy.
pub fn certify_contractible(c: &FinCat, label: &str, bounds: Bounds) -> Result<Contractibility> {
    let category = label.to_string();
    if let Some(i) = initial_object(c) {
        return Ok(Contractibility::Certified(ContractibilityCertificate {
            category,
            kind: CertificateKind::InitialObject {
                witness: c.object_name(i).to_string(),
            },
            strength: Strength::Strong,
        }));
    }
    if let Some(t) = terminal_object(c) {
        return Ok(Contractibility::Certified(ContractibilityCertificate {
            category,
            kind: CertificateKind::TerminalObject {
                witness: c.object_name(t).to_string(),
            },
            strength: Strength::Strong,
        }));
    }
    let (report, ok) = homology_proxy(c, bounds)?;
    Ok(if ok {
        Contractibility::Certified(ContractibilityCertificate {
            category,
            kind: CertificateKind::AcyclicAndConnected { report },
            strength: Strength::Weak,
        })
    } else {
        Contractibility::Refused { category, report }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "A-prime")]
    APrime,
    #[serde(rename = "Morita")]
    Morita,
    #[serde(rename = "Segal-cover")]
    SegalCover,
}

/// One hypothesis item, e.g. the fiber over one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisItem {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contractibility: Option<Contractibility>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    /// `H_k` of the nerve map is an isomorphism for `k ≤ through_degree`.
    pub through_degree: usize,
    pub cone: EquivalenceVerdict,
    pub pi0_bijection: bool,
    /// Further table-level consequences, e.g. decomposition isomorphisms.
    pub extra: Vec<(String, bool)>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub truncation: usize,
    pub hypotheses: Vec<HypothesisItem>,
    pub hypothesis_holds: bool,
    pub conclusion: Conclusion,
    pub notes: Vec<String>,
}

impl TheoremVerdict {
    /// 0: hypothesis and conclusion hold; 4: hypothesis fails; 5: hypothesis
    /// holds but the conclusion does not.
    pub fn exit_code(&self) -> i32 {
        match (self.hypothesis_holds, self.conclusion.holds) {
            (true, true) => 0,
            (false, _) => 4,
            (true, false) => 5,
        }
    }

    /// The conclusion agrees with the hypothesis.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_holds || self.conclusion.holds
    }
}

fn require_truncation(bounds: Bounds) -> Result<()> {
    if bounds.truncation < 2 {
        return Err(Error::TruncationTooSmall {
            truncation: bounds.truncation,
            reason: "verdicts need N >= 2".into(),
        });
    }
    Ok(())
}

/// Cone of `N(f)` acyclic through `N−1`, so `H_k` is an isomorphism for
/// `k ≤ N−2`, plus the π₀ bijection.
fn conclusion(f: &CatFunctor, bounds: Bounds, extra: Vec<(String, bool)>) -> Result<Conclusion> {
    let map = nerve_map(f, bounds)?;
    let cone = is_homology_equivalence(&chain_map(&map)?, bounds.truncation - 1)?;
    let pi0 = pi0_bijection(&map);
    let holds = cone.holds && pi0 && extra.iter().all(|e| e.1);
    Ok(Conclusion {
        through_degree: bounds.truncation - 2,
        cone,
        pi0_bijection: pi0,
        extra,
        holds,
    })
}

/// Certifies every fiber `y↓f` contractible and compares with the homology
/// of `N(f)`. Weak certificates downgrade the reading to Theorem A′.
pub fn theorem_a_check(f: &CatFunctor, bounds: Bounds) -> Result<TheoremVerdict> {
    require_truncation(bounds)?;
    let slice = comma_slice(f)?;
    let y = f.cod();
    let mut hypotheses = Vec::with_capacity(y.object_count());
    let mut weak = false;
    for o in y.objects() {
        let (fiber, _) = slice.fiber(o)?;
        let label = format!("{}↓f", y.object_name(o));
        let c = certify_contractible(&fiber, &label, bounds)?;
        weak |= matches!(c.certificate(), Some(cert) if cert.strength == Strength::Weak);
        hypotheses.push(HypothesisItem {
            name: label,
            holds: c.certificate().is_some(),
            contractibility: Some(c),
            detail: None,
        });
    }
    let hypothesis_holds = hypotheses.iter().all(|h| h.holds);
    let theorem = if hypothesis_holds && weak {
        TheoremId::APrime
    } else {
        TheoremId::A
    };
    let mut notes = vec![PROXY_NOTE.to_string()];
    if theorem == TheoremId::APrime {
        notes.push("some fiber is certified only by homology; read under A-prime".into());
    }
    Ok(TheoremVerdict {
        theorem,
        truncation: bounds.truncation,
        hypotheses,
        hypothesis_holds,
        conclusion: conclusion(f, bounds, Vec::new())?,
        notes,
    })
}

/// Fully faithful and essentially surjective; the conclusion also includes
/// the decomposition isomorphisms when `f` is fully faithful.
pub fn morita_check(f: &CatFunctor, bounds: Bounds) -> Result<TheoremVerdict> {
    require_truncation(bounds)?;
    let ff = is_fully_faithful(f);
    let eso = is_essentially_surjective(f)?;
    let hypotheses = vec![
        HypothesisItem {
            name: "fully faithful".into(),
            holds: ff.holds && ff.pullback_agrees,
            contractibility: None,
            detail: Some(serde_json::to_value(&ff).expect("serializable")),
        },
        HypothesisItem {
            name: "essentially surjective".into(),
            holds: eso.holds,
            contractibility: None,
            detail: Some(serde_json::to_value(&eso).expect("serializable")),
        },
    ];
    let codisc = codisc_decomposition_check(f)?;
    let mut extra = Vec::new();
    let mut notes = vec![PROXY_NOTE.to_string()];
    if ff.holds {
        let slice: DecompositionCheck = slice_decomposition_check(f)?;
        extra.push(("codisc decomposition".to_string(), codisc.pass()));
        extra.push(("slice decomposition".to_string(), slice.pass()));
    } else {
        notes.push(format!(
            "not fully faithful; codisc decomposition {}",
            if codisc.pass() { "passes" } else { "fails" }
        ));
    }
    let hypothesis_holds = hypotheses.iter().all(|h| h.holds);
    Ok(TheoremVerdict {
        theorem: TheoremId::Morita,
        truncation: bounds.truncation,
        hypotheses,
        hypothesis_holds,
        conclusion: conclusion(f, bounds, extra)?,
        notes,
    })
}

/// Every fiber of `π: U^[2] → disc(M)` is a nonempty codiscrete category,
/// hence certified by an initial object.
pub fn segal_cover_check(cover: &CoverData, bounds: Bounds) -> Result<TheoremVerdict> {
    require_truncation(bounds)?;
    let cech = cech_category(cover)?;
    let mut hypotheses = Vec::new();
    for m in cech.base.objects() {
        let (fiber, _) = cech.fiber(m)?;
        let label = format!("pi^-1({})", cech.base.object_name(m));
        let c = certify_contractible(&fiber, &label, bounds)?;
        hypotheses.push(HypothesisItem {
            name: label,
            holds: c.certificate().is_some(),
            contractibility: Some(c),
            detail: None,
        });
    }
    let hypothesis_holds = hypotheses.iter().all(|h| h.holds);
    Ok(TheoremVerdict {
        theorem: TheoremId::SegalCover,
        truncation: bounds.truncation,
        hypotheses,
        hypothesis_holds,
        conclusion: conclusion(&cech.pi, bounds, Vec::new())?,
        notes: vec![PROXY_NOTE.to_string(), DISCRETE_SECTIONS_NOTE.to_string()],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShrinkableVerdict {
    pub witness: WitnessReport,
    /// `N(p) ∘ N(s)` is the identity map.
    pub section_identity: bool,
    /// First degree where `∂h + h∂ = (sp)_* − id` (up to the orientation of
    /// the transformation) fails; `None` when it holds everywhere checked.
    pub chain_failure: Option<usize>,
    /// The transformation was natural and the homotopy could be built.
    pub homotopy_built: bool,
    /// `h` maps chains over each base object to chains over the same object
    /// (only checked over a discrete base).
    pub fibrewise: bool,
    pub base_discrete: bool,
    pub degrees_checked: usize,
    pub holds: bool,
}

/// Section identity, the chain homotopy of the transformation, and its
/// compatibility with the decomposition of chains by base object.
pub fn shrinkable_witness_check(w: &AdjointSectionWitness, bounds: Bounds) -> Result<ShrinkableVerdict> {
    let witness = w.validate();
    let e: &Arc<FinCat> = w.projection.dom();
    let nerve_e = Arc::new(nerve(e, bounds)?);
    let nerve_b = Arc::new(nerve(w.projection.cod(), bounds)?);
    let np = nerve_map_between(&w.projection, &nerve_e, &nerve_b)?;
    let ns = nerve_map_between(&w.section, &nerve_b, &nerve_e)?;
    let section_identity = matches!(
        np.after(&ns),
        Ok(m) if m == SimplicialMap::identity(nerve_b.clone())
    );

    let fail = |witness: WitnessReport, section_identity: bool| ShrinkableVerdict {
        witness,
        section_identity,
        chain_failure: None,
        homotopy_built: false,
        fibrewise: false,
        base_discrete: base_is_discrete(w.projection.cod()),
        degrees_checked: 0,
        holds: false,
    };
    let hom = match nat_trans_to_homotopy(&w.eta, bounds) {
        Ok(h) => h,
        Err(Error::FunctorMismatch(_)) => return Ok(fail(witness, section_identity)),
        Err(err) => return Err(err),
    };
    let chains = Arc::new(normalized_chains(&nerve_e)?);
    let h = chain_homotopy_between(&hom, &chains, &chains)?;
    // ∂h + h∂ = G_* − F_* for η: F ⇒ G
    let sp = chain_map_between(&ns.after(&np)?, &chains, &chains)?;
    let id = ChainMapData::identity(chains.clone());
    let chain_failure = match w.direction {
        Direction::Left => h.check(&id, &sp)?,
        Direction::Right => h.check(&sp, &id)?,
    };
    let over: Vec<Vec<u32>> = (0..=nerve_e.truncation())
        .map(|n| {
            chains
                .basis(n)
                .iter()
                .map(|&x| np.apply(0, nerve_e.vertex(n, x as u32, 0)))
                .collect()
        })
        .collect();
    let base_discrete = base_is_discrete(w.projection.cod());
    let fibrewise = !base_discrete || h.respects(&over, &over);
    let holds = witness.pass() && section_identity && chain_failure.is_none() && fibrewise;
    Ok(ShrinkableVerdict {
        witness,
        section_identity,
        chain_failure,
        homotopy_built: true,
        fibrewise,
        base_discrete,
        degrees_checked: h.degrees(),
        holds,
    })
}

fn base_is_discrete(b: &FinCat) -> bool {
    b.morphisms().all(|m| b.is_identity(m))
}
