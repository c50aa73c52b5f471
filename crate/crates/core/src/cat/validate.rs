use std::fmt;

use serde::Serialize;

use super::category::FinCat;
use super::functor::{CatFunctor, NatTrans};

/// A failed axiom, named by the identifiers involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IdentityEndpoints { object: String, identity: String },
    MissingComposite { g: String, f: String },
    StrayComposite { g: String, f: String },
    CompositeEndpoints { g: String, f: String, composite: String },
    LeftUnit { morphism: String },
    RightUnit { morphism: String },
    Associativity { h: String, g: String, f: String },
    SourceNotPreserved { morphism: String },
    TargetNotPreserved { morphism: String },
    IdentityNotPreserved { object: String },
    CompositionNotPreserved { g: String, f: String },
    ComponentType { object: String },
    Naturality { morphism: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            IdentityEndpoints { object, identity } => {
                write!(out, "identity {identity} of {object} is not an endomorphism of {object}")
            }
            MissingComposite { g, f } => write!(out, "composite of ({g}, {f}) is missing"),
            StrayComposite { g, f } => {
                write!(out, "composite given for non-composable pair ({g}, {f})")
            }
            CompositeEndpoints { g, f, composite } => {
                write!(out, "{g} ∘ {f} = {composite} has the wrong endpoints")
            }
            LeftUnit { morphism } => write!(out, "left unit law fails at {morphism}"),
            RightUnit { morphism } => write!(out, "right unit law fails at {morphism}"),
            Associativity { h, g, f } => write!(out, "associativity fails at ({h}, {g}, {f})"),
            SourceNotPreserved { morphism } => write!(out, "source of {morphism} not preserved"),
            TargetNotPreserved { morphism } => write!(out, "target of {morphism} not preserved"),
            IdentityNotPreserved { object } => write!(out, "identity of {object} not preserved"),
            CompositionNotPreserved { g, f } => {
                write!(out, "composite of ({g}, {f}) not preserved")
            }
            ComponentType { object } => write!(out, "component at {object} has the wrong type"),
            Naturality { morphism } => write!(out, "naturality square fails at {morphism}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks composability, unit laws and associativity exhaustively.
pub fn validate_category(c: &FinCat) -> ValidationReport {
    let mut v = Vec::new();
    let name = |m| c.morphism_name(m).to_string();

    for o in c.objects() {
        let e = c.ident(o);
        if c.src(e) != o || c.tgt(e) != o {
            v.push(Violation::IdentityEndpoints {
                object: c.object_name(o).to_string(),
                identity: name(e),
            });
        }
    }
    for &(g, f, _) in c.stray_compositions() {
        v.push(Violation::StrayComposite { g: name(g), f: name(f) });
    }
    let mut complete = true;
    for f in c.morphisms() {
        for &g in c.outgoing(c.tgt(f)) {
            match c.comp(g, f) {
                None => {
                    complete = false;
                    v.push(Violation::MissingComposite { g: name(g), f: name(f) });
                }
                Some(gf) => {
                    if c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g) {
                        v.push(Violation::CompositeEndpoints {
                            g: name(g),
                            f: name(f),
                            composite: name(gf),
                        });
                    }
                }
            }
        }
    }
    for f in c.morphisms() {
        if c.comp(c.ident(c.tgt(f)), f) != Some(f) {
            v.push(Violation::LeftUnit { morphism: name(f) });
        }
        if c.comp(f, c.ident(c.src(f))) != Some(f) {
            v.push(Violation::RightUnit { morphism: name(f) });
        }
    }
    if complete {
        for f in c.morphisms() {
            for &g in c.outgoing(c.tgt(f)) {
                let gf = c.compose(g, f);
                for &h in c.outgoing(c.tgt(g)) {
                    let left = c.comp(h, gf);
                    let right = c.comp(c.compose(h, g), f);
                    if left != right || left.is_none() {
                        v.push(Violation::Associativity {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                    }
                }
            }
        }
    }
    ValidationReport { violations: v }
}

/// Checks that a functor preserves endpoints, identities and composition.
pub fn validate_functor(func: &CatFunctor) -> ValidationReport {
    let (x, y) = (func.dom(), func.cod());
    let mut v = Vec::new();
    for m in x.morphisms() {
        let fm = func.mor(m);
        if y.src(fm) != func.obj(x.src(m)) {
            v.push(Violation::SourceNotPreserved {
                morphism: x.morphism_name(m).to_string(),
            });
        }
        if y.tgt(fm) != func.obj(x.tgt(m)) {
            v.push(Violation::TargetNotPreserved {
                morphism: x.morphism_name(m).to_string(),
            });
        }
    }
    for o in x.objects() {
        if func.mor(x.ident(o)) != y.ident(func.obj(o)) {
            v.push(Violation::IdentityNotPreserved {
                object: x.object_name(o).to_string(),
            });
        }
    }
    for f in x.morphisms() {
        for &g in x.outgoing(x.tgt(f)) {
            let Some(gf) = x.comp(g, f) else { continue };
            if y.comp(func.mor(g), func.mor(f)) != Some(func.mor(gf)) {
                v.push(Violation::CompositionNotPreserved {
                    g: x.morphism_name(g).to_string(),
                    f: x.morphism_name(f).to_string(),
                });
            }
        }
    }
    ValidationReport { violations: v }
}

/// Checks component types `α_c: F c → G c` and every naturality square.
pub fn validate_nat_trans(alpha: &NatTrans) -> ValidationReport {
    let (f, g) = (alpha.source(), alpha.target());
    let (c, d) = (f.dom(), f.cod());
    let mut v = Vec::new();
    let mut typed = true;
    for o in c.objects() {
        let a = alpha.component(o);
        if d.src(a) != f.obj(o) || d.tgt(a) != g.obj(o) {
            typed = false;
            v.push(Violation::ComponentType {
                object: c.object_name(o).to_string(),
            });
        }
    }
    if typed {
        for h in c.morphisms() {
            let lhs = d.comp(g.mor(h), alpha.component(c.src(h)));
            let rhs = d.comp(alpha.component(c.tgt(h)), f.mor(h));
            if lhs.is_none() || lhs != rhs {
                v.push(Violation::Naturality {
                    morphism: c.morphism_name(h).to_string(),
                });
            }
        }
    }
    ValidationReport { violations: v }
}
