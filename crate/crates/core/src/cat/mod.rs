//! Finite categories, functors and natural transformations.

mod category;
mod elementary;
mod functor;
mod validate;

pub mod fixtures;

pub(crate) use category::Assembler;
pub use category::{tuple_name, FinCat, Mor, MorphismData, Obj};
pub use elementary::{
    arrow_category, codisc, codisc_map, disc, disjoint_union, full_subcategory, inverse,
    iso_part, object_inclusion, opposite, product, strict_pullback, strict_pullback_keyed,
    terminal, to_codisc, to_given_codisc, ArrowCategory, Pullback,
};
pub use functor::{compose_functors, identity_functor, CatFunctor, NatTrans};
pub use validate::{
    validate_category, validate_functor, validate_nat_trans, ValidationReport, Violation,
};
