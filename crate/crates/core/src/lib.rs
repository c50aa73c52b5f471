//! Finite categories, their nerves and integer homology, with checkers for
//! Quillen-style Theorem A and its Morita corollary on finite examples.

pub mod cat;
pub mod constructions;
pub mod homology;
pub mod simplicial;
pub mod doc;
pub mod error;
pub mod gen;
pub mod verifiers;

pub use error::{Error, Result};
