//! Truncated simplicial and bisimplicial sets: nerves, the bisimplicial
//! object `D(f)`, diagonals, products with `Δ¹`, and the comparison
//! `dD(f) ≅ N(S(f))`.

mod bisimplicial;
mod nerve;
mod set;

pub use bisimplicial::{
    bisimplicial_d, check_diag_equals_nerve_s, constant_in_q, diagonal, external_product,
    projection_beta, projection_beta_between, BiSimplicialMap, BiSimplicialSet, DiagonalIso,
};
pub use nerve::{
    nat_trans_homotopy_between, nat_trans_to_homotopy, nerve, nerve_map, nerve_map_between,
    transformation_functor, SimplicialHomotopy,
};
pub use set::{product, Bounds, SimplicialMap, SimplicialSet, DEFAULT_BUDGET, DEFAULT_TRUNCATION};

#[cfg(test)]
mod tests;
