//! Exact integer homology of truncated simplicial sets: normalized chains,
//! Smith normal form, chain maps and mapping cones, the total complex of a
//! bisimplicial set, and chain homotopies from simplicial ones.

mod chains;
mod matrix;
mod snf;

pub use chains::{
    chain_homotopy_between, chain_homotopy_from_simplicial, chain_map, chain_map_between,
    components, homology, is_homology_equivalence, mapping_cone, normalized_chains, pi0_bijection,
    same_groups, set_basis_shuffle, simplicial_homology_equivalence, total_complex, ChainComplex, ChainHomotopyData,
    ChainMapData, DegreeHomology, EquivalenceVerdict, HomologyReport, HomotopyCheck,
};
pub use matrix::IntMatrix;
pub use snf::{determinant, invariant_factors, rational_rank, smith_normal_form, SmithCheck, SmithForm};
