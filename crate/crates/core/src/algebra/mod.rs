//! The algebra of observables in the basis of central characters, realised
//! through partial permutations.

pub mod partial_perm;
pub mod setpart;
pub mod sigma;

pub use partial_perm::PartialPermutation;
pub use setpart::{empirical_cumulant, mobius_identity_check, set_partitions, SetPartition};
pub use sigma::{
    basis_product, power_top_formula, sigma_power, sigma_product, SigmaElement,
    PRODUCT_GROUND_LIMIT,
};
