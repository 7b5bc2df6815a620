//! Finite permutation groups and homomorphisms into them.

mod fibre;
mod group;
mod hom;
mod perm;
mod transitive;

pub use fibre::{check_generation, fibre_product_finite, FibreSummary, FiniteFibreProduct, PairWord};
pub use group::{eval_word, orbit, IndexedGroup, PermGroup};
pub use hom::{epi_count_product_check, hom_search, verify_hom, EpiCountReport, FoundHom, GroupHom, HomCheck, HomSearch};
pub use perm::Perm;
pub use transitive::{named_group, transitive_groups};

#[cfg(test)]
mod tests;
