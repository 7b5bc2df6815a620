//! Coset enumeration, Reidemeister–Schreier rewriting and low-index subgroups.

mod lowindex;
mod rs;
mod table;
mod tc;

pub use lowindex::{
    fingerprint_compare, low_index, subgroups_of_index, Fingerprint, FingerprintComparison, IndexCount,
};
pub use rs::{reidemeister_schreier, SchreierSystem};
pub use table::{CosetTable, CosetTableJson};
pub use tc::todd_coxeter;

#[cfg(test)]
mod tests;
