//! Computational tools for finitely presented groups.
//!
//! Words and presentations ([`word`], [`presentation`]), exact integer
//! linear algebra ([`zlattice`]), metric small cancellation ([`cancel`]),
//! coset enumeration ([`coset`]), finite permutation quotients
//! ([`permrep`]), second homology ([`homology`]) and the group
//! constructions built on them ([`construct`]).

pub mod budget;
pub mod cancel;
pub mod construct;
pub mod coset;
pub mod error;
pub mod grammar;
pub mod homology;
pub mod permrep;
pub mod presentation;
pub mod word;
pub mod zlattice;

pub use error::{Error, Result};
pub use presentation::Presentation;
pub use word::{Alphabet, Letter, Word};
