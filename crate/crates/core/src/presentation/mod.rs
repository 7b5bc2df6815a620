//! Finite presentations `< A | R >`, their text and JSON forms, symmetrized
//! closures, combinators and a catalog of named groups.

mod catalog;
mod combinators;
mod symmetrized;

pub use catalog::{catalog, CatalogEntry, CATALOG_NAMES};
pub use combinators::{amalgam, direct_product, free_product, hnn_ascending};
pub use symmetrized::{least_rotation, symmetrize, Cycle, SymmetrizedSet};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grammar::{parse_presentation_parts, parse_word};
use crate::word::{cyclic_reduce, free_reduce, Alphabet, Word};

/// A finite presentation. Relators are freely reduced and nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

/// Quality flags raised by [`Presentation::diagnostics`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Pairs `(i, j)`, `i < j`, whose relators agree up to cyclic permutation and inversion.
    pub duplicate_relators: Vec<(usize, usize)>,
    /// Relators whose cyclic reduction is a proper power.
    pub proper_powers: Vec<usize>,
}

/// The JSON shape `{generators: [..], relators: [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl Presentation {
    /// Reduces every relator; relators that reduce to the identity are dropped.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let n = alphabet.len();
        let mut kept = Vec::with_capacity(relators.len());
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= n {
                    return Err(Error::Domain { index: g, size: n });
                }
            }
            let r = free_reduce(r);
            if r.is_empty() {
                log::warn!("relator {i} reduces to the identity and was dropped");
            } else {
                kept.push(r);
            }
        }
        Ok(Presentation {
            alphabet,
            relators: kept,
        })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S], relators: Vec<Word>) -> Result<Self> {
        Self::new(Alphabet::new(names)?, relators)
    }

    /// Parses the `< .. | .. >` grammar or the JSON form.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let json: PresentationJson = serde_json::from_str(text).map_err(|e| Error::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            return Self::from_json(&json);
        }
        let (alphabet, relators) = parse_presentation_parts(text)?;
        Self::new(alphabet, relators)
    }

    pub fn from_json(json: &PresentationJson) -> Result<Self> {
        let alphabet = Alphabet::new(&json.generators)?;
        let relators = json
            .relators
            .iter()
            .map(|r| crate::grammar::parse_relator(r, &alphabet))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, relators)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: self.alphabet.names().to_vec(),
            relators: self
                .relators
                .iter()
                .map(|r| r.display(&self.alphabet).to_string())
                .collect(),
        }
    }

    /// Canonical text form; `parse` maps it back to an equal presentation.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn max_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    /// Parses a word over this presentation's alphabet.
    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.alphabet)
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display(&self.alphabet).to_string()
    }

    pub fn with_relators(&self, relators: Vec<Word>) -> Result<Self> {
        Self::new(self.alphabet.clone(), relators)
    }

    /// Adds relators (e.g. to pass to a quotient).
    pub fn with_extra_relators(&self, extra: &[Word]) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.extend(extra.iter().cloned());
        Self::new(self.alphabet.clone(), rels)
    }

    /// Exponent-sum rows, one per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.generator_count();
        self.relators.iter().map(|r| r.abelianized(n)).collect()
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        let keys: Vec<Word> = self
            .relators
            .iter()
            .map(|r| {
                let core = cyclic_reduce(r).0;
                let a = least_rotation(&core);
                let b = least_rotation(&core.inverse());
                a.min(b)
            })
            .collect();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                if keys[i] == keys[j] {
                    d.duplicate_relators.push((i, j));
                }
            }
            if self.relators[i].is_proper_power() {
                d.proper_powers.push(i);
            }
        }
        d
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.alphabet.names().join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", r.display(&self.alphabet))?;
        }
        write!(f, " >")
    }
}
