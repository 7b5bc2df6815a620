use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

pub(crate) const UNDEF: u32 = u32::MAX;

/// A complete coset table. Coset `0` is the subgroup itself (printed as 1);
/// column `l.code()` holds the action of letter `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    index: usize,
    generators: usize,
    rows: Vec<u32>,
    subgroup_gens: Vec<Word>,
    standardized: bool,
}

impl CosetTable {
    pub(crate) fn from_rows(generators: usize, rows: Vec<u32>, subgroup_gens: Vec<Word>) -> Self {
        let width = 2 * generators;
        let index = if width == 0 { 1 } else { rows.len() / width };
        let mut t = CosetTable {
            index,
            generators,
            rows,
            subgroup_gens,
            standardized: false,
        };
        t.standardized = t.is_standard();
        t
    }

    /// Index of the subgroup, i.e. the number of cosets.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_gens
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    #[inline]
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset * 2 * self.generators + l.code()] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The permutation of cosets induced by generator `g`, as an image array.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.index).map(|c| self.act(c, Letter::positive(g))).collect()
    }

    fn is_standard(&self) -> bool {
        let mut next = 1;
        for c in 0..self.index {
            for code in 0..2 * self.generators {
                let d = self.rows[c * 2 * self.generators + code] as usize;
                if d == next {
                    next += 1;
                } else if d > next {
                    return false;
                }
            }
        }
        true
    }

    /// Renumbers cosets in breadth-first order of first appearance, starting from `base`.
    pub fn rebased(&self, base: usize) -> CosetTable {
        let width = 2 * self.generators;
        let mut order = vec![UNDEF; self.index];
        let mut seq = vec![base];
        order[base] = 0;
        let mut i = 0;
        while i < seq.len() {
            let c = seq[i];
            for code in 0..width {
                let d = self.rows[c * width + code] as usize;
                if order[d] == UNDEF {
                    order[d] = seq.len() as u32;
                    seq.push(d);
                }
            }
            i += 1;
        }
        let mut rows = vec![0u32; self.index * width];
        for (new, &old) in seq.iter().enumerate() {
            for code in 0..width {
                rows[new * width + code] = order[self.rows[old * width + code] as usize];
            }
        }
        CosetTable {
            index: self.index,
            generators: self.generators,
            rows,
            subgroup_gens: Vec::new(),
            standardized: true,
        }
    }

    pub(crate) fn raw_rows(&self) -> &[u32] {
        &self.rows
    }

    /// Machine check: inverse columns are mutually inverse bijections, every
    /// relator closes at every coset and every subgroup generator fixes coset 0.
    pub fn verify(&self, p: &Presentation) -> bool {
        if p.generator_count() != self.generators {
            return false;
        }
        for c in 0..self.index {
            for g in 0..self.generators {
                let x = Letter::positive(g);
                let d = self.act(c, x);
                if d >= self.index || self.act(d, x.inverse()) != c {
                    return false;
                }
            }
        }
        let closes = |w: &Word, c: usize| self.trace(c, w) == c;
        p.relators().iter().all(|r| (0..self.index).all(|c| closes(r, c)))
            && self.subgroup_gens.iter().all(|h| closes(h, 0))
    }

    /// JSON export: generator name to 1-based image array.
    pub fn to_json(&self, p: &Presentation) -> CosetTableJson {
        let mut perms = BTreeMap::new();
        for g in 0..self.generators {
            let img: Vec<usize> = self.permutation(g).into_iter().map(|d| d + 1).collect();
            perms.insert(p.alphabet().name(g).to_string(), img);
        }
        CosetTableJson {
            index: self.index,
            generators: p.alphabet().names().to_vec(),
            permutations: perms,
            subgroup: self.subgroup_gens.iter().map(|w| p.display_word(w)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTableJson {
    pub index: usize,
    pub generators: Vec<String>,
    pub permutations: BTreeMap<String, Vec<usize>>,
    pub subgroup: Vec<String>,
}

pub(crate) fn require_complete(t: &CosetTable) -> Result<()> {
    if t.raw_rows().iter().any(|&x| x == UNDEF) {
        return Err(Error::Precondition("coset table is incomplete".into()));
    }
    if !t.is_standardized() {
        return Err(Error::Precondition("coset table is not standardized".into()));
    }
    Ok(())
}
