use std::collections::BTreeMap;

use crate::word::{cyclic_reduce, Letter, Word};

use super::Presentation;

/// One cyclic word of a symmetrized set: all its rotations are elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    /// Lexicographically least rotation.
    pub word: Word,
    /// Index of the source relator.
    pub relator: usize,
    /// Whether this cycle comes from the relator's inverse.
    pub inverted: bool,
    /// Length of the primitive root; the number of distinct rotations.
    pub period: usize,
}

/// The closure of a relator set under cyclic permutation and inversion.
///
/// Stored as its distinct cyclic classes; rotations are produced on demand
/// since relators of Rips presentations run to many thousands of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetrizedSet {
    cycles: Vec<Cycle>,
}

impl SymmetrizedSet {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Number of distinct elements.
    pub fn len(&self) -> usize {
        self.cycles.iter().map(|c| c.period).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// All elements with their source relator, in a deterministic order.
    pub fn elements(&self) -> Vec<(Word, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for c in &self.cycles {
            for k in 0..c.period {
                out.push((c.word.rotate(k), c.relator));
            }
        }
        out.sort();
        out
    }

    pub fn contains(&self, w: &Word) -> bool {
        let key = least_rotation(w);
        self.cycles.iter().any(|c| c.word == key)
    }

    /// Relators of a presentation equal to this closure, one per cycle pair.
    pub fn relator_words(&self) -> Vec<Word> {
        self.cycles.iter().map(|c| c.word.clone()).collect()
    }
}

/// Least rotation of a word (Booth's algorithm).
pub fn least_rotation(w: &Word) -> Word {
    let s = w.letters();
    let n = s.len();
    if n == 0 {
        return Word::identity();
    }
    let at = |i: usize| -> Letter { s[i % n] };
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    w.rotate(k)
}

/// Symmetrized closure of the presentation's relators, deduplicated.
pub fn symmetrize(p: &Presentation) -> SymmetrizedSet {
    let mut seen: BTreeMap<Word, ()> = BTreeMap::new();
    let mut cycles = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let core = cyclic_reduce(r).0;
        if core.is_empty() {
            continue;
        }
        for (inverted, w) in [(false, core.clone()), (true, core.inverse())] {
            let key = least_rotation(&w);
            if seen.insert(key.clone(), ()).is_none() {
                let period = key.primitive_root().0.len();
                cycles.push(Cycle {
                    word: key,
                    relator: i,
                    inverted,
                    period,
                });
            }
        }
    }
    SymmetrizedSet { cycles }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute_force(p: &Presentation) -> BTreeSet<Word> {
        let mut s = BTreeSet::new();
        for r in p.relators() {
            let core = cyclic_reduce(r).0;
            for w in [core.clone(), core.inverse()] {
                for k in 0..w.len() {
                    s.insert(w.rotate(k));
                }
            }
        }
        s
    }

    #[test]
    fn examples_match_enumeration() {
        let p = Presentation::parse("< a, b | a b a^-1 b^-1 >").unwrap();
        let s = symmetrize(&p);
        assert_eq!(s.len(), 8);
        assert_eq!(brute_force(&p).len(), 8);
        let p = Presentation::parse("< a | a^3 >").unwrap();
        let s = symmetrize(&p);
        assert_eq!(s.len(), 2);
        let p = Presentation::parse("< a | >").unwrap();
        assert!(symmetrize(&p).is_empty());
    }

    #[test]
    fn elements_agree_with_brute_force() {
        let p = Presentation::parse("< a, b | a^2 b a^-1 b, (a b)^3, b a b^-1 a^-1 b^2 >").unwrap();
        let s = symmetrize(&p);
        let listed: BTreeSet<Word> = s.elements().into_iter().map(|(w, _)| w).collect();
        assert_eq!(listed, brute_force(&p));
        assert_eq!(listed.len(), s.len());
    }

    #[test]
    fn symmetrize_is_idempotent() {
        let p = Presentation::parse("< a, b | a^2 b a^-1 b, [a, b], b^5 >").unwrap();
        let s = symmetrize(&p);
        let q = p.with_relators(s.relator_words()).unwrap();
        let t = symmetrize(&q);
        let a: BTreeSet<Word> = s.elements().into_iter().map(|(w, _)| w).collect();
        let b: BTreeSet<Word> = t.elements().into_iter().map(|(w, _)| w).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn least_rotation_is_minimal() {
        let a = crate::word::Alphabet::new(&["a", "b", "c"]).unwrap();
        for text in ["b a c a b", "c c b a", "a", "b a b a", "c a^-1 b c a"] {
            let w = crate::grammar::parse_word(text, &a).unwrap();
            let brute = (0..w.len()).map(|k| w.rotate(k)).min().unwrap();
            assert_eq!(least_rotation(&w), brute, "{text}");
        }
    }
}
