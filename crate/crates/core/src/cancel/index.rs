use std::cmp::Ordering;

use crate::presentation::{symmetrize, Presentation};
use crate::word::Letter;

/// A starting position in the symmetrized set: cycle number and offset into
/// the cycle's least rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub cycle: u32,
    pub offset: u32,
}

/// Every starting position of every symmetrized cycle, sorted by the element
/// read from that position (a full turn of the cycle).
pub(crate) struct CyclicIndex {
    pub cycles: Vec<Vec<Letter>>,
    pub relator: Vec<usize>,
    pub inverted: Vec<bool>,
    pub period: Vec<usize>,
    pub sorted: Vec<Pos>,
}

impl CyclicIndex {
    pub fn new(p: &Presentation) -> Self {
        let sym = symmetrize(p);
        let mut cycles = Vec::new();
        let mut relator = Vec::new();
        let mut inverted = Vec::new();
        let mut period = Vec::new();
        for c in sym.cycles() {
            cycles.push(c.word.letters().to_vec());
            relator.push(c.relator);
            inverted.push(c.inverted);
            period.push(c.period);
        }
        let mut sorted = Vec::new();
        for (ci, c) in cycles.iter().enumerate() {
            for o in 0..c.len() {
                sorted.push(Pos {
                    cycle: ci as u32,
                    offset: o as u32,
                });
            }
        }
        let mut idx = CyclicIndex {
            cycles,
            relator,
            inverted,
            period,
            sorted: Vec::new(),
        };
        sorted.sort_by(|a, b| idx.cmp_positions(*a, *b));
        idx.sorted = sorted;
        idx
    }

    pub fn len_of(&self, p: Pos) -> usize {
        self.cycles[p.cycle as usize].len()
    }

    #[inline]
    pub fn letter(&self, p: Pos, k: usize) -> Letter {
        let c = &self.cycles[p.cycle as usize];
        c[(p.offset as usize + k) % c.len()]
    }

    /// The element starting at `p`, as letters.
    pub fn element(&self, p: Pos) -> Vec<Letter> {
        (0..self.len_of(p)).map(|k| self.letter(p, k)).collect()
    }

    pub fn lcp_positions(&self, a: Pos, b: Pos) -> usize {
        let n = self.len_of(a).min(self.len_of(b));
        (0..n)
            .find(|&k| self.letter(a, k) != self.letter(b, k))
            .unwrap_or(n)
    }

    fn cmp_positions(&self, a: Pos, b: Pos) -> Ordering {
        let (na, nb) = (self.len_of(a), self.len_of(b));
        for k in 0..na.min(nb) {
            match self.letter(a, k).cmp(&self.letter(b, k)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        na.cmp(&nb).then((a.cycle, a.offset).cmp(&(b.cycle, b.offset)))
    }

    /// Common prefix length of the element at `p` and `text`.
    pub fn lcp_text(&self, p: Pos, text: &[Letter]) -> usize {
        let n = self.len_of(p).min(text.len());
        (0..n)
            .find(|&k| self.letter(p, k) != text[k])
            .unwrap_or(n)
    }

    fn cmp_text(&self, p: Pos, text: &[Letter]) -> Ordering {
        let n = self.len_of(p);
        for k in 0..n.min(text.len()) {
            match self.letter(p, k).cmp(&text[k]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        n.cmp(&text.len())
    }

    /// Sorted positions whose elements share a prefix of length at least
    /// `min_lcp` with `text`, each with its common prefix length.
    pub fn matches(&self, text: &[Letter], min_lcp: usize) -> Vec<(Pos, usize)> {
        let k = self
            .sorted
            .partition_point(|&p| self.cmp_text(p, text) == Ordering::Less);
        let mut out = Vec::new();
        for &p in self.sorted[..k].iter().rev() {
            let l = self.lcp_text(p, text);
            if l < min_lcp {
                break;
            }
            out.push((p, l));
        }
        for &p in &self.sorted[k..] {
            let l = self.lcp_text(p, text);
            if l < min_lcp {
                break;
            }
            out.push((p, l));
        }
        out
    }
}
