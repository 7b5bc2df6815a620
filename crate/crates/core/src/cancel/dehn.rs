use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{symmetrize, Presentation};
use crate::word::{cyclic_reduce, free_reduce, Letter, Word};

use super::index::{CyclicIndex, Pos};
use super::pieces::{piece_report, PieceReport};

/// One replacement: `length` letters of `before` starting at `start` are a
/// prefix of `element` (more than half of it) and get replaced by the inverse
/// of the rest of `element`. In a cyclic step `before` is first cyclically
/// reduced and read from `start` around the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnStep {
    pub before: Word,
    pub element: Word,
    pub start: usize,
    pub length: usize,
    pub cyclic: bool,
    pub after: Word,
}

impl DehnStep {
    pub fn replaced(&self) -> Word {
        Word::from_letters(self.element.letters()[..self.length].to_vec())
    }

    fn apply(&self) -> Option<Word> {
        let complement = Word::from_letters(self.element.letters()[self.length..].to_vec()).inverse();
        let text = if self.cyclic {
            let core = cyclic_reduce(&self.before).0;
            if self.start >= core.len().max(1) {
                return None;
            }
            core.rotate(self.start)
        } else {
            self.before.clone()
        };
        let start = if self.cyclic { 0 } else { self.start };
        let l = text.letters();
        if start + self.length > l.len() || l[start..start + self.length] != self.element.letters()[..self.length] {
            return None;
        }
        let mut out = l[..start].to_vec();
        out.extend_from_slice(complement.letters());
        out.extend_from_slice(&l[start + self.length..]);
        let w = free_reduce(&Word::from_letters(out));
        Some(if self.cyclic { cyclic_reduce(&w).0 } else { w })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DehnTrace {
    pub input: Word,
    pub steps: Vec<DehnStep>,
    pub result: Word,
}

/// Serializable view of a trace, with words written over the presentation's alphabet.
#[derive(Clone, Debug, Serialize)]
pub struct DehnTraceView {
    pub input: String,
    pub steps: Vec<DehnStepView>,
    pub result: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DehnStepView {
    pub before_length: usize,
    pub relator: String,
    pub replaced: String,
    pub cyclic: bool,
    pub after_length: usize,
}

impl DehnTrace {
    /// Replays every step against the symmetrized relators of `p`.
    pub fn verify(&self, p: &Presentation) -> bool {
        let sym = symmetrize(p);
        let mut current = free_reduce(&self.input);
        for s in &self.steps {
            if s.before != current
                || 2 * s.length <= s.element.len()
                || !sym.contains(&s.element)
                || s.after.len() >= s.before.len()
            {
                return false;
            }
            match s.apply() {
                Some(w) if w == s.after => current = w,
                _ => return false,
            }
        }
        current == self.result
    }

    pub fn view(&self, p: &Presentation) -> DehnTraceView {
        DehnTraceView {
            input: p.display_word(&self.input),
            steps: self
                .steps
                .iter()
                .map(|s| DehnStepView {
                    before_length: s.before.len(),
                    relator: p.display_word(&s.element),
                    replaced: p.display_word(&s.replaced()),
                    cyclic: s.cyclic,
                    after_length: s.after.len(),
                })
                .collect(),
            result: p.display_word(&self.result),
        }
    }
}

/// Dehn's algorithm for a presentation verified to be C'(1/6).
pub struct DehnSolver {
    index: CyclicIndex,
    min_match: usize,
    report: PieceReport,
}

impl DehnSolver {
    /// Refuses presentations that fail the C'(1/6) check.
    pub fn new(p: &Presentation) -> Result<Self> {
        let index = CyclicIndex::new(p);
        let report = piece_report(&index, p, 6);
        if !report.verdict {
            return Err(Error::Precondition(
                "presentation does not satisfy C'(1/6); Dehn's algorithm is not valid".into(),
            ));
        }
        let min_match = index.cycles.iter().map(|c| c.len() / 2 + 1).min().unwrap_or(usize::MAX);
        Ok(DehnSolver {
            index,
            min_match,
            report,
        })
    }

    pub fn piece_report(&self) -> &PieceReport {
        &self.report
    }

    /// Longest element prefix of more than half its length matching `text` at its start.
    fn best_match(&self, text: &[Letter]) -> Option<(Pos, usize)> {
        if text.len() < self.min_match {
            return None;
        }
        let mut best: Option<(Pos, usize)> = None;
        for (p, l) in self.index.matches(text, self.min_match) {
            if 2 * l > self.index.len_of(p) && best.is_none_or(|(_, bl)| l > bl) {
                best = Some((p, l));
            }
        }
        best
    }

    fn step_at(&self, before: &Word, start: usize, text: &[Letter], cyclic: bool) -> Option<DehnStep> {
        let (pos, length) = self.best_match(text)?;
        let mut step = DehnStep {
            before: before.clone(),
            element: Word::from_letters(self.index.element(pos)),
            start,
            length,
            cyclic,
            after: Word::identity(),
        };
        step.after = step.apply().expect("match was read from this word");
        Some(step)
    }

    fn next_step(&self, w: &Word) -> Option<DehnStep> {
        let l = w.letters();
        for i in 0..l.len() {
            if let Some(s) = self.step_at(w, i, &l[i..], false) {
                return Some(s);
            }
        }
        let core = cyclic_reduce(w).0;
        let n = core.len();
        let doubled: Vec<Letter> = core.letters().iter().chain(core.letters()).copied().collect();
        for i in 0..n {
            if let Some(s) = self.step_at(w, i, &doubled[i..i + n], true) {
                return Some(s);
            }
        }
        None
    }

    /// Whether `w` is trivial in the group, with a replayable trace.
    pub fn is_trivial(&self, w: &Word) -> (bool, DehnTrace) {
        let input = w.clone();
        let mut current = free_reduce(w);
        let mut steps = Vec::new();
        while let Some(s) = self.next_step(&current) {
            current = s.after.clone();
            steps.push(s);
        }
        let trivial = cyclic_reduce(&current).0.is_empty();
        (
            trivial,
            DehnTrace {
                input,
                steps,
                result: current,
            },
        )
    }
}

/// Decides triviality of `w` in a C'(1/6) presentation; refuses otherwise.
pub fn dehn_is_trivial(w: &Word, p: &Presentation) -> Result<(bool, DehnTrace)> {
    Ok(DehnSolver::new(p)?.is_trivial(w))
}
